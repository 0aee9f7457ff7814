#include "defcol/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "defcol/text.hpp"

namespace defcol {

int Adjacency::index(VertexId id) const {
  const auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) throw GraphError("no vertex " + std::to_string(id));
  return static_cast<int>(it - ids.begin());
}

std::size_t Adjacency::edge_count() const {
  std::size_t twice = 0;
  for (const auto& n : nbrs) twice += n.size();
  return twice / 2;
}

void Graph::add_vertex(VertexId v) {
  if (v < 0) throw GraphError("vertex ids must be nonnegative");
  adj_.try_emplace(v);
}

void Graph::add_edge(VertexId u, VertexId v) {
  if (!add_edge_if_absent(u, v))
    throw GraphError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
}

bool Graph::add_edge_if_absent(VertexId u, VertexId v) {
  if (u == v) throw GraphError("self-loop at " + std::to_string(u));
  auto iu = adj_.find(u);
  auto iv = adj_.find(v);
  if (iu == adj_.end() || iv == adj_.end())
    throw GraphError("edge " + std::to_string(u) + " " + std::to_string(v) + " references a missing vertex");
  if (!iu->second.insert(v).second) return false;
  iv->second.insert(u);
  ++edge_count_;
  return true;
}

void Graph::remove_vertex(VertexId v) {
  auto it = adj_.find(v);
  if (it == adj_.end()) throw GraphError("no vertex " + std::to_string(v));
  for (VertexId w : it->second) adj_[w].erase(v);
  edge_count_ -= it->second.size();
  adj_.erase(it);
  std::erase_if(terminals_, [v](const auto& kv) { return kv.second == v; });
}

void Graph::remove_edge(VertexId u, VertexId v) {
  if (!has_edge(u, v)) throw GraphError("no edge " + std::to_string(u) + " " + std::to_string(v));
  adj_[u].erase(v);
  adj_[v].erase(u);
  --edge_count_;
}

void Graph::set_terminal(const std::string& name, VertexId v) {
  if (name.empty()) throw GraphError("empty terminal name");
  if (!has_vertex(v)) throw GraphError("terminal " + name + " references missing vertex " + std::to_string(v));
  terminals_[name] = v;
}

void Graph::identify(VertexId keep, VertexId drop) {
  if (keep == drop) return;
  if (!has_vertex(keep) || !has_vertex(drop)) throw GraphError("identify: missing vertex");
  if (has_edge(keep, drop))
    throw GraphError("identify: " + std::to_string(keep) + " and " + std::to_string(drop) + " are adjacent");
  const std::set<VertexId> moved = adj_[drop];
  for (auto& [name, id] : terminals_)
    if (id == drop) id = keep;
  for (VertexId w : moved) {
    adj_[w].erase(drop);
    --edge_count_;
  }
  adj_.erase(drop);
  for (VertexId w : moved) add_edge_if_absent(keep, w);
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  const auto it = adj_.find(u);
  return it != adj_.end() && it->second.count(v) != 0;
}

std::size_t Graph::degree(VertexId v) const { return neighbors(v).size(); }

std::vector<VertexId> Graph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(adj_.size());
  for (const auto& [v, _] : adj_) out.push_back(v);
  return out;
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edge_count_);
  for (const auto& [u, ns] : adj_)
    for (VertexId w : ns)
      if (u < w) out.emplace_back(u, w);
  return out;
}

const std::set<VertexId>& Graph::neighbors(VertexId v) const {
  const auto it = adj_.find(v);
  if (it == adj_.end()) throw GraphError("no vertex " + std::to_string(v));
  return it->second;
}

std::optional<VertexId> Graph::terminal(std::string_view name) const {
  const auto it = terminals_.find(std::string(name));
  if (it == terminals_.end()) return std::nullopt;
  return it->second;
}

VertexId Graph::resolve(std::string_view token) const {
  if (auto t = terminal(token)) return *t;
  VertexId id = -1;
  const auto* end = token.data() + token.size();
  auto [p, ec] = std::from_chars(token.data(), end, id);
  if (ec == std::errc() && p == end && has_vertex(id)) return id;
  throw GraphError("unknown terminal or vertex '" + std::string(token) + "'");
}

std::vector<std::string> Graph::names_of(VertexId v) const {
  std::vector<std::string> out;
  for (const auto& [name, id] : terminals_)
    if (id == v) out.push_back(name);
  return out;
}

std::size_t Graph::min_degree() const {
  std::size_t best = adj_.empty() ? 0 : SIZE_MAX;
  for (const auto& [_, ns] : adj_) best = std::min(best, ns.size());
  return best;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& [_, ns] : adj_) best = std::max(best, ns.size());
  return best;
}

Adjacency Graph::adjacency() const {
  Adjacency a;
  a.ids = vertices();
  a.nbrs.resize(a.ids.size());
  std::size_t i = 0;
  for (const auto& [_, ns] : adj_) {
    auto& row = a.nbrs[i++];
    row.reserve(ns.size());
    for (VertexId w : ns) row.push_back(a.index(w));
  }
  return a;
}

Graph Graph::induced(const std::set<VertexId>& keep) const {
  Graph h(name_);
  for (VertexId v : keep)
    if (has_vertex(v)) h.add_vertex(v);
  for (const auto& [u, w] : edges())
    if (h.has_vertex(u) && h.has_vertex(w)) h.add_edge(u, w);
  for (const auto& [name, v] : terminals_)
    if (h.has_vertex(v)) h.set_terminal(name, v);
  return h;
}

namespace {

VertexId parse_id(std::string_view tok, std::size_t line) {
  VertexId id = -1;
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, id);
  if (ec != std::errc() || p != end || id < 0)
    throw ParseError(line, "expected a nonnegative integer id, got '" + std::string(tok) + "'");
  return id;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  Graph g;
  std::size_t lineno = 0;
  for (std::string_view line : split_lines(text)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = split_ws(line);
    const std::string_view kind = tok[0];
    try {
      if (kind == "graph") {
        if (tok.size() != 2) throw ParseError(lineno, "expected 'graph <name>'");
        g.set_name(std::string(tok[1]));
      } else if (kind == "v") {
        if (tok.size() != 2) throw ParseError(lineno, "expected 'v <id>'");
        const VertexId v = parse_id(tok[1], lineno);
        if (g.has_vertex(v)) throw ParseError(lineno, "duplicate vertex " + std::to_string(v));
        g.add_vertex(v);
      } else if (kind == "e") {
        if (tok.size() != 3) throw ParseError(lineno, "expected 'e <id> <id>'");
        const VertexId u = parse_id(tok[1], lineno);
        const VertexId v = parse_id(tok[2], lineno);
        g.add_edge(u, v);
      } else if (kind == "t") {
        if (tok.size() != 3) throw ParseError(lineno, "expected 't <name> <id>'");
        const std::string name(tok[1]);
        if (g.terminal(name)) throw ParseError(lineno, "duplicate terminal " + name);
        g.set_terminal(name, parse_id(tok[2], lineno));
      } else {
        throw ParseError(lineno, "unknown directive '" + std::string(kind) + "'");
      }
    } catch (const GraphError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return g;
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream os;
  if (!g.name().empty()) os << "graph " << g.name() << '\n';
  for (VertexId v : g.vertices()) os << "v " << v << '\n';
  for (const auto& [u, w] : g.edges()) os << "e " << u << ' ' << w << '\n';
  for (const auto& [name, v] : g.terminals()) os << "t " << name << ' ' << v << '\n';
  return os.str();
}

Graph read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

void write_graph_file(const std::string& path, const Graph& g) { write_text_file(path, serialize_graph(g)); }

namespace named {

Graph path(int n) {
  Graph g("P" + std::to_string(n));
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(int n) {
  Graph g = path(n);
  g.set_name("C" + std::to_string(n));
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

Graph complete(int n) {
  Graph g("K" + std::to_string(n));
  for (int i = 0; i < n; ++i) g.add_vertex(i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g("K" + std::to_string(a) + "_" + std::to_string(b));
  for (int i = 0; i < a + b; ++i) g.add_vertex(i);
  for (int i = 0; i < a; ++i)
    for (int j = a; j < a + b; ++j) g.add_edge(i, j);
  return g;
}

Graph star(int leaves) {
  Graph g = complete_bipartite(1, leaves);
  g.set_name("star" + std::to_string(leaves));
  return g;
}

Graph petersen() {
  Graph g("petersen");
  for (int i = 0; i < 10; ++i) g.add_vertex(i);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, (i + 2) % 5 + 5);
  }
  return g;
}

Graph icosahedron() {
  // Two poles (0, 11) and two staggered pentagons.
  Graph g("icosahedron");
  for (int i = 0; i < 12; ++i) g.add_vertex(i);
  for (int i = 0; i < 5; ++i) {
    const int up = 1 + i;
    const int lo = 6 + i;
    g.add_edge(0, up);
    g.add_edge(11, lo);
    g.add_edge(up, 1 + (i + 1) % 5);
    g.add_edge(lo, 6 + (i + 1) % 5);
    g.add_edge(up, lo);
    g.add_edge(up, 6 + (i + 4) % 5);
  }
  return g;
}

}  // namespace named

}  // namespace defcol
