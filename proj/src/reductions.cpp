#include "defcol/reductions.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "defcol/text.hpp"

namespace defcol {

namespace {

std::string str(VertexId v) { return std::to_string(v); }

void require_verified(const Graph& g, const Property& p, const SolveOptions& options, const std::string& what) {
  const auto r = verify_property(g, p, options);
  if (r.outcome != Outcome::verified)
    throw GadgetRejected(what + ": " + format_property(p) + " is " + to_string(r.outcome) +
                         (r.detail.empty() ? "" : " (" + r.detail + ")"));
}

bool is_path_spec(const ColorSpec& spec) { return spec.colors() == 2 && spec.bound(0) >= 1 && spec.bound(1) == 0; }

Property guarantee_for(const ColorSpec& spec, AttachMode mode) {
  if (mode == AttachMode::path) return parse_property("property forced " + spec.str() + " at x2 states (1,1)");
  return parse_property("property forall " + spec.str() + " pattern u'!=v' u'!=u v'!=v");
}

/// Adds a copy of part to host and records it in the trace.
std::map<VertexId, VertexId> place(ReductionOutput& out, const Graph& part, bool edge, VertexId s, VertexId t) {
  const int idx = static_cast<int>(out.trace.size());
  auto map = add_copy(out.graph, part, "copy" + std::to_string(idx) + "/");
  TraceEntry e;
  e.copy = idx;
  e.edge = edge;
  e.s = s;
  e.t = t;
  e.first = map.begin()->second;
  e.last = e.first;
  for (const auto& [from, to] : map) e.last = std::max(e.last, to);
  out.trace.push_back(e);
  return map;
}

VertexId term(const Graph& g, const std::string& name) {
  const auto v = g.terminal(name);
  if (!v) throw GraphError("gadget lacks terminal " + name);
  return *v;
}

void check_size(const ReductionOutput& out, const Graph& instance, std::size_t gadget_size, std::size_t identified) {
  const std::size_t expected = instance.vertex_count() + out.trace.size() * (gadget_size - identified);
  if (out.graph.vertex_count() != expected)
    throw std::logic_error("reduction size bound violated: " + std::to_string(out.graph.vertex_count()) +
                           " vertices, expected " + std::to_string(expected));
}

Manifest e_ab_manifest() {
  return parse_manifest(
      "property exists 1,1 pattern a!=b unsat(a) unsat(b)\n"
      "property exists 1,1 pattern a==b\n"
      "property forall 1,1 pattern a==b implies sat(a) sat(b)\n"
      "property note girth of the real construction is 5 or 6 (both recorded)\n");
}

void verify_e_ab(const Gadget& e, const SolveOptions& options) {
  for (const auto& p : e.manifest.properties)
    if (p.kind != PropertyKind::note) require_verified(e.graph, p, options, "E_ab rejected");
}

}  // namespace

std::string to_string(AttachMode m) { return m == AttachMode::path ? "path" : "pendant"; }

AttachMode parse_attach_mode(std::string_view text) {
  if (text == "path") return AttachMode::path;
  if (text == "pendant") return AttachMode::pendant;
  throw std::invalid_argument("unknown attach mode: " + std::string(text));
}

std::vector<std::string> ForcingGadget::attach_terminals() const {
  if (mode == AttachMode::path) return {"x2"};
  return {"u'", "v'"};
}

Gadget ForcingGadget::as_gadget() const {
  return Gadget{graph.name(), graph, Manifest{{guarantee}}, "derived " + to_string(mode) + " forcing gadget"};
}

ForcingGadget derive_forcing_gadget(const Graph& minimal, const ColorSpec& spec, AttachMode mode,
                                    std::optional<VertexId> x, const SolveOptions& options) {
  if (spec.colors() != 2) throw std::invalid_argument("forcing gadgets need a two-color spec");
  if (mode == AttachMode::path && !is_path_spec(spec))
    throw std::invalid_argument("path mode needs a spec (k,0) with k >= 1");
  if (!is_deletion_minimal_noncolorable(minimal, spec, options))
    throw std::invalid_argument("graph is not minimally non-" + spec.str() + "-colorable");
  if (!x) {
    for (VertexId v : minimal.vertices())
      if (minimal.degree(v) == 2) {
        x = v;
        break;
      }
    if (!x) throw std::invalid_argument("graph has no vertex of degree 2");
  }
  if (!minimal.has_vertex(*x) || minimal.degree(*x) != 2) throw std::invalid_argument("x must have degree 2");
  const auto& nb = minimal.neighbors(*x);
  const VertexId u = *nb.begin(), v = *nb.rbegin();

  Graph g = minimal;
  g.remove_vertex(*x);
  g.set_terminal("u", u);
  g.set_terminal("v", v);
  require_verified(g, parse_property("property forall " + spec.str() + " pattern u!=v sat(u) sat(v)"), options,
                   "u and v do not always get distinct saturated colors");

  VertexId next = std::max(g.max_id(), *x) + 1;
  if (mode == AttachMode::path) {
    const VertexId x1 = next++, x2 = next++, x3 = next++;
    for (VertexId w : {x1, x2, x3}) g.add_vertex(w);
    g.add_edge(u, x1);
    g.add_edge(x1, x2);
    g.add_edge(x2, x3);
    g.add_edge(x3, v);
    g.set_terminal("x1", x1);
    g.set_terminal("x2", x2);
    g.set_terminal("x3", x3);
  } else {
    const VertexId up = next++, vp = next++;
    g.add_vertex(up);
    g.add_vertex(vp);
    g.add_edge(u, up);
    g.add_edge(v, vp);
    g.set_terminal("u'", up);
    g.set_terminal("v'", vp);
  }
  g.set_name((minimal.name().empty() ? std::string("G") : minimal.name()) + "_" + to_string(mode));
  return load_forcing_gadget(g, spec, mode, options);
}

ForcingGadget load_forcing_gadget(const Graph& g, const ColorSpec& spec, AttachMode mode, const SolveOptions& options) {
  if (mode == AttachMode::path && !is_path_spec(spec))
    throw std::invalid_argument("path mode needs a spec (k,0) with k >= 1");
  ForcingGadget fg{g, mode, spec, guarantee_for(spec, mode)};
  for (const auto& t : fg.attach_terminals()) term(g, t);
  require_verified(g, fg.guarantee, options, "forcing guarantee fails");
  return fg;
}

std::optional<Graph> find_minimal_with_2vertex(const ColorSpec& spec, int max_vertices, const SearchOptions& options) {
  SearchOptions so = options;
  SolveOptions solve_opts;
  solve_opts.budget = options.per_check_budget;
  so.refine = [&](const Graph& g) -> std::optional<Graph> {
    if (g.vertex_count() < 3 || g.min_degree() < 2) return std::nullopt;
    const auto r = solve(g, spec, {}, solve_opts);
    if (!r.unsat()) return std::nullopt;
    Graph h = minimize_noncolorable(g, spec, solve_opts);
    if (h.min_degree() != 2) return std::nullopt;
    return h;
  };
  Property p;
  p.kind = PropertyKind::noncolorable;
  p.spec = spec;
  auto found = search_gadget(p, max_vertices, so);
  if (!found) return std::nullopt;
  found->graph.set_name("mock" + spec.str());
  return found->graph;
}

std::string TraceEntry::str() const {
  std::ostringstream os;
  os << "copy " << copy << " for " << (edge ? "edge " + defcol::str(s) + "-" + defcol::str(t) : "vertex " + defcol::str(s))
     << " -> vertices " << first << '-' << last;
  return os.str();
}

std::optional<TraceEntry> ReductionOutput::origin(VertexId v) const {
  for (const auto& e : trace)
    if (e.first <= v && v <= e.last) return e;
  return std::nullopt;
}

std::string format_trace(const std::vector<TraceEntry>& trace) {
  std::string out;
  for (const auto& e : trace) out += e.str() + "\n";
  return out;
}

std::vector<TraceEntry> parse_trace(std::string_view text) {
  std::vector<TraceEntry> out;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto tok = split_ws(line);
    if (tok.size() != 8 || tok[0] != "copy" || tok[2] != "for" || tok[5] != "->" || tok[6] != "vertices" ||
        (tok[3] != "vertex" && tok[3] != "edge"))
      throw ParseError(line_no, "expected: copy <idx> for <vertex s|edge s-t> -> vertices <first>-<last>");
    auto pair_of = [&](std::string_view t) {
      const auto parts = split_on(t, '-');
      if (parts.size() != 2) throw ParseError(line_no, "expected a range a-b: " + std::string(t));
      return std::pair<VertexId, VertexId>{parse_int(parts[0]), parse_int(parts[1])};
    };
    try {
      TraceEntry e;
      e.copy = parse_int(tok[1]);
      e.edge = tok[3] == "edge";
      if (e.edge)
        std::tie(e.s, e.t) = pair_of(tok[4]);
      else
        e.s = parse_int(tok[4]);
      std::tie(e.first, e.last) = pair_of(tok[7]);
      out.push_back(e);
    } catch (const std::invalid_argument& err) {
      throw ParseError(line_no, err.what());
    }
  }
  return out;
}

ReductionOutput reduce_k0(const Graph& instance, int k, const ForcingGadget& fg) {
  if (k < 2) throw std::invalid_argument("reduce_k0 needs k >= 2");
  if (fg.mode != AttachMode::path || fg.spec != ColorSpec({k, 0}))
    throw std::invalid_argument("reduce_k0 needs a path-mode gadget for (" + std::to_string(k) + ",0)");
  ReductionOutput out{instance, {}};
  const VertexId x2 = term(fg.graph, "x2");
  for (VertexId s : instance.vertices())
    for (int i = 0; i < k - 1; ++i) {
      auto map = place(out, fg.graph, false, s, -1);
      out.graph.add_edge(map.at(x2), s);
    }
  check_size(out, instance, fg.graph.vertex_count(), 0);
  return out;
}

Gadget assemble_E_ab(const Graph& pendant_graph) {
  const VertexId up = term(pendant_graph, "u'"), vp = term(pendant_graph, "v'");
  Graph g("E_ab");
  g.add_vertex(0);
  g.add_vertex(1);
  g.set_terminal("a", 0);
  g.set_terminal("b", 1);
  for (int i = 1; i <= 2; ++i) {
    auto map = add_copy(g, pendant_graph, "G" + std::to_string(i) + "/");
    g.add_edge(0, map.at(up));
    g.add_edge(1, map.at(vp));
  }
  return Gadget{"E_ab", std::move(g), e_ab_manifest(), "two pendant forcing gadgets joined through a and b"};
}

Gadget load_E_ab(const Graph& g, const SolveOptions& options) {
  term(g, "a");
  term(g, "b");
  Gadget e{g.name().empty() ? "E_ab" : g.name(), g, e_ab_manifest(), "E_ab read from file"};
  verify_e_ab(e, options);
  return e;
}

Gadget build_E_ab(const ForcingGadget& g_pendant, const SolveOptions& options) {
  if (g_pendant.mode != AttachMode::pendant || g_pendant.spec != ColorSpec({1, 1}))
    throw std::invalid_argument("build_E_ab needs a pendant-mode gadget for (1,1)");
  Gadget e = assemble_E_ab(g_pendant.graph);
  verify_e_ab(e, options);
  return e;
}

ReductionOutput reduce_11(const Graph& instance, const Gadget& e_ab) {
  const VertexId a = term(e_ab.graph, "a"), b = term(e_ab.graph, "b");
  ReductionOutput out{instance, {}};
  for (const auto& [p, q] : instance.edges()) {
    out.graph.remove_edge(p, q);
    auto map = place(out, e_ab.graph, true, p, q);
    out.graph.identify(p, map.at(a));
    out.graph.identify(q, map.at(b));
  }
  check_size(out, instance, e_ab.graph.vertex_count(), 2);
  return out;
}

int reduce_kj_t(int k, int j) { return std::min(k - 1, j); }

ReductionOutput reduce_kj(const Graph& instance, int k, int j, const ForcingGadget& fg) {
  if (j < 1 || k < 2 || j > k) throw std::invalid_argument("reduce_kj needs 1 <= j <= k and k >= 2");
  if (fg.mode != AttachMode::pendant || fg.spec != ColorSpec({k, j}))
    throw std::invalid_argument("reduce_kj needs a pendant-mode gadget for (" + std::to_string(k) + "," +
                                std::to_string(j) + ")");
  const VertexId up = term(fg.graph, "u'"), vp = term(fg.graph, "v'");
  const int t = reduce_kj_t(k, j);
  ReductionOutput out{instance, {}};
  for (VertexId s : instance.vertices())
    for (int i = 0; i < t; ++i) {
      auto map = place(out, fg.graph, false, s, -1);
      out.graph.add_edge(map.at(up), s);
      out.graph.add_edge(map.at(vp), s);
    }
  check_size(out, instance, fg.graph.vertex_count(), 0);
  return out;
}

ReductionOutput reduce_3col(const Graph& instance, int k, const Gadget& epp) {
  if (k < 1) throw std::invalid_argument("reduce_3col needs k >= 1");
  const VertexId a = term(epp.graph, "a"), b = term(epp.graph, "b");
  if (!epp.graph.has_edge(a, b)) throw GraphError("E'' must contain the edge ab");
  ReductionOutput out{instance, {}};
  for (const auto& [p, q] : instance.edges()) {
    auto map = place(out, epp.graph, true, p, q);
    out.graph.identify(p, map.at(a));
    out.graph.identify(q, map.at(b));
  }
  check_size(out, instance, epp.graph.vertex_count(), 2);
  return out;
}

}  // namespace defcol
