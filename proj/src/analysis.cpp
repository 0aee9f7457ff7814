#include "defcol/analysis.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

namespace defcol {

// ---------------------------------------------------------------------------
// girth

GirthResult girth(const Graph& g) {
  const Adjacency a = g.adjacency();
  const int n = a.size();
  int best = std::numeric_limits<int>::max();
  std::vector<int> best_cycle;
  std::vector<int> dist(n), parent(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    dist[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      if (2 * dist[u] + 1 >= best) break;
      for (int w : a.nbrs[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (w != parent[u] && parent[w] != u && dist[w] >= dist[u]) {
          const int len = dist[u] + dist[w] + 1;
          if (len < best) {
            best = len;
            // s -> ... -> u, then w -> ... -> s
            std::vector<int> left, right;
            for (int x = u; x >= 0; x = parent[x]) left.push_back(x);
            for (int x = w; x >= 0; x = parent[x]) right.push_back(x);
            std::reverse(left.begin(), left.end());
            right.pop_back();  // drop duplicate root
            best_cycle = left;
            best_cycle.insert(best_cycle.end(), right.begin(), right.end());
          }
        }
      }
    }
  }
  GirthResult r;
  if (best == std::numeric_limits<int>::max()) return r;
  r.length = best;
  for (int i : best_cycle) r.cycle.push_back(a.ids[i]);
  return r;
}

bool is_cycle_of(const Graph& g, const std::vector<VertexId>& cycle) {
  if (cycle.size() < 3) return false;
  std::set<VertexId> seen(cycle.begin(), cycle.end());
  if (seen.size() != cycle.size()) return false;
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!g.has_edge(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// mad

namespace {

class Dinic {
 public:
  explicit Dinic(int n) : graph_(n), level_(n), it_(n) {}

  void add_edge(int u, int v, std::int64_t cap) {
    graph_[u].push_back({v, cap, static_cast<int>(graph_[v].size())});
    graph_[v].push_back({u, 0, static_cast<int>(graph_[u].size()) - 1});
  }

  std::int64_t max_flow(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) flow += f;
    }
    return flow;
  }

  /// Vertices reachable from s in the residual graph (source side of a min cut).
  std::vector<bool> source_side(int s) const {
    std::vector<bool> seen(graph_.size(), false);
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& e : graph_[u])
        if (e.cap > 0 && !seen[e.to]) {
          seen[e.to] = true;
          stack.push_back(e.to);
        }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    std::int64_t cap;
    int rev;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    level_[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const auto& e : graph_[u])
        if (e.cap > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int u, int t, std::int64_t pushed) {
    if (u == t) return pushed;
    for (int& i = it_[u]; i < static_cast<int>(graph_[u].size()); ++i) {
      Arc& e = graph_[u][i];
      if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
      if (std::int64_t d = dfs(e.to, t, std::min(pushed, e.cap))) {
        e.cap -= d;
        graph_[e.to][e.rev].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> graph_;
  std::vector<int> level_;
  std::vector<int> it_;
};

/// Maximizes q|E(H)| - p|V(H)| over vertex sets H; returns the optimum and a maximizer.
std::pair<std::int64_t, std::vector<int>> best_closure(const Adjacency& a,
                                                       const std::vector<std::pair<int, int>>& edges,
                                                       std::int64_t p, std::int64_t q) {
  const int n = a.size();
  const int m = static_cast<int>(edges.size());
  const int source = n + m;
  const int sink = source + 1;
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  Dinic net(n + m + 2);
  for (int e = 0; e < m; ++e) {
    net.add_edge(source, n + e, q);
    net.add_edge(n + e, edges[e].first, inf);
    net.add_edge(n + e, edges[e].second, inf);
  }
  for (int v = 0; v < n; ++v) net.add_edge(v, sink, p);
  const std::int64_t cut = net.max_flow(source, sink);
  const auto side = net.source_side(source);
  std::vector<int> chosen;
  for (int v = 0; v < n; ++v)
    if (side[v]) chosen.push_back(v);
  return {q * m - cut, chosen};
}

}  // namespace

MadResult mad(const Graph& g) {
  if (g.vertex_count() == 0) throw std::invalid_argument("mad: graph has no vertices");
  const Adjacency a = g.adjacency();
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < a.size(); ++u)
    for (int w : a.nbrs[u])
      if (u < w) edges.emplace_back(u, w);

  MadResult r;
  r.densest = a.ids;
  if (edges.empty()) {
    r.value = Rational(0);
    return r;
  }

  auto induced_edges = [&](const std::vector<int>& vs) {
    std::vector<bool> in(a.size(), false);
    for (int v : vs) in[v] = true;
    std::int64_t cnt = 0;
    for (const auto& [u, w] : edges)
      if (in[u] && in[w]) ++cnt;
    return cnt;
  };

  // Dinkelbach: density(H_{t+1}) > density(H_t) until no set beats the current ratio.
  std::vector<int> current(a.size());
  for (int i = 0; i < a.size(); ++i) current[i] = i;
  Rational density(static_cast<std::int64_t>(edges.size()), a.size());
  for (;;) {
    auto [gain, chosen] = best_closure(a, edges, density.num(), density.den());
    if (gain <= 0 || chosen.empty()) break;
    const Rational next(induced_edges(chosen), static_cast<std::int64_t>(chosen.size()));
    if (next <= density) break;
    density = next;
    current = std::move(chosen);
  }
  r.value = Rational(2) * density;
  r.densest.clear();
  for (int v : current) r.densest.push_back(a.ids[v]);
  return r;
}

Rational mad_brute_force(const Graph& g) {
  const Adjacency a = g.adjacency();
  const int n = a.size();
  if (n == 0) throw std::invalid_argument("mad: graph has no vertices");
  if (n > 20) throw std::invalid_argument("mad_brute_force: too many vertices");
  std::vector<std::uint32_t> nb(n, 0);
  for (int u = 0; u < n; ++u)
    for (int w : a.nbrs[u]) nb[u] |= 1u << w;
  Rational best(0);
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    int twice_edges = 0;
    for (int u = 0; u < n; ++u)
      if (s >> u & 1u) twice_edges += __builtin_popcount(nb[u] & s);
    const Rational d(twice_edges, __builtin_popcount(s));
    if (d > best) best = d;
  }
  return best;
}

// ---------------------------------------------------------------------------
// degeneracy, n3, order

DegeneracyResult degeneracy(const Graph& g) {
  const Adjacency a = g.adjacency();
  const int n = a.size();
  std::vector<int> deg(n);
  std::set<std::pair<int, int>> pending;
  for (int v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(a.nbrs[v].size());
    pending.emplace(deg[v], v);
  }
  std::vector<bool> gone(n, false);
  DegeneracyResult r;
  while (!pending.empty()) {
    const auto [d, v] = *pending.begin();
    pending.erase(pending.begin());
    r.value = std::max(r.value, d);
    r.order.push_back(a.ids[v]);
    gone[v] = true;
    for (int w : a.nbrs[v]) {
      if (gone[w]) continue;
      pending.erase({deg[w], w});
      pending.emplace(--deg[w], w);
    }
  }
  return r;
}

bool check_elimination_order(const Graph& g, const std::vector<VertexId>& order, int k) {
  if (order.size() != g.vertex_count()) return false;
  std::set<VertexId> removed;
  for (VertexId v : order) {
    if (!g.has_vertex(v) || removed.count(v)) return false;
    int live = 0;
    for (VertexId w : g.neighbors(v))
      if (!removed.count(w)) ++live;
    if (live > k) return false;
    removed.insert(v);
  }
  return true;
}

int n3(const Graph& g) {
  int count = 0;
  for (VertexId v : g.vertices())
    if (g.degree(v) >= 3) ++count;
  return count;
}

std::string to_string(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::precedes: return "precedes";
    case OrderVerdict::succeeds: return "succeeds";
    case OrderVerdict::incomparable: return "incomparable";
    case OrderVerdict::equal: return "equal";
  }
  return "?";
}

OrderVerdict compare_order(const Graph& g1, const Graph& g2) {
  const auto v1 = g1.vertex_count(), v2 = g2.vertex_count();
  const int a = n3(g1), b = n3(g2);
  const bool lt = (v1 < v2 && a <= b) || a < b;
  const bool gt = (v2 < v1 && b <= a) || b < a;
  if (lt) return OrderVerdict::precedes;
  if (gt) return OrderVerdict::succeeds;
  if (v1 == v2 && a == b) return OrderVerdict::equal;
  return OrderVerdict::incomparable;
}

// ---------------------------------------------------------------------------
// planarity

namespace {

bool edges_planar(const std::vector<std::pair<VertexId, VertexId>>& edges) {
  Graph h;
  for (const auto& [u, w] : edges) {
    if (!h.has_vertex(u)) h.add_vertex(u);
    if (!h.has_vertex(w)) h.add_vertex(w);
    h.add_edge_if_absent(u, w);
  }
  const Adjacency a = h.adjacency();
  boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS> bg(a.size());
  for (int u = 0; u < a.size(); ++u)
    for (int w : a.nbrs[u])
      if (u < w) boost::add_edge(u, w, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

/// The witness reported by the library may carry dangling edges; strip them, and if the result
/// is still not a clean subdivision, shrink it edge by edge to an edge-minimal non-planar subgraph.
void tidy_kuratowski(const Graph& g, std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::set<std::pair<VertexId, VertexId>> es(edges.begin(), edges.end());
  for (bool changed = true; changed;) {
    changed = false;
    std::map<VertexId, int> deg;
    for (const auto& [u, w] : es) ++deg[u], ++deg[w];
    for (auto it = es.begin(); it != es.end();) {
      if (deg[it->first] == 1 || deg[it->second] == 1) {
        it = es.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  edges.assign(es.begin(), es.end());
  if (check_kuratowski(g, edges)) return;
  if (edges_planar(edges)) edges = g.edges();
  for (std::size_t i = 0; i < edges.size();) {
    auto trial = edges;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (!edges_planar(trial))
      edges = std::move(trial);
    else
      ++i;
  }
}

}  // namespace

PlanarityResult planarity(const Graph& g) {
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                           boost::property<boost::vertex_index_t, int>,
                                           boost::property<boost::edge_index_t, int>>;
  using Edge = boost::graph_traits<BoostGraph>::edge_descriptor;

  const Adjacency a = g.adjacency();
  BoostGraph bg(a.size());
  int next_edge = 0;
  for (int u = 0; u < a.size(); ++u)
    for (int w : a.nbrs[u])
      if (u < w) {
        auto e = boost::add_edge(u, w, bg).first;
        boost::put(boost::edge_index, bg, e, next_edge++);
      }

  std::vector<std::vector<Edge>> embedding(a.size());
  std::vector<Edge> kuratowski;
  PlanarityResult r;
  r.planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(embedding.begin(), boost::get(boost::vertex_index, bg)),
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));
  if (r.planar) {
    for (int u = 0; u < a.size(); ++u) {
      std::vector<VertexId> order;
      for (const Edge& e : embedding[u]) {
        const auto s = static_cast<int>(boost::source(e, bg));
        const auto t = static_cast<int>(boost::target(e, bg));
        order.push_back(a.ids[s == u ? t : s]);
      }
      r.rotation.emplace_back(a.ids[u], std::move(order));
    }
  } else {
    for (const Edge& e : kuratowski) {
      auto s = a.ids[boost::source(e, bg)];
      auto t = a.ids[boost::target(e, bg)];
      r.kuratowski.emplace_back(std::min(s, t), std::max(s, t));
    }
    tidy_kuratowski(g, r.kuratowski);
  }
  return r;
}

bool check_rotation_system(const Graph& g, const PlanarityResult& r) {
  if (!r.planar || r.rotation.size() != g.vertex_count()) return false;
  std::map<VertexId, std::vector<VertexId>> rot;
  for (const auto& [v, order] : r.rotation) {
    if (!g.has_vertex(v)) return false;
    const auto& ns = g.neighbors(v);
    if (std::set<VertexId>(order.begin(), order.end()) != ns || order.size() != ns.size()) return false;
    rot[v] = order;
  }
  // Face tracing: from dart (u,v) continue with (v, successor of u in v's rotation).
  std::map<std::pair<VertexId, VertexId>, bool> used;
  long faces = 0;
  for (const auto& [u, order] : rot)
    for (VertexId v : order) {
      if (used[{u, v}]) continue;
      ++faces;
      VertexId x = u, y = v;
      while (!used[{x, y}]) {
        used[{x, y}] = true;
        const auto& ry = rot[y];
        const auto pos = std::find(ry.begin(), ry.end(), x) - ry.begin();
        const VertexId z = ry[(pos + 1) % ry.size()];
        x = y;
        y = z;
      }
    }
  // components
  std::set<VertexId> seen;
  long components = 0;
  for (VertexId s : g.vertices()) {
    if (seen.count(s)) continue;
    ++components;
    if (g.degree(s) == 0) ++faces;  // an isolated vertex bounds its own face
    std::vector<VertexId> stack{s};
    seen.insert(s);
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (VertexId y : g.neighbors(x))
        if (seen.insert(y).second) stack.push_back(y);
    }
  }
  const long v = static_cast<long>(g.vertex_count());
  const long e = static_cast<long>(g.edge_count());
  return v - e + faces == 2 * components;
}

bool check_kuratowski(const Graph& g, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::map<VertexId, std::set<VertexId>> h;
  for (const auto& [u, v] : edges) {
    if (!g.has_edge(u, v)) return false;
    h[u].insert(v);
    h[v].insert(u);
  }
  std::vector<VertexId> branch;
  for (const auto& [v, ns] : h) {
    if (ns.size() >= 3)
      branch.push_back(v);
    else if (ns.size() != 2)
      return false;
  }
  // Trace each branch-to-branch path through degree-2 vertices.
  std::map<VertexId, std::multiset<VertexId>> reduced;
  std::set<VertexId> interior_used;
  for (VertexId b : branch)
    for (VertexId first : h[b]) {
      VertexId prev = b, cur = first;
      while (h[cur].size() == 2) {
        if (cur == b) return false;
        const VertexId next = *h[cur].begin() == prev ? *h[cur].rbegin() : *h[cur].begin();
        prev = cur;
        cur = next;
      }
      if (cur == b) return false;
      reduced[b].insert(cur);
    }
  for (const auto& [v, ns] : reduced)
    if (std::set<VertexId>(ns.begin(), ns.end()).size() != ns.size()) return false;
  if (branch.size() == 5) {
    for (VertexId b : branch)
      if (reduced[b].size() != 4) return false;
    return true;
  }
  if (branch.size() == 6) {
    for (VertexId b : branch)
      if (reduced[b].size() != 3) return false;
    // bipartite with sides of size 3: side of branch[0] is its non-neighbors plus itself
    std::set<VertexId> side{branch[0]};
    for (VertexId b : branch)
      if (b != branch[0] && !reduced[branch[0]].count(b)) side.insert(b);
    if (side.size() != 3) return false;
    for (VertexId b : branch)
      for (VertexId c : reduced[b])
        if (side.count(b) == side.count(c)) return false;
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// discharging

std::variant<Rational, PreconditionViolation> discharge_audit(const Graph& g) {
  if (g.vertex_count() == 0) return PreconditionViolation{-1, "empty graph"};
  for (VertexId v : g.vertices()) {
    const auto d = g.degree(v);
    if (d <= 2) return PreconditionViolation{v, "vertex of degree at most 2"};
    if (d == 3) {
      bool all_small = true;
      for (VertexId w : g.neighbors(v)) all_small = all_small && g.degree(w) <= 4;
      if (all_small) return PreconditionViolation{v, "3-vertex adjacent to three vertices of degree at most 4"};
    }
  }
  const Rational third(1, 3);
  std::optional<Rational> lowest;
  for (VertexId v : g.vertices()) {
    const auto d = static_cast<std::int64_t>(g.degree(v));
    Rational charge(d);
    for (VertexId w : g.neighbors(v)) {
      const auto dw = g.degree(w);
      if (d >= 5 && dw == 3) charge = charge - third;
      if (d == 3 && dw >= 5) charge = charge + third;
    }
    if (!lowest || charge < *lowest) lowest = charge;
  }
  if (*lowest < Rational(10, 3)) throw std::logic_error("discharge_audit: final charge below 10/3");
  return *lowest;
}

}  // namespace defcol
