#include "defcol/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "defcol/text.hpp"

namespace defcol {

// ---------------------------------------------------------------------------
// ColorSpec / Assumption

ColorSpec::ColorSpec(std::vector<int> defects) : defects_(std::move(defects)) {
  if (defects_.empty()) throw std::invalid_argument("ColorSpec needs at least one color");
  if (defects_.size() > 30) throw std::invalid_argument("ColorSpec supports at most 30 colors");
  for (int d : defects_)
    if (d < 0) throw std::invalid_argument("ColorSpec defects must be nonnegative");
}

ColorSpec ColorSpec::parse(std::string_view text) {
  std::vector<int> defects;
  for (auto part : split_on(trim(text), ',')) defects.push_back(parse_int(trim(part)));
  return ColorSpec(std::move(defects));
}

std::string ColorSpec::str() const {
  std::string out;
  for (std::size_t i = 0; i < defects_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(defects_[i]);
  }
  return out;
}

bool ColorSpec::dominates(const ColorSpec& other) const {
  if (defects_.size() != other.defects_.size()) return false;
  for (std::size_t i = 0; i < defects_.size(); ++i)
    if (defects_[i] < other.defects_[i]) return false;
  return true;
}

Assumption parse_assumption(std::string_view text, const Graph& g) {
  text = trim(text);
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw std::invalid_argument("assumption must look like v=c[:b]: " + std::string(text));
  Assumption a;
  a.vertex = g.resolve(text.substr(0, eq));
  auto rest = text.substr(eq + 1);
  const auto colon = rest.find(':');
  a.color = parse_int(rest.substr(0, colon)) - 1;
  if (a.color < 0) throw std::invalid_argument("colors are 1-based: " + std::string(text));
  if (colon != std::string_view::npos) a.budget = parse_int(rest.substr(colon + 1));
  return a;
}

std::vector<Assumption> parse_assumptions(std::string_view text, const Graph& g) {
  std::vector<Assumption> out;
  if (trim(text).empty()) return out;
  for (auto part : split_on(text, ',')) out.push_back(parse_assumption(part, g));
  return out;
}

std::string format_assumption(const Assumption& a, const Graph& g) {
  const auto names = g.names_of(a.vertex);
  std::string out = names.empty() ? std::to_string(a.vertex) : names.front();
  out += "=" + std::to_string(a.color + 1);
  if (a.budget) out += ":" + std::to_string(*a.budget);
  return out;
}

std::string to_string(SolveResult::Status s) {
  switch (s) {
    case SolveResult::Status::sat: return "sat";
    case SolveResult::Status::unsat: return "unsat";
    case SolveResult::Status::timeout: return "timeout";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// check_coloring

int defect_of(const Graph& g, const Coloring& c, VertexId v) {
  const int own = c.at(v);
  int d = 0;
  for (VertexId w : g.neighbors(v))
    if (c.at(w) == own) ++d;
  return d;
}

ColoringCheck check_coloring(const Graph& g, const ColorSpec& spec, const Coloring& c,
                             const std::vector<Assumption>& assumptions) {
  for (VertexId v : g.vertices())
    if (!c.count(v)) throw std::invalid_argument("coloring is not total: vertex " + std::to_string(v) + " uncolored");
  std::map<VertexId, const Assumption*> assumed;
  for (const auto& a : assumptions) assumed[a.vertex] = &a;
  for (VertexId v : g.vertices()) {
    const int col = c.at(v);
    if (col < 0 || col >= spec.colors()) return {false, v, "color index out of range"};
    const int d = defect_of(g, c, v);
    if (d > spec.bound(col))
      return {false, v, "defect " + std::to_string(d) + " exceeds bound " + std::to_string(spec.bound(col))};
    if (auto it = assumed.find(v); it != assumed.end()) {
      const Assumption& a = *it->second;
      if (a.color != col) return {false, v, "assumed color " + std::to_string(a.color + 1) + " not respected"};
      if (a.budget && d > *a.budget)
        return {false, v, "defect " + std::to_string(d) + " exceeds budget " + std::to_string(*a.budget)};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// search

namespace {

using Clock = std::chrono::steady_clock;

struct Problem {
  Adjacency adj;
  int colors = 0;
  std::vector<std::uint32_t> allowed;  // per vertex
  std::vector<int> cap;                // [v * colors + c]
  std::vector<int> floor;              // [v * colors + c]
  std::vector<int> floor_vertices;     // vertices with some positive floor
};

Problem build_problem(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions,
                      const SolveOptions& options) {
  Problem p;
  p.adj = g.adjacency();
  p.colors = spec.colors();
  const int n = p.adj.size();
  const int L = p.colors;
  const std::uint32_t all = (1u << L) - 1;
  p.allowed.assign(n, all);
  p.cap.resize(static_cast<std::size_t>(n) * L);
  p.floor.assign(static_cast<std::size_t>(n) * L, 0);
  for (int v = 0; v < n; ++v)
    for (int c = 0; c < L; ++c) p.cap[v * L + c] = spec.bound(c);

  std::set<VertexId> seen;
  for (const auto& a : assumptions) {
    if (!g.has_vertex(a.vertex)) throw PreconditionError("assumption on missing vertex " + std::to_string(a.vertex));
    if (a.color < 0 || a.color >= L) throw PreconditionError("assumption color out of range");
    if (!seen.insert(a.vertex).second)
      throw PreconditionError("more than one assumption on vertex " + std::to_string(a.vertex));
    if (a.budget && (*a.budget < 0 || *a.budget > spec.bound(a.color)))
      throw PreconditionError("assumption budget must lie in [0, d_color]");
    const int v = p.adj.index(a.vertex);
    p.allowed[v] &= 1u << a.color;
    if (a.budget) p.cap[v * L + a.color] = std::min(p.cap[v * L + a.color], *a.budget);
  }
  for (const auto& w : options.windows) {
    if (!g.has_vertex(w.vertex) || w.color < 0 || w.color >= L) throw PreconditionError("bad defect window");
    const int v = p.adj.index(w.vertex);
    auto& cap = p.cap[v * L + w.color];
    auto& fl = p.floor[v * L + w.color];
    cap = std::min(cap, w.max_defect);
    fl = std::max(fl, w.min_defect);
  }
  for (const auto& [id, mask] : options.allowed) {
    if (!g.has_vertex(id)) throw PreconditionError("color restriction on missing vertex");
    p.allowed[p.adj.index(id)] &= mask;
  }
  for (int v = 0; v < n; ++v) {
    bool has_floor = false;
    const int deg = static_cast<int>(p.adj.nbrs[v].size());
    for (int c = 0; c < L; ++c) {
      const int cap = p.cap[v * L + c];
      const int fl = p.floor[v * L + c];
      if (cap < 0 || fl > cap || fl > deg) p.allowed[v] &= ~(1u << c);
      if (fl > 0) has_floor = true;
    }
    if (has_floor) p.floor_vertices.push_back(v);
  }
  return p;
}

enum class Outcome { sat, unsat, timeout };

class Search {
 public:
  Search(const Problem& p, std::optional<Clock::time_point> deadline, const std::atomic<bool>* stop)
      : p_(p), L_(p.colors), deadline_(deadline), stop_(stop) {
    const int n = p_.adj.size();
    color_.assign(n, -1);
    dom_ = p_.allowed;
    cnt_.assign(static_cast<std::size_t>(n) * L_, 0);
    colored_nbrs_.assign(n, 0);
    level_.assign(n, 0);
    decision_.assign(n, 0);
    cause_.assign(static_cast<std::size_t>(n) * L_, -1);
    stamp_.assign(n, 0);
  }

  /// Initial propagation; false on immediate conflict.
  bool init() {
    for (int v = 0; v < p_.adj.size(); ++v) {
      if (dom_[v] == 0) return false;
      if (std::has_single_bit(dom_[v])) queue_.push_back(v);
    }
    return propagate() && floors_ok();
  }

  bool decide(int v, int c) {
    if (color_[v] != -1) return color_[v] == c;
    if (!(dom_[v] >> c & 1u)) return false;
    return assign(v, c) && propagate() && floors_ok();
  }

  Outcome run() {
    Levels ignored;
    return dfs(1, ignored);
  }

  int pick() const {
    int best = -1;
    int best_dom = 99, best_sat = -1, best_deg = -1;
    for (int v = 0; v < p_.adj.size(); ++v) {
      if (color_[v] != -1) continue;
      const int ds = std::popcount(dom_[v]);
      const int sat = colored_nbrs_[v];
      const int deg = static_cast<int>(p_.adj.nbrs[v].size());
      if (ds < best_dom || (ds == best_dom && (sat > best_sat || (sat == best_sat && deg > best_deg)))) {
        best = v;
        best_dom = ds;
        best_sat = sat;
        best_deg = deg;
      }
    }
    return best;
  }

  std::uint32_t domain(int v) const { return dom_[v]; }
  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark) {
    queue_.clear();
    while (trail_.size() > mark) {
      const Entry e = trail_.back();
      trail_.pop_back();
      if (e.kind == Entry::kDomain) {
        dom_[e.v] = e.data;
      } else {
        const int c = color_[e.v];
        for (int w : p_.adj.nbrs[e.v]) {
          --cnt_[w * L_ + c];
          --colored_nbrs_[w];
        }
        color_[e.v] = -1;
      }
    }
  }

  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<int>& colors() const { return color_; }

 private:
  struct Entry {
    enum Kind : std::uint8_t { kDomain, kColor } kind;
    int v;
    std::uint32_t data;
  };

  // Conflict-directed backjumping. Every removal of color c from v records a cause: the vertex u
  // saturated in c next to v, or v itself when v already has too many c-colored neighbors.
  // Explanations are rebuilt from the current state, which can only add culprits and stays sound.
  using Levels = std::vector<std::uint64_t>;

  static void add_level(Levels& s, int l) {
    if (l <= 0) return;
    const auto w = static_cast<std::size_t>(l >> 6);
    if (s.size() <= w) s.resize(w + 1, 0);
    s[w] |= std::uint64_t{1} << (l & 63);
  }
  static bool has_level(const Levels& s, int l) {
    const auto w = static_cast<std::size_t>(l >> 6);
    return w < s.size() && (s[w] >> (l & 63) & 1u);
  }
  static void erase_level(Levels& s, int l) {
    const auto w = static_cast<std::size_t>(l >> 6);
    if (w < s.size()) s[w] &= ~(std::uint64_t{1} << (l & 63));
  }
  static void merge(Levels& a, const Levels& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] |= b[i];
  }

  void push_same_colored(int v, int c) {
    for (int w : p_.adj.nbrs[v])
      if (color_[w] == c) work_.push_back(w);
  }

  void push_removal(int v, int c) {
    const int u = cause_[v * L_ + c];
    if (u < 0) return;
    if (u != v) work_.push_back(u);
    push_same_colored(u, c);
  }

  /// Decision levels of everything currently on work_, closed under reasons.
  void explain(Levels& out) {
    ++stamp_now_;
    while (!work_.empty()) {
      const int x = work_.back();
      work_.pop_back();
      if (stamp_[x] == stamp_now_) continue;
      stamp_[x] = stamp_now_;
      if (level_[x] == 0) continue;
      if (decision_[x]) {
        add_level(out, level_[x]);
        continue;
      }
      for (int c = 0; c < L_; ++c)
        if (c != color_[x]) push_removal(x, c);
    }
  }

  void explain_conflict(Levels& out, int lvl) {
    work_.clear();
    if (conflict_kind_ == kFloor) {
      for (int l = 1; l <= lvl; ++l) add_level(out, l);
      return;
    }
    if (conflict_kind_ == kEmpty) {
      for (int c = 0; c < L_; ++c) push_removal(conflict_v_, c);
    } else {
      work_.push_back(conflict_v_);
      push_same_colored(conflict_v_, conflict_c_);
    }
    explain(out);
  }

  bool fail_empty(int v) {
    conflict_kind_ = kEmpty;
    conflict_v_ = v;
    return false;
  }
  bool fail_over(int v, int c) {
    conflict_kind_ = kOver;
    conflict_v_ = v;
    conflict_c_ = c;
    return false;
  }

  bool remove(int v, int c, int cause) {
    if (!(dom_[v] >> c & 1u)) return true;
    trail_.push_back({Entry::kDomain, v, dom_[v]});
    dom_[v] &= ~(1u << c);
    cause_[v * L_ + c] = cause;
    if (dom_[v] == 0) return fail_empty(v);
    if (std::has_single_bit(dom_[v])) queue_.push_back(v);
    return true;
  }

  bool close_color_around(int v, int c) {
    for (int w : p_.adj.nbrs[v])
      if (color_[w] == -1 && !remove(w, c, v)) return false;
    return true;
  }

  bool assign(int v, int c, bool decision = false) {
    color_[v] = c;
    level_[v] = level_now_;
    decision_[v] = decision ? 1 : 0;
    trail_.push_back({Entry::kColor, v, 0});
    for (int w : p_.adj.nbrs[v]) {
      ++cnt_[w * L_ + c];
      ++colored_nbrs_[w];
    }
    const int own = cnt_[v * L_ + c];
    const int cap = p_.cap[v * L_ + c];
    if (own > cap) return fail_over(v, c);
    if (own == cap && !close_color_around(v, c)) return false;
    for (int w : p_.adj.nbrs[v]) {
      const int k = cnt_[w * L_ + c];
      const int cw = p_.cap[w * L_ + c];
      if (color_[w] == c) {
        if (k > cw) return fail_over(w, c);
        if (k == cw && !close_color_around(w, c)) return false;
      } else if (color_[w] == -1 && k > cw) {
        if (!remove(w, c, w)) return false;
      }
    }
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      const int v = queue_.back();
      queue_.pop_back();
      if (color_[v] != -1) continue;
      if (dom_[v] == 0) {
        queue_.clear();
        return fail_empty(v);
      }
      if (!assign(v, std::countr_zero(dom_[v]))) {
        queue_.clear();
        return false;
      }
    }
    return true;
  }

  bool floors_ok() {
    for (int v : p_.floor_vertices) {
      const int c = color_[v];
      if (c == -1) continue;
      const int need = p_.floor[v * L_ + c];
      if (need == 0) continue;
      int possible = cnt_[v * L_ + c];
      for (int w : p_.adj.nbrs[v])
        if (color_[w] == -1 && (dom_[w] >> c & 1u)) ++possible;
      if (possible < need) {
        conflict_kind_ = kFloor;
        return false;
      }
    }
    return true;
  }

  bool out_of_time() {
    if ((nodes_ & 1023u) != 0) return false;
    if (stop_ && stop_->load(std::memory_order_relaxed)) return true;
    return deadline_ && Clock::now() > *deadline_;
  }

  /// Decides at level lvl. On unsat, `conflict` receives earlier levels that suffice for the failure.
  Outcome dfs(int lvl, Levels& conflict) {
    ++nodes_;
    if (out_of_time()) return Outcome::timeout;
    const int v = pick();
    if (v < 0) return Outcome::sat;
    const std::uint32_t d = dom_[v];
    Levels acc;
    work_.clear();
    for (int c = 0; c < L_; ++c)
      if (!(d >> c & 1u)) push_removal(v, c);
    explain(acc);
    for (int c = 0; c < L_; ++c) {
      if (!(d >> c & 1u)) continue;
      const std::size_t m = trail_.size();
      level_now_ = lvl;
      if (assign(v, c, true) && propagate() && floors_ok()) {
        Levels child;
        const Outcome o = dfs(lvl + 1, child);
        if (o != Outcome::unsat) return o;
        if (!has_level(child, lvl)) {
          undo(m);
          conflict = std::move(child);
          return Outcome::unsat;
        }
        erase_level(child, lvl);
        merge(acc, child);
      } else {
        queue_.clear();
        Levels here;
        explain_conflict(here, lvl);
        erase_level(here, lvl);
        merge(acc, here);
      }
      undo(m);
    }
    conflict = std::move(acc);
    return Outcome::unsat;
  }

  const Problem& p_;
  int L_;
  std::optional<Clock::time_point> deadline_;
  const std::atomic<bool>* stop_;
  std::vector<int> color_;
  std::vector<std::uint32_t> dom_;
  std::vector<int> cnt_;
  std::vector<int> colored_nbrs_;
  std::vector<int> queue_;
  std::vector<Entry> trail_;
  std::uint64_t nodes_ = 0;

  enum ConflictKind { kEmpty, kOver, kFloor };
  std::vector<int> level_;
  std::vector<char> decision_;
  std::vector<int> cause_;
  std::vector<unsigned> stamp_;
  std::vector<int> work_;
  unsigned stamp_now_ = 0;
  int level_now_ = 0;
  ConflictKind conflict_kind_ = kEmpty;
  int conflict_v_ = -1;
  int conflict_c_ = 0;
};

Coloring to_coloring(const Problem& p, const std::vector<int>& colors) {
  Coloring c;
  for (int v = 0; v < p.adj.size(); ++v) c[p.adj.ids[v]] = colors[v];
  return c;
}

using Decisions = std::vector<std::pair<int, int>>;

/// Expands the search tree breadth-first until there are enough open subproblems for the workers.
std::vector<Decisions> split_tasks(const Problem& p, int want) {
  std::vector<Decisions> frontier{Decisions{}};
  for (int depth = 0; depth < 12 && static_cast<int>(frontier.size()) < want; ++depth) {
    std::vector<Decisions> next;
    bool grew = false;
    for (const auto& task : frontier) {
      Search s(p, std::nullopt, nullptr);
      bool ok = s.init();
      for (const auto& [v, c] : task) ok = ok && s.decide(v, c);
      if (!ok) continue;  // refuted subtree
      const int v = s.pick();
      if (v < 0) {
        next.push_back(task);
        continue;
      }
      for (int c = 0; c < p.colors; ++c)
        if (s.domain(v) >> c & 1u) {
          auto t = task;
          t.emplace_back(v, c);
          next.push_back(std::move(t));
          grew = true;
        }
    }
    frontier = std::move(next);
    if (!grew) break;
  }
  return frontier;
}

SolveResult solve_problem(const Problem& p, const SolveOptions& options) {
  const auto start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (options.budget) deadline = start + *options.budget;
  SolveResult r;

  auto finish = [&](SolveResult::Status st) {
    r.status = st;
    r.stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return r;
  };

  if (options.threads <= 1) {
    Search s(p, deadline, nullptr);
    if (!s.init()) return finish(SolveResult::Status::unsat);
    const Outcome o = s.run();
    r.stats.nodes = s.nodes();
    if (o == Outcome::sat) r.certificate = to_coloring(p, s.colors());
    return finish(o == Outcome::sat ? SolveResult::Status::sat
                                    : o == Outcome::unsat ? SolveResult::Status::unsat : SolveResult::Status::timeout);
  }

  const auto tasks = split_tasks(p, options.threads * 4);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> nodes{0};
  std::mutex mu;
  bool found = false, timed_out = false;
  std::size_t found_task = SIZE_MAX;
  std::vector<int> found_colors;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size() || stop.load()) return;
      Search s(p, deadline, &stop);
      bool ok = s.init();
      for (const auto& [v, c] : tasks[i]) ok = ok && s.decide(v, c);
      if (!ok) continue;
      const Outcome o = s.run();
      nodes += s.nodes();
      std::lock_guard lock(mu);
      if (o == Outcome::sat && i < found_task) {
        found = true;
        found_task = i;
        found_colors = s.colors();
        stop = true;
      } else if (o == Outcome::timeout && !stop.load()) {
        timed_out = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < options.threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  r.stats.nodes = nodes.load();
  if (found) {
    r.certificate = to_coloring(p, found_colors);
    return finish(SolveResult::Status::sat);
  }
  return finish(timed_out ? SolveResult::Status::timeout : SolveResult::Status::unsat);
}

}  // namespace

SolveResult solve(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions,
                  const SolveOptions& options) {
  const Problem p = build_problem(g, spec, assumptions, options);
  SolveResult r = solve_problem(p, options);
  if (r.sat()) {
    const auto check = check_coloring(g, spec, r.certificate, assumptions);
    if (!check.ok) throw std::logic_error("solver produced an invalid certificate at vertex " + std::to_string(check.vertex));
  }
  return r;
}

// ---------------------------------------------------------------------------
// brute force oracle

namespace {

template <typename Visit>
void enumerate_colorings(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions,
                         Visit&& visit) {
  const Adjacency a = g.adjacency();
  const int n = a.size();
  const int L = spec.colors();
  double space = 1;
  for (int i = 0; i < n; ++i) space *= L;
  if (space > 1e8) throw PreconditionError("brute_force_solve: instance too large");
  std::vector<int> fixed(n, -1), budget(n, std::numeric_limits<int>::max());
  for (const auto& as : assumptions) {
    const int v = a.index(as.vertex);
    fixed[v] = as.color;
    if (as.budget) budget[v] = *as.budget;
  }
  std::vector<int> col(n, 0);
  for (int v = 0; v < n; ++v)
    if (fixed[v] >= 0) col[v] = fixed[v];
  for (;;) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      int d = 0;
      for (int w : a.nbrs[v]) d += col[w] == col[v];
      ok = d <= spec.bound(col[v]) && d <= budget[v];
    }
    if (ok) {
      Coloring c;
      for (int v = 0; v < n; ++v) c[a.ids[v]] = col[v];
      if (!visit(c)) return;
    }
    int i = n - 1;
    for (; i >= 0; --i) {
      if (fixed[i] >= 0) continue;
      if (++col[i] < L) break;
      col[i] = 0;
    }
    if (i < 0) return;
  }
}

}  // namespace

void for_each_coloring(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions,
                       const std::function<bool(const Coloring&)>& visit) {
  enumerate_colorings(g, spec, assumptions, visit);
}

SolveResult brute_force_solve(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions) {
  SolveResult r;
  r.status = SolveResult::Status::unsat;
  enumerate_colorings(g, spec, assumptions, [&](const Coloring& c) {
    r.status = SolveResult::Status::sat;
    r.certificate = c;
    return false;
  });
  return r;
}

std::set<VertexState> forced_states_brute_force(const Graph& g, const ColorSpec& spec,
                                                const std::vector<Assumption>& assumptions, VertexId query) {
  std::set<VertexState> out;
  enumerate_colorings(g, spec, assumptions, [&](const Coloring& c) {
    out.emplace(c.at(query), defect_of(g, c, query));
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// forced states, minimization

ForcedStates forced_states(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions,
                           VertexId query, const SolveOptions& options) {
  if (!g.has_vertex(query)) throw PreconditionError("query vertex " + std::to_string(query) + " not in graph");
  ForcedStates out;
  const int deg = static_cast<int>(g.degree(query));
  for (int c = 0; c < spec.colors(); ++c) {
    SolveOptions o = options;
    auto it = o.allowed.find(query);
    o.allowed[query] = (it == o.allowed.end() ? ~0u : it->second) & (1u << c);
    const SolveResult first = solve(g, spec, assumptions, o);
    if (first.timed_out()) out.complete = false;
    if (!first.sat()) continue;
    out.states.emplace(c, defect_of(g, first.certificate, query));
    const int top = std::min(spec.bound(c), deg);
    for (int d = 0; d <= top; ++d) {
      if (out.states.count({c, d})) continue;
      SolveOptions od = o;
      od.windows.push_back({query, c, d, d});
      const SolveResult r = solve(g, spec, assumptions, od);
      if (r.timed_out()) out.complete = false;
      if (r.sat()) out.states.emplace(c, defect_of(g, r.certificate, query));
    }
  }
  return out;
}

namespace {

bool colorable_or_throw(const Graph& g, const ColorSpec& spec, const SolveOptions& options) {
  const SolveResult r = solve(g, spec, {}, options);
  if (r.timed_out()) throw std::runtime_error("minimize_noncolorable: solver timed out");
  return r.sat();
}

}  // namespace

Graph minimize_noncolorable(const Graph& g, const ColorSpec& spec, const SolveOptions& options) {
  if (colorable_or_throw(g, spec, options)) throw PreconditionError("minimize_noncolorable: graph is colorable");
  Graph h = g;
  for (VertexId v : g.vertices()) {
    Graph trial = h;
    trial.remove_vertex(v);
    if (!colorable_or_throw(trial, spec, options)) h = std::move(trial);
  }
  for (const auto& [u, w] : h.edges()) {
    Graph trial = h;
    trial.remove_edge(u, w);
    if (!colorable_or_throw(trial, spec, options)) h = std::move(trial);
  }
  for (VertexId v : h.vertices())
    if (h.degree(v) == 0) h.remove_vertex(v);
  return h;
}

bool is_deletion_minimal_noncolorable(const Graph& g, const ColorSpec& spec, const SolveOptions& options) {
  if (colorable_or_throw(g, spec, options)) return false;
  for (VertexId v : g.vertices()) {
    Graph trial = g;
    trial.remove_vertex(v);
    if (!colorable_or_throw(trial, spec, options)) return false;
  }
  for (const auto& [u, w] : g.edges()) {
    Graph trial = g;
    trial.remove_edge(u, w);
    if (!colorable_or_throw(trial, spec, options)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// CNF export

std::string to_cnf(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions) {
  const Adjacency a = g.adjacency();
  const int L = spec.colors();
  auto var = [L](int v, int c) { return v * L + c + 1; };
  std::vector<std::vector<int>> clauses;
  std::vector<int> cap_override(static_cast<std::size_t>(a.size()) * L, -1);
  for (const auto& as : assumptions) {
    const int v = a.index(as.vertex);
    clauses.push_back({var(v, as.color)});
    if (as.budget) cap_override[v * L + as.color] = *as.budget;
  }
  for (int v = 0; v < a.size(); ++v) {
    std::vector<int> one;
    for (int c = 0; c < L; ++c) one.push_back(var(v, c));
    clauses.push_back(one);
    for (int c = 0; c < L; ++c)
      for (int d = c + 1; d < L; ++d) clauses.push_back({-var(v, c), -var(v, d)});
    const auto& nb = a.nbrs[v];
    for (int c = 0; c < L; ++c) {
      const int cap = cap_override[v * L + c] >= 0 ? cap_override[v * L + c] : spec.bound(c);
      const int k = cap + 1;  // forbid every (cap+1)-subset of same-colored neighbors
      if (k > static_cast<int>(nb.size())) continue;
      std::vector<int> pick(k);
      std::function<void(int, int)> rec = [&](int from, int depth) {
        if (depth == k) {
          std::vector<int> cl{-var(v, c)};
          for (int i : pick) cl.push_back(-var(nb[i], c));
          clauses.push_back(std::move(cl));
          return;
        }
        for (int i = from; i < static_cast<int>(nb.size()); ++i) {
          pick[depth] = i;
          rec(i + 1, depth + 1);
        }
      };
      rec(0, 0);
    }
  }
  std::ostringstream os;
  os << "c defective coloring spec " << spec.str() << "\n";
  os << "p cnf " << a.size() * L << ' ' << clauses.size() << "\n";
  for (const auto& cl : clauses) {
    for (int lit : cl) os << lit << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace defcol
