#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "defcol/graph.hpp"

namespace defcol {

/// Per-color defect bounds (d1,...,dl). Colors are 0-based in the API and 1-based in every text format.
class ColorSpec {
 public:
  ColorSpec() = default;
  explicit ColorSpec(std::vector<int> defects);
  /// "1,0" -> (1,0)
  static ColorSpec parse(std::string_view text);

  [[nodiscard]] int colors() const { return static_cast<int>(defects_.size()); }
  [[nodiscard]] int bound(int color) const { return defects_.at(static_cast<std::size_t>(color)); }
  [[nodiscard]] const std::vector<int>& defects() const { return defects_; }
  [[nodiscard]] std::string str() const;
  /// Componentwise >=, same length.
  [[nodiscard]] bool dominates(const ColorSpec& other) const;

  friend bool operator==(const ColorSpec&, const ColorSpec&) = default;

 private:
  std::vector<int> defects_;
};

/// Precolored vertex. `budget` caps the number of same-colored neighbors in the graph being solved;
/// budget 0 encodes "colored i with no neighbor colored i".
struct Assumption {
  VertexId vertex = -1;
  int color = 0;
  std::optional<int> budget;

  friend bool operator==(const Assumption&, const Assumption&) = default;
};

/// `v=c[:b]` with c 1-based; `v` may be a terminal name or a numeric id.
Assumption parse_assumption(std::string_view text, const Graph& g);
/// Comma separated list of assumptions.
std::vector<Assumption> parse_assumptions(std::string_view text, const Graph& g);
std::string format_assumption(const Assumption& a, const Graph& g);

using Coloring = std::map<VertexId, int>;

struct ColoringCheck {
  bool ok = true;
  VertexId vertex = -1;  ///< first violating vertex by id
  std::string reason;
};

/// Throws std::invalid_argument when `c` is not total on V(g).
ColoringCheck check_coloring(const Graph& g, const ColorSpec& spec, const Coloring& c,
                             const std::vector<Assumption>& assumptions = {});
/// Number of neighbors of v sharing its color.
int defect_of(const Graph& g, const Coloring& c, VertexId v);

/// Extra per-vertex restriction used by pattern queries: when `v` takes `color`,
/// its defect must lie in [min_defect, max_defect].
struct DefectWindow {
  VertexId vertex = -1;
  int color = 0;
  int min_defect = 0;
  int max_defect = 0;
};

struct SolveOptions {
  std::optional<std::chrono::milliseconds> budget;
  int threads = 1;
  /// Extra restrictions beyond the assumptions (conjunctive).
  std::vector<DefectWindow> windows;
  /// Colors each listed vertex may take (bitmask); vertices absent are unrestricted.
  std::map<VertexId, std::uint32_t> allowed;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;
};

struct SolveResult {
  enum class Status { sat, unsat, timeout };
  Status status = Status::unsat;
  Coloring certificate;
  SolveStats stats;

  [[nodiscard]] bool sat() const { return status == Status::sat; }
  [[nodiscard]] bool unsat() const { return status == Status::unsat; }
  [[nodiscard]] bool timed_out() const { return status == Status::timeout; }
};

std::string to_string(SolveResult::Status s);

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive backtracking with per-color residual-budget propagation.
SolveResult solve(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions = {},
                  const SolveOptions& options = {});

/// Reference enumeration over all l^|V| assignments (guarded at 1e8).
SolveResult brute_force_solve(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions = {});

/// Visits every valid coloring (full enumeration, same guard); stop early by returning false.
void for_each_coloring(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions,
                       const std::function<bool(const Coloring&)>& visit);

/// (color, defect) pair, both as in the API (color 0-based).
using VertexState = std::pair<int, int>;

struct ForcedStates {
  std::set<VertexState> states;
  bool complete = true;  ///< false if some sub-query timed out
};

/// Exact set of states the query vertex takes over all valid colorings.
ForcedStates forced_states(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions,
                           VertexId query, const SolveOptions& options = {});
/// Oracle: states collected from full enumeration.
std::set<VertexState> forced_states_brute_force(const Graph& g, const ColorSpec& spec,
                                                const std::vector<Assumption>& assumptions, VertexId query);

/// Deletion-minimal non-colorable subgraph. Throws PreconditionError if g is colorable.
Graph minimize_noncolorable(const Graph& g, const ColorSpec& spec, const SolveOptions& options = {});

/// True iff g is non-colorable and every single vertex or edge deletion is colorable.
bool is_deletion_minimal_noncolorable(const Graph& g, const ColorSpec& spec, const SolveOptions& options = {});

/// DIMACS CNF with one variable per (vertex, color); convenience export only.
std::string to_cnf(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions = {});

}  // namespace defcol
