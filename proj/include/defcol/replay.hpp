#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defcol/gadgets.hpp"
#include "defcol/manifest.hpp"
#include "defcol/solver.hpp"

namespace defcol {

/// One inference of a replayed proof. Every step runs exact solver queries on the subgraph induced
/// by its region, together with all facts established so far for vertices of that region.
///
///   step forced on R [assume A] [at v (states (c,d)... | colors c,...)]
///       records, for every vertex of R, the colors it can still take; optionally checks v's states
///   step unextendable on R [assume A]
///       no coloring exists: closes the current branch
///   step cover on R [assume A] : D1 | D2 | ...
///       every coloring satisfies some conjunction Di; followed by one `case Di [symmetric]` ... `end` per Di
///   step count v1,v2 color c over P1/,P2/,... choose Pk/
///       pigeonhole over copies sharing only v1,v2,...: some copy holds no c-colored neighbor of them
///       outside the shared vertices; the chosen copy stands for it
///
/// A region R is a comma list of terminal names, numeric ids, name prefixes ending in '/', or `all`.
/// A budget in `assume v=c:b` must follow from the facts: from d_c or a premise budget minus the
/// c-colored neighbors of v known outside R, or from a clean copy containing R.
struct ReplayStep;

struct ReplayCase {
  std::vector<Atom> atoms;
  bool symmetric = false;
  std::vector<ReplayStep> steps;
  std::size_t line = 0;
};

struct ReplayStep {
  enum class Kind { forced, unextendable, cover, count };
  Kind kind = Kind::forced;
  std::size_t line = 0;
  std::string text;
  std::string region;
  std::vector<NamedAssumption> assume;
  std::string at;
  std::set<VertexState> states;
  std::vector<int> colors;
  std::vector<std::vector<Atom>> disjuncts;
  std::vector<ReplayCase> cases;
  std::vector<std::string> shared;
  int color = 0;
  std::vector<std::string> copies;
  std::string choose;
};

struct ReplayScript {
  std::string name;
  std::string gadget;
  ColorSpec spec;
  std::vector<NamedAssumption> premise_budgets;
  std::vector<Atom> premise;
  std::vector<ReplayStep> steps;
};

ReplayScript parse_replay(std::string_view text);
ReplayScript read_replay_file(const std::string& path);

struct ReplayLogEntry {
  std::size_t line = 0;
  int depth = 0;
  std::string text;
  bool ok = true;
  std::string detail;
};

struct ReplayResult {
  bool verified = false;
  bool closed = false;        ///< the premise was driven to a contradiction in every branch
  int steps_checked = 0;
  int unchecked = 0;          ///< symmetric cases and wlog copy choices taken on trust
  std::optional<std::size_t> failed_line;
  std::string failure;
  std::optional<Coloring> evidence;
  std::vector<ReplayLogEntry> log;
};

/// Gadgets addressable from a script's `gadget` line: H<k><j>, G4_<k><j>, H31, S_zrst, G5, T, S7, Hz,
/// G7, E_k<k>, Eprime_k<k>, Epp_k<k>.
Gadget gadget_by_id(const std::string& id);

ReplayResult replay_proof(const ReplayScript& script, const Graph& g, const SolveOptions& options = {});
/// Replays against the script's own gadget.
ReplayResult replay_proof(const ReplayScript& script, const SolveOptions& options = {});

}  // namespace defcol
