#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "defcol/gadgets.hpp"
#include "defcol/manifest.hpp"
#include "defcol/solver.hpp"

namespace defcol {

enum class Outcome { verified, refuted, timeout, unchecked };
std::string to_string(Outcome o);

struct PropertyResult {
  Property property;
  Outcome outcome = Outcome::unchecked;
  std::string detail;
  /// Refutations: a valid coloring violating the property. exists: the witness.
  std::optional<Coloring> coloring;
  SolveStats stats;
};

/// True iff the total coloring c satisfies every atom; defects are read off c itself.
bool pattern_holds(const Graph& g, const ColorSpec& spec, const Coloring& c, const std::vector<Atom>& atoms);

/// A valid coloring extending `assumptions` and satisfying all atoms, found by enumerating color
/// classes of the mentioned terminals and solving each case exactly.
SolveResult solve_pattern(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions,
                          const std::vector<Atom>& atoms, const SolveOptions& options = {});

PropertyResult verify_property(const Graph& g, const Property& p, const SolveOptions& options = {});
std::vector<PropertyResult> verify_manifest(const Graph& g, const Manifest& m, const SolveOptions& options = {});
inline std::vector<PropertyResult> verify_gadget(const Gadget& gd, const SolveOptions& options = {}) {
  return verify_manifest(gd.graph, gd.manifest, options);
}

/// Oracle: decides the coloring properties by full enumeration (small graphs only).
PropertyResult verify_property_brute_force(const Graph& g, const Property& p);

struct SearchOptions {
  std::uint64_t seed = 1;
  int exhaustive_up_to = 6;      ///< every labelled graph up to this order is tried
  int random_attempts = 20000;   ///< random graphs per order above that
  std::optional<std::chrono::milliseconds> per_check_budget;
  /// Optional rewrite of each candidate before it is checked (e.g. minimization); nullopt skips it.
  std::function<std::optional<Graph>(const Graph&)> refine;
};

/// Smallest-first search for a graph on <= max_vertices vertices whose terminals, named as in p
/// and placed on vertices 0,1,..., satisfy p under its spec. Returns nullopt when nothing is found.
std::optional<Gadget> search_gadget(const Property& p, int max_vertices, const SearchOptions& options = {});

}  // namespace defcol
