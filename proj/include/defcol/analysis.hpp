#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "defcol/graph.hpp"
#include "defcol/rational.hpp"

namespace defcol {

struct GirthResult {
  std::optional<int> length;     ///< nullopt for forests
  std::vector<VertexId> cycle;   ///< a shortest cycle realizing `length`
};

/// Shortest cycle by BFS from every vertex.
GirthResult girth(const Graph& g);
/// True iff `cycle` is a simple cycle of g (length >= 3, consecutive and closing edges present).
bool is_cycle_of(const Graph& g, const std::vector<VertexId>& cycle);

struct MadResult {
  Rational value;                 ///< max over nonempty subgraphs of 2|E(H)|/|V(H)|
  std::vector<VertexId> densest;  ///< vertex set of a subgraph attaining it
};

/// Exact maximum average degree via Dinkelbach iteration over min-cut densest-subgraph tests.
MadResult mad(const Graph& g);
/// Oracle: enumerates every vertex subset. Only for |V| <= 20.
Rational mad_brute_force(const Graph& g);

struct DegeneracyResult {
  int value = 0;
  std::vector<VertexId> order;  ///< elimination order; each vertex has current degree <= value when removed
};

DegeneracyResult degeneracy(const Graph& g);
/// Replays `order` and checks no removed vertex exceeds `k` remaining neighbors.
bool check_elimination_order(const Graph& g, const std::vector<VertexId>& order, int k);

/// Number of vertices of degree at least 3.
int n3(const Graph& g);

enum class OrderVerdict { precedes, succeeds, incomparable, equal };
std::string to_string(OrderVerdict v);

/// G1 < G2 iff (|V1| < |V2| and n3(G1) <= n3(G2)) or n3(G1) < n3(G2).
/// `equal` is reported when neither strictly precedes and both size and n3 coincide.
OrderVerdict compare_order(const Graph& g1, const Graph& g2);

struct PlanarityResult {
  bool planar = false;
  /// Clockwise neighbor order per vertex when planar.
  std::vector<std::pair<VertexId, std::vector<VertexId>>> rotation;
  /// Edges of a K5 or K3,3 subdivision when not planar.
  std::vector<std::pair<VertexId, VertexId>> kuratowski;
};

PlanarityResult planarity(const Graph& g);
inline bool is_planar(const Graph& g) { return planarity(g).planar; }
/// Euler check of a rotation system: V - E + F == 1 + components.
bool check_rotation_system(const Graph& g, const PlanarityResult& r);
/// Checks the edge set is a subdivision of K5 or K3,3 lying in g.
bool check_kuratowski(const Graph& g, const std::vector<std::pair<VertexId, VertexId>>& edges);

struct PreconditionViolation {
  VertexId vertex = -1;
  std::string reason;
};

/// Charge = degree; every 5+-vertex sends 1/3 to each adjacent 3-vertex. Returns the minimum final
/// charge, or the first vertex (by id) that is a 2^- vertex or a 3-vertex with three 4^- neighbors.
std::variant<Rational, PreconditionViolation> discharge_audit(const Graph& g);

}  // namespace defcol
