#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "defcol/gadgets.hpp"
#include "defcol/graph.hpp"
#include "defcol/manifest.hpp"
#include "defcol/solver.hpp"
#include "defcol/verify.hpp"

namespace defcol {

/// A gadget whose guarantee failed verification.
class GadgetRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AttachMode { path, pendant };

std::string to_string(AttachMode m);
AttachMode parse_attach_mode(std::string_view text);

/// Minimal non-colorable graph with its 2-vertex x replaced by either the path u x1 x2 x3 v (attach at x2)
/// or two pendants u' ~ u and v' ~ v (attach at u', v'). Terminals u, v and the attach points are named.
struct ForcingGadget {
  Graph graph;
  AttachMode mode = AttachMode::pendant;
  ColorSpec spec;
  Property guarantee;

  [[nodiscard]] std::vector<std::string> attach_terminals() const;
  [[nodiscard]] Gadget as_gadget() const;
};

/// Checks minimality, the distinct-saturated-colors property of minimal - x, then builds and verifies the
/// guarantee. Path mode needs a spec (k,0) and guarantees x2 is always colored 1 with defect 1.
/// x defaults to the smallest-id vertex of degree 2.
ForcingGadget derive_forcing_gadget(const Graph& minimal, const ColorSpec& spec, AttachMode mode,
                                    std::optional<VertexId> x = std::nullopt, const SolveOptions& options = {});

/// Rebuilds a ForcingGadget from a graph carrying the terminals written by derive_forcing_gadget
/// (x2, or u' and v') and re-verifies its guarantee.
ForcingGadget load_forcing_gadget(const Graph& g, const ColorSpec& spec, AttachMode mode,
                                  const SolveOptions& options = {});

/// Test-mock discovery: a deletion-minimal non-colorable graph with a 2-vertex on <= max_vertices vertices,
/// obtained from search_gadget by minimizing each non-colorable candidate.
std::optional<Graph> find_minimal_with_2vertex(const ColorSpec& spec, int max_vertices,
                                               const SearchOptions& options = {});

struct TraceEntry {
  int copy = 0;
  bool edge = false;
  VertexId s = -1;  ///< the input vertex, or the first endpoint of the input edge
  VertexId t = -1;  ///< second endpoint when edge
  VertexId first = 0;
  VertexId last = 0;  ///< inclusive id range allocated to the copy

  [[nodiscard]] std::string str() const;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct ReductionOutput {
  Graph graph;
  std::vector<TraceEntry> trace;

  /// Trace entry whose id range contains v; nullopt for input vertices.
  [[nodiscard]] std::optional<TraceEntry> origin(VertexId v) const;
};

/// One `copy <idx> for <vertex s|edge s-t> -> vertices <first>-<last>` line per copy.
std::string format_trace(const std::vector<TraceEntry>& trace);
std::vector<TraceEntry> parse_trace(std::string_view text);

/// k-1 copies per input vertex s, each with the edge x2 - s. Output (k,0)-colorable iff input (1,0)-colorable.
ReductionOutput reduce_k0(const Graph& instance, int k, const ForcingGadget& fg);

/// Two copies of a (1,1) pendant gadget plus a and b; a ~ both u', b ~ both v'. Manifest is verified.
Gadget build_E_ab(const ForcingGadget& g_pendant, const SolveOptions& options = {});
/// Same construction on any graph with terminals u', v', without verification.
Gadget assemble_E_ab(const Graph& pendant_graph);
/// Wraps an existing E_ab graph (terminals a, b) with its manifest and verifies it.
Gadget load_E_ab(const Graph& g, const SolveOptions& options = {});

/// Every edge pq replaced by a copy of E_ab with a identified to p and b to q.
/// Input (1,1)-colorable iff output (1,1)-colorable.
ReductionOutput reduce_11(const Graph& instance, const Gadget& e_ab);

/// t = min(k-1, j) copies per input vertex s, with u' and v' both adjacent to s.
/// Input (k-t, j-t)-colorable iff output (k,j)-colorable. Needs 1 <= j <= k and k >= 2.
ReductionOutput reduce_kj(const Graph& instance, int k, int j, const ForcingGadget& fg);
int reduce_kj_t(int k, int j);

/// One copy of E'' per edge, with ab identified to the edge. 3-colorable input gives a (0,0,0)-colorable
/// output; otherwise the output is not (k,k,1)-colorable.
ReductionOutput reduce_3col(const Graph& instance, int k, const Gadget& epp);

}  // namespace defcol
