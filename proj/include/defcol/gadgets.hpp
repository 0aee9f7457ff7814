#pragma once

#include <map>
#include <string>
#include <vector>

#include "defcol/graph.hpp"
#include "defcol/manifest.hpp"

namespace defcol {

struct Gadget {
  std::string name;
  Graph graph;
  Manifest manifest;
  std::string provenance;
};

/// Directory holding gadgets/ and scripts/: $DEFCOL_DATA_DIR, else the source tree's data/.
std::string data_dir();

/// Reads data_dir()/gadgets/<file>; the file must carry a `# provenance:` comment line.
Gadget load_transcription(const std::string& file);

/// Expands a parameterized template (see data/gadgets/E.template) with the symbol N bound to `n`.
/// Every vertex becomes a terminal named after its base and index (x[3] -> x3).
Graph expand_template(std::string_view text, int n);

/// Disjoint copy of `part` inside `host` with fresh ids above host.max_id().
/// Terminals are carried over as `prefix + name`. Returns the id map part -> host.
std::map<VertexId, VertexId> add_copy(Graph& host, const Graph& part, const std::string& prefix);

/// K_{2,k+j+1} with x, y on the small side.
Gadget gadget_H_kj(int k, int j);
/// Vertex u, a star v1..v_{m+2} centred at v1 (m = max(k,j)), and a copy of H_{k,j} between u and each v_i.
Gadget gadget_g4(int k, int j);

struct G5Family {
  Gadget H;
  Gadget S;
  Gadget G;
};
G5Family gadget_g5();

struct G7Family {
  Gadget T;
  Gadget S;
  Gadget Hz;
  Gadget G;
};
G7Family gadget_g7();

struct EFamily {
  int k = 1;
  int N = 0;  ///< top path index 3k+3+t
  Gadget E;
  Gadget Eprime;
  Gadget Epp;
};
EFamily gadget_E_family(int k);

/// The (0,0,0)-coloring pattern of one copy of E under the given terminal prefix.
std::vector<Atom> E_parity_pattern(int N, const std::string& prefix);

}  // namespace defcol
