#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "defcol/analysis.hpp"
#include "defcol/gadgets.hpp"
#include "defcol/graph.hpp"
#include "defcol/manifest.hpp"
#include "defcol/reductions.hpp"
#include "defcol/replay.hpp"
#include "defcol/solver.hpp"
#include "defcol/verify.hpp"

namespace py = pybind11;
using namespace defcol;

namespace {

SolveOptions options_from(std::optional<long> timeout_ms, int threads) {
  SolveOptions o;
  if (timeout_ms) o.budget = std::chrono::milliseconds(*timeout_ms);
  o.threads = threads;
  return o;
}

py::dict result_dict(const SolveResult& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["coloring"] = r.certificate;
  d["nodes"] = r.stats.nodes;
  return d;
}

std::vector<std::pair<std::string, std::string>> outcomes(const std::vector<PropertyResult>& rs) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& r : rs) out.emplace_back(to_string(r.outcome), format_property(r.property));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact defective coloring workbench";

  py::class_<Graph>(m, "Graph")
      .def(py::init<>())
      .def_static("parse", [](const std::string& text) { return parse_graph(text); })
      .def_static("read", &read_graph_file)
      .def("serialize", [](const Graph& g) { return serialize_graph(g); })
      .def("add_vertex", &Graph::add_vertex)
      .def("add_edge", &Graph::add_edge)
      .def("set_terminal", &Graph::set_terminal)
      .def("terminal", &Graph::terminal)
      .def("vertices", &Graph::vertices)
      .def("edges", &Graph::edges)
      .def("degree", &Graph::degree)
      .def_property_readonly("terminals", &Graph::terminals)
      .def("__len__", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("name", &Graph::name);

  auto named_mod = m.def_submodule("named", "small named graphs");
  named_mod.def("path", &named::path);
  named_mod.def("cycle", &named::cycle);
  named_mod.def("complete", &named::complete);
  named_mod.def("complete_bipartite", &named::complete_bipartite);
  named_mod.def("star", &named::star);
  named_mod.def("petersen", &named::petersen);
  named_mod.def("icosahedron", &named::icosahedron);

  m.def(
      "solve",
      [](const Graph& g, const std::string& spec, const std::string& assume, std::optional<long> timeout_ms,
         int threads) {
        return result_dict(solve(g, ColorSpec::parse(spec), assume.empty() ? std::vector<Assumption>{}
                                                                            : parse_assumptions(assume, g),
                                 options_from(timeout_ms, threads)));
      },
      py::arg("graph"), py::arg("spec"), py::arg("assume") = "", py::arg("timeout_ms") = py::none(),
      py::arg("threads") = 1);
  m.def(
      "brute_force_solve",
      [](const Graph& g, const std::string& spec) { return result_dict(brute_force_solve(g, ColorSpec::parse(spec))); },
      py::arg("graph"), py::arg("spec"));
  m.def(
      "forced_states",
      [](const Graph& g, const std::string& spec, const std::string& at, const std::string& assume) {
        const auto as = assume.empty() ? std::vector<Assumption>{} : parse_assumptions(assume, g);
        std::set<std::pair<int, int>> out;
        for (const auto& [c, d] : forced_states(g, ColorSpec::parse(spec), as, g.resolve(at)).states)
          out.emplace(c + 1, d);
        return out;
      },
      py::arg("graph"), py::arg("spec"), py::arg("at"), py::arg("assume") = "");
  m.def("minimize_noncolorable",
        [](const Graph& g, const std::string& spec) { return minimize_noncolorable(g, ColorSpec::parse(spec)); });

  m.def("girth", [](const Graph& g) { return girth(g).length; });
  m.def("mad", [](const Graph& g) { return mad(g).value.str(); });
  m.def("degeneracy", [](const Graph& g) { return degeneracy(g).value; });
  m.def("n3", &n3);
  m.def("is_planar", &is_planar);

  py::class_<Gadget>(m, "Gadget")
      .def_readonly("name", &Gadget::name)
      .def_readonly("graph", &Gadget::graph)
      .def_property_readonly("manifest", [](const Gadget& g) { return serialize_manifest(g.manifest); })
      .def("verify", [](const Gadget& g) { return outcomes(verify_gadget(g)); });

  m.def("gadget_H", &gadget_H_kj, py::arg("k"), py::arg("j"));
  m.def("gadget_g4", &gadget_g4, py::arg("k"), py::arg("j"));
  m.def("gadget_g5", []() {
    auto f = gadget_g5();
    return std::map<std::string, Gadget>{{"H", f.H}, {"S", f.S}, {"G", f.G}};
  });
  m.def("gadget_g7", []() {
    auto f = gadget_g7();
    return std::map<std::string, Gadget>{{"T", f.T}, {"S", f.S}, {"Hz", f.Hz}, {"G", f.G}};
  });
  m.def(
      "gadget_E_family",
      [](int k) {
        auto f = gadget_E_family(k);
        return std::map<std::string, Gadget>{{"E", f.E}, {"Eprime", f.Eprime}, {"Epp", f.Epp}};
      },
      py::arg("k"));

  m.def(
      "verify_manifest",
      [](const Graph& g, const std::string& manifest) { return outcomes(verify_manifest(g, parse_manifest(manifest))); },
      py::arg("graph"), py::arg("manifest"));
  m.def("replay", [](const std::string& path) {
    const auto r = replay_proof(read_replay_file(path));
    py::dict d;
    d["verified"] = r.verified;
    d["steps"] = r.steps_checked;
    d["unchecked"] = r.unchecked;
    d["failure"] = r.failure;
    return d;
  });

  py::class_<ForcingGadget>(m, "ForcingGadget")
      .def_readonly("graph", &ForcingGadget::graph)
      .def_property_readonly("mode", [](const ForcingGadget& f) { return to_string(f.mode); })
      .def_property_readonly("guarantee", [](const ForcingGadget& f) { return format_property(f.guarantee); });
  py::class_<ReductionOutput>(m, "ReductionOutput")
      .def_readonly("graph", &ReductionOutput::graph)
      .def_property_readonly("trace", [](const ReductionOutput& r) { return format_trace(r.trace); });

  m.def(
      "find_minimal_with_2vertex",
      [](const std::string& spec, int max_vertices) {
        return find_minimal_with_2vertex(ColorSpec::parse(spec), max_vertices);
      },
      py::arg("spec"), py::arg("max_vertices") = 10);
  m.def(
      "derive_forcing_gadget",
      [](const Graph& g, const std::string& spec, const std::string& mode) {
        return derive_forcing_gadget(g, ColorSpec::parse(spec), parse_attach_mode(mode));
      },
      py::arg("minimal"), py::arg("spec"), py::arg("mode"));
  m.def("build_E_ab", [](const ForcingGadget& f) { return build_E_ab(f); });
  m.def("reduce_k0", &reduce_k0, py::arg("instance"), py::arg("k"), py::arg("gadget"));
  m.def("reduce_11", &reduce_11, py::arg("instance"), py::arg("e_ab"));
  m.def("reduce_kj", &reduce_kj, py::arg("instance"), py::arg("k"), py::arg("j"), py::arg("gadget"));
  m.def("reduce_3col", &reduce_3col, py::arg("instance"), py::arg("k"), py::arg("epp"));

  py::register_exception<GadgetRejected>(m, "GadgetRejected");
  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
}
