// defcol: batch front end for the defective coloring workbench.
// Exit codes: 0 sat/verified, 1 unsat/refuted, 2 usage or I/O error, 3 timeout.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "defcol/analysis.hpp"
#include "defcol/gadgets.hpp"
#include "defcol/graph.hpp"
#include "defcol/manifest.hpp"
#include "defcol/reductions.hpp"
#include "defcol/replay.hpp"
#include "defcol/solver.hpp"
#include "defcol/text.hpp"
#include "defcol/verify.hpp"

namespace fs = std::filesystem;
using namespace defcol;

namespace {

constexpr int kOk = 0, kNo = 1, kUsage = 2, kTimeout = 3;

SolveOptions solve_options(std::optional<long> timeout_ms, int threads) {
  SolveOptions o;
  if (timeout_ms) o.budget = std::chrono::milliseconds(*timeout_ms);
  o.threads = std::max(1, threads);
  return o;
}

void print_certificate(const Graph& g, const Coloring& c) {
  for (const auto& [v, color] : c) std::cout << "v " << v << ' ' << color + 1 << ' ' << defect_of(g, c, v) << '\n';
}

void write_or_print(const std::optional<std::string>& path, const std::string& text) {
  if (path)
    write_text_file(*path, text);
  else
    std::cout << text;
}

int cmd_analyze(const std::string& file) {
  const Graph g = read_graph_file(file);
  const auto gr = girth(g);
  std::cout << "vertices " << g.vertex_count() << '\n'
            << "edges " << g.edge_count() << '\n'
            << "girth " << (gr.length ? std::to_string(*gr.length) : "none") << '\n'
            << "mad " << mad(g).value << '\n'
            << "degeneracy " << degeneracy(g).value << '\n'
            << "n3 " << n3(g) << '\n'
            << "planar " << (is_planar(g) ? "yes" : "no") << '\n';
  return kOk;
}

struct SolveArgs {
  std::string spec;
  std::vector<std::string> assume;
  std::optional<std::string> forced;
  std::optional<long> timeout;
  int parallel = 1;
  std::string file;
};

int cmd_solve(const SolveArgs& a) {
  const Graph g = read_graph_file(a.file);
  const ColorSpec spec = ColorSpec::parse(a.spec);
  std::vector<Assumption> as;
  for (const auto& s : a.assume)
    for (const auto& x : parse_assumptions(s, g)) as.push_back(x);
  const auto opts = solve_options(a.timeout, a.parallel);
  if (a.forced) {
    const VertexId q = g.resolve(*a.forced);
    const auto fs = forced_states(g, spec, as, q, opts);
    std::cout << "forced " << *a.forced << '\n';
    for (const auto& [c, d] : fs.states) std::cout << "state (" << c + 1 << ',' << d << ")\n";
    if (!fs.complete) {
      std::cout << "status timeout\n";
      return kTimeout;
    }
    std::cout << "status " << (fs.states.empty() ? "unsat" : "sat") << '\n';
    return fs.states.empty() ? kNo : kOk;
  }
  const auto r = solve(g, spec, as, opts);
  std::cout << "status " << to_string(r.status) << '\n';
  if (r.sat()) print_certificate(g, r.certificate);
  return r.sat() ? kOk : r.unsat() ? kNo : kTimeout;
}

void emit_gadget(const Gadget& gd, const fs::path& dir) {
  fs::create_directories(dir);
  const auto base = dir / gd.name;
  write_graph_file(base.string() + ".graph", gd.graph);
  write_text_file(base.string() + ".manifest", serialize_manifest(gd.manifest));
  std::cout << "wrote " << base.string() << ".graph " << base.string() << ".manifest\n";
}

int cmd_gen(const std::string& family, int k, int j, const std::string& out) {
  std::vector<Gadget> gs;
  if (family == "g4") {
    gs.push_back(gadget_g4(k, j));
  } else if (family == "H") {
    gs.push_back(gadget_H_kj(k, j));
  } else if (family == "g5") {
    auto f = gadget_g5();
    gs = {f.H, f.S, f.G};
  } else if (family == "g7") {
    auto f = gadget_g7();
    gs = {f.T, f.S, f.Hz, f.G};
  } else if (family == "E" || family == "Eprime" || family == "Epp") {
    auto f = gadget_E_family(k);
    gs.push_back(family == "E" ? f.E : family == "Eprime" ? f.Eprime : f.Epp);
  } else {
    throw CLI::ValidationError("--family", "unknown family " + family);
  }
  for (const auto& g : gs) emit_gadget(g, out);
  return kOk;
}

int cmd_verify(const std::string& graph_file, const std::string& manifest_file, const std::optional<std::string>& replay,
               std::optional<long> timeout) {
  const Graph g = read_graph_file(graph_file);
  const Manifest m = parse_manifest(read_text_file(manifest_file));
  check_manifest_terminals(m, g);
  const auto opts = solve_options(timeout, 1);
  bool refuted = false, timed_out = false;
  for (const auto& r : verify_manifest(g, m, opts)) {
    std::cout << to_string(r.outcome) << ' ' << format_property(r.property);
    if (!r.detail.empty()) std::cout << " # " << r.detail;
    std::cout << '\n';
    if (r.coloring && r.outcome == Outcome::refuted) print_certificate(g, *r.coloring);
    refuted |= r.outcome == Outcome::refuted;
    timed_out |= r.outcome == Outcome::timeout;
  }
  if (replay) {
    const auto script = read_replay_file(*replay);
    const auto rr = replay_proof(script, g, opts);
    if (rr.verified) {
      std::cout << "replay verified steps " << rr.steps_checked << " unchecked " << rr.unchecked << '\n';
    } else {
      std::cout << "replay failed line " << rr.failed_line.value_or(0) << " # " << rr.failure << '\n';
      if (rr.evidence) print_certificate(g, *rr.evidence);
      refuted = true;
    }
  }
  return refuted ? kNo : timed_out ? kTimeout : kOk;
}

struct ReduceArgs {
  std::string which;
  int k = 2;
  int j = 1;
  std::optional<std::string> gadget;
  std::string input;
  std::optional<std::string> out;
  std::optional<std::string> trace;
};

bool has_terminals(const Graph& g, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (!g.terminal(n)) return false;
  return true;
}

/// A prepared gadget file (terminals present) is re-verified; otherwise the file is treated as a minimal graph.
ForcingGadget forcing_from(const Graph& g, const ColorSpec& spec, AttachMode mode) {
  const bool prepared = mode == AttachMode::path ? has_terminals(g, {"x2"}) : has_terminals(g, {"u'", "v'"});
  return prepared ? load_forcing_gadget(g, spec, mode) : derive_forcing_gadget(g, spec, mode);
}

int cmd_reduce(const ReduceArgs& a) {
  const Graph input = read_graph_file(a.input);
  auto need_gadget = [&]() {
    if (!a.gadget) throw CLI::RequiredError("--gadget");
    return read_graph_file(*a.gadget);
  };
  ReductionOutput r;
  if (a.which == "k0") {
    r = reduce_k0(input, a.k, forcing_from(need_gadget(), ColorSpec({a.k, 0}), AttachMode::path));
  } else if (a.which == "kj") {
    r = reduce_kj(input, a.k, a.j, forcing_from(need_gadget(), ColorSpec({a.k, a.j}), AttachMode::pendant));
  } else if (a.which == "11") {
    const Graph g = need_gadget();
    const Gadget e = has_terminals(g, {"a", "b"}) ? load_E_ab(g)
                                                  : build_E_ab(forcing_from(g, ColorSpec({1, 1}), AttachMode::pendant));
    r = reduce_11(input, e);
  } else if (a.which == "3col") {
    Gadget epp = gadget_E_family(a.k).Epp;
    if (a.gadget) epp.graph = read_graph_file(*a.gadget);
    r = reduce_3col(input, a.k, epp);
  } else {
    throw CLI::ValidationError("--which", "unknown reduction " + a.which);
  }
  write_or_print(a.out, serialize_graph(r.graph));
  const auto trace_path = a.trace ? a.trace : a.out ? std::optional<std::string>(*a.out + ".trace") : std::nullopt;
  if (trace_path)
    write_text_file(*trace_path, format_trace(r.trace));
  else
    for (const auto& e : r.trace) std::cout << "# " << e.str() << '\n';
  return kOk;
}

int cmd_minimize(const std::string& spec, const std::string& file, const std::optional<std::string>& out,
                 std::optional<long> timeout) {
  const Graph g = read_graph_file(file);
  const auto opts = solve_options(timeout, 1);
  const auto r = solve(g, ColorSpec::parse(spec), {}, opts);
  if (r.timed_out()) {
    std::cout << "status timeout\n";
    return kTimeout;
  }
  if (r.sat()) {
    std::cout << "status sat\n";
    print_certificate(g, r.certificate);
    return kNo;
  }
  write_or_print(out, serialize_graph(minimize_noncolorable(g, ColorSpec::parse(spec), opts)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"defcol: exact defective coloring workbench"};
  app.require_subcommand(1);
  std::optional<long> timeout;

  std::string file;
  auto* analyze = app.add_subcommand("analyze", "girth, mad, degeneracy, n3, planarity");
  analyze->add_option("FILE", file)->required();

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "decide colorability or list forced states");
  solve_cmd->add_option("--spec", sa.spec, "defect bounds d1,d2,...")->required();
  solve_cmd->add_option("--assume", sa.assume, "precoloring v=c[:b], repeatable");
  solve_cmd->add_option("--forced", sa.forced, "report the states this vertex can take");
  solve_cmd->add_option("--timeout", sa.timeout, "budget in milliseconds");
  solve_cmd->add_option("--parallel", sa.parallel, "worker threads");
  solve_cmd->add_option("FILE", sa.file)->required();

  std::string family, out_dir = ".";
  int gk = 1, gj = 0;
  auto* gen = app.add_subcommand("gen", "write a gadget family as graph and manifest files");
  gen->add_option("--family", family)->required()->check(CLI::IsMember({"g4", "g5", "g7", "H", "E", "Eprime", "Epp"}));
  gen->add_option("--k", gk);
  gen->add_option("--j", gj);
  gen->add_option("--out", out_dir, "output directory");

  std::string vgraph, vmanifest;
  std::optional<std::string> replay;
  auto* verify = app.add_subcommand("verify", "check every manifest property");
  verify->add_option("GRAPH", vgraph)->required();
  verify->add_option("MANIFEST", vmanifest)->required();
  verify->add_option("--replay", replay, "replay script checked against GRAPH");
  verify->add_option("--timeout", timeout, "per-check budget in milliseconds");

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "apply a reduction, writing the graph and its trace");
  reduce->add_option("--which", ra.which)->required()->check(CLI::IsMember({"k0", "11", "kj", "3col"}));
  reduce->add_option("--k", ra.k);
  reduce->add_option("--j", ra.j);
  reduce->add_option("--gadget", ra.gadget, "forcing gadget, minimal graph, E_ab or E'' file");
  reduce->add_option("--out", ra.out, "output graph file (trace goes to FILE.trace)");
  reduce->add_option("--trace", ra.trace, "trace file");
  reduce->add_option("INPUT", ra.input)->required();

  std::string mspec, mfile;
  std::optional<std::string> mout;
  auto* minimize = app.add_subcommand("minimize", "deletion-minimal non-colorable subgraph");
  minimize->add_option("--spec", mspec)->required();
  minimize->add_option("--out", mout);
  minimize->add_option("--timeout", timeout);
  minimize->add_option("FILE", mfile)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(file);
    if (*solve_cmd) return cmd_solve(sa);
    if (*gen) return cmd_gen(family, gk, gj, out_dir);
    if (*verify) return cmd_verify(vgraph, vmanifest, replay, timeout);
    if (*reduce) return cmd_reduce(ra);
    if (*minimize) return cmd_minimize(mspec, mfile, mout, timeout);
  } catch (const GadgetRejected& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return kNo;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
