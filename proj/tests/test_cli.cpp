#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "defcol/graph.hpp"
#include "defcol/manifest.hpp"
#include "defcol/reductions.hpp"
#include "defcol/solver.hpp"
#include "defcol/text.hpp"

using namespace defcol;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DEFCOL_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("defcol_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  [[nodiscard]] std::string file(const std::string& name) const { return (path / name).string(); }
};

Coloring certificate_of(const std::string& out) {
  Coloring c;
  std::istringstream in(out);
  std::string tag;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    VertexId v;
    int color, defect;
    if (ls >> tag && tag == "v" && ls >> v >> color >> defect) c[v] = color - 1;
  }
  return c;
}

}  // namespace

TEST_CASE("gen g4 then solve reports unsat") {
  TempDir t;
  const auto gen = run("gen --family g4 --k 1 --j 0 --out " + t.path.string());
  CHECK(gen.code == 0);
  const std::string graph = t.file("G4_10.graph");
  REQUIRE(fs::exists(graph));
  CHECK_NOTHROW(parse_manifest(read_text_file(t.file("G4_10.manifest"))));
  const auto r = run("solve --spec 1,0 " + graph);
  CHECK(r.code == 1);
  CHECK(r.out.rfind("status unsat", 0) == 0);
}

TEST_CASE("solve prints a re-checkable certificate") {
  TempDir t;
  write_graph_file(t.file("c4.graph"), named::cycle(4));
  const auto r = run("solve --spec 0,0 " + t.file("c4.graph"));
  CHECK(r.code == 0);
  const Coloring c = certificate_of(r.out);
  CHECK(c.size() == 4);
  CHECK(check_coloring(named::cycle(4), ColorSpec({0, 0}), c).ok);
  // byte-identical verdicts on repeated runs
  CHECK(run("solve --spec 0,0 " + t.file("c4.graph")).out == r.out);

  const auto f = run("solve --spec 0,0 --assume 0=2 --forced 1 " + t.file("c4.graph"));
  CHECK(f.code == 0);
  CHECK(f.out.find("state (1,0)") != std::string::npos);
  CHECK(f.out.find("state (2,") == std::string::npos);
  CHECK(run("solve --spec 0,0 --parallel 2 " + t.file("c4.graph")).code == 0);
}

TEST_CASE("verify gadgets and replay scripts") {
  TempDir t;
  CHECK(run("gen --family H --k 1 --j 0 --out " + t.path.string()).code == 0);
  const auto ok = run("verify " + t.file("H10.graph") + " " + t.file("H10.manifest"));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("verified property same-color 1,0 x y") != std::string::npos);

  write_text_file(t.file("proper.manifest"), "property same-color 0,0 x y\n");
  const auto proper = run("verify " + t.file("H10.graph") + " " + t.file("proper.manifest"));
  CHECK(proper.code == 0);  // K_{2,2} also forces x and y together under (0,0)
  write_text_file(t.file("wrong.manifest"), "property noncolorable 1,0\n");
  const auto refuted = run("verify " + t.file("H10.graph") + " " + t.file("wrong.manifest"));
  CHECK(refuted.code == 1);
  CHECK(refuted.out.rfind("refuted", 0) == 0);

  CHECK(run("gen --family g7 --out " + t.path.string()).code == 0);
  const auto rep = run("verify " + t.file("S7.graph") + " " + t.file("S7.manifest") + " --replay " + data_dir() +
                       "/scripts/s_chain.replay");
  CHECK(rep.code == 0);
  CHECK(rep.out.find("replay verified") != std::string::npos);
}

TEST_CASE("reduce writes a graph and a trace sidecar") {
  TempDir t;
  write_graph_file(t.file("k3.graph"), named::complete(3));
  const auto r = run("reduce --which 3col --k 1 --out " + t.file("out.graph") + " " + t.file("k3.graph"));
  CHECK(r.code == 0);
  const Graph g = read_graph_file(t.file("out.graph"));
  const auto trace = parse_trace(read_text_file(t.file("out.graph.trace")));
  CHECK(trace.size() == 3);
  CHECK(solve(g, ColorSpec({0, 0, 0})).sat());

  // a minimal graph is turned into a forcing gadget on the fly
  Graph c5 = named::cycle(5);
  write_graph_file(t.file("c5.graph"), c5);
  write_graph_file(t.file("p2.graph"), named::path(2));
  const auto kj = run("reduce --which kj --k 2 --j 1 --gadget " + t.file("c5.graph") + " " + t.file("p2.graph"));
  CHECK(kj.code == 2);  // C5 is (2,1)-colorable, so the precondition fails
  Graph p3 = named::path(3);
  p3.set_terminal("u'", 0);
  p3.set_terminal("v'", 2);
  write_graph_file(t.file("p3.graph"), p3);
  const auto rejected =
      run("reduce --which kj --k 2 --j 1 --gadget " + t.file("p3.graph") + " " + t.file("p2.graph"));
  CHECK(rejected.code == 1);  // guarantee refuted
  const auto again = run("reduce --which 3col --k 1 --out " + t.file("out2.graph") + " " + t.file("k3.graph"));
  CHECK(read_text_file(t.file("out.graph")) == read_text_file(t.file("out2.graph")));
}

TEST_CASE("minimize and analyze") {
  TempDir t;
  Graph g = named::complete(4);
  g.add_vertex(4);
  g.add_edge(0, 4);
  write_graph_file(t.file("g.graph"), g);
  const auto m = run("minimize --spec 1,0 --out " + t.file("min.graph") + " " + t.file("g.graph"));
  CHECK(m.code == 0);
  CHECK(read_graph_file(t.file("min.graph")).vertex_count() == 4);
  CHECK(run("minimize --spec 2,2 " + t.file("g.graph")).code == 1);

  const auto a = run("analyze " + t.file("g.graph"));
  CHECK(a.code == 0);
  CHECK(a.out.find("mad 3\n") != std::string::npos);
  CHECK(a.out.find("girth 3\n") != std::string::npos);
  CHECK(a.out.find("planar yes\n") != std::string::npos);
}

TEST_CASE("exit codes for usage errors and timeouts") {
  TempDir t;
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("solve --spec 1,0 " + t.file("missing.graph")).code == 2);
  write_text_file(t.file("bad.graph"), "graph bad\nv 0\ne 0 0\n");
  CHECK(run("solve --spec 1,0 " + t.file("bad.graph")).code == 2);
  CHECK(run("gen --family nope").code == 2);

  CHECK(run("gen --family g7 --out " + t.path.string()).code == 0);
  const auto slow = run("solve --spec 2,0 --timeout 1 " + t.file("G7.graph"));
  CHECK(slow.code == 3);
  CHECK(slow.out.find("status timeout") != std::string::npos);
}
