#include "doctest.h"

#include <random>

#include "defcol/analysis.hpp"
#include "defcol/gadgets.hpp"
#include "defcol/reductions.hpp"
#include "defcol/solver.hpp"
#include "defcol/verify.hpp"
#include "support.hpp"

using namespace defcol;
using testing_support::random_graph;

namespace {

struct Mocks {
  ForcingGadget k0, p11, p21, p22;
  Gadget e_ab;
};

const Mocks& mocks() {
  static const Mocks m = [] {
    auto minimal = [](const char* spec) {
      const auto g = find_minimal_with_2vertex(ColorSpec::parse(spec), 10);
      REQUIRE(g.has_value());
      return *g;
    };
    Mocks out{derive_forcing_gadget(minimal("2,0"), ColorSpec({2, 0}), AttachMode::path),
              derive_forcing_gadget(minimal("1,1"), ColorSpec({1, 1}), AttachMode::pendant),
              derive_forcing_gadget(minimal("2,1"), ColorSpec({2, 1}), AttachMode::pendant),
              derive_forcing_gadget(minimal("2,2"), ColorSpec({2, 2}), AttachMode::pendant),
              {}};
    out.e_ab = build_E_ab(out.p11);
    return out;
  }();
  return m;
}

bool colorable(const Graph& g, const ColorSpec& s) { return solve(g, s).sat(); }

std::vector<std::pair<std::string, Graph>> inputs() {
  return {{"P2", named::path(2)},   {"P4", named::path(4)},       {"K3", named::complete(3)},
          {"C5", named::cycle(5)},  {"K4", named::complete(4)},   {"K5", named::complete(5)},
          {"K1", named::path(1)},   {"W5", [] {
             Graph w = named::cycle(5);
             w.add_vertex(5);
             for (int i = 0; i < 5; ++i) w.add_edge(5, i);
             return w;
           }()}};
}

}  // namespace

TEST_CASE("mock gadgets are small, minimal and have a 2-vertex") {
  for (const auto* fg : {&mocks().k0, &mocks().p11, &mocks().p21, &mocks().p22}) {
    CHECK(fg->graph.vertex_count() <= 12);
    CHECK(verify_property(fg->graph, fg->guarantee).outcome == Outcome::verified);
  }
  CHECK(mocks().k0.attach_terminals() == std::vector<std::string>{"x2"});
  CHECK(mocks().p11.attach_terminals() == std::vector<std::string>{"u'", "v'"});
}

TEST_CASE("derive_forcing_gadget, path mode for (1,0)") {
  const auto minimal = find_minimal_with_2vertex(ColorSpec({1, 0}), 8);
  REQUIRE(minimal.has_value());
  CHECK(is_deletion_minimal_noncolorable(*minimal, ColorSpec({1, 0})));
  const auto fg = derive_forcing_gadget(*minimal, ColorSpec({1, 0}), AttachMode::path);
  CHECK(fg.graph.vertex_count() == minimal->vertex_count() + 2);
  const Graph& g = fg.graph;
  const std::set<VertexState> colored_1_defect_1{{0, 1}};
  CHECK(forced_states(g, fg.spec, {}, g.resolve("x2")).states == colored_1_defect_1);
  CHECK(forced_states_brute_force(g, fg.spec, {}, g.resolve("x2")) == colored_1_defect_1);
}

TEST_CASE("derive_forcing_gadget, C5 under (0,0) in pendant mode") {
  const auto fg = derive_forcing_gadget(named::cycle(5), ColorSpec({0, 0}), AttachMode::pendant, VertexId{0});
  CHECK(fg.graph.vertex_count() == 6);
  CHECK(fg.graph.resolve("u") == 1);
  CHECK(fg.graph.resolve("v") == 4);
  CHECK(verify_property_brute_force(fg.graph, fg.guarantee).outcome == Outcome::verified);
}

TEST_CASE("derive_forcing_gadget rejects bad input") {
  // K4 plus a pendant path is non-colorable but not minimal
  Graph g = named::complete(4);
  g.add_vertex(4);
  g.add_edge(0, 4);
  CHECK_THROWS_AS(derive_forcing_gadget(g, ColorSpec({1, 0}), AttachMode::path), std::invalid_argument);
  // colorable input
  CHECK_THROWS_AS(derive_forcing_gadget(named::cycle(4), ColorSpec({0, 0}), AttachMode::pendant),
                  std::invalid_argument);
  // minimal but without a 2-vertex
  CHECK_THROWS_AS(derive_forcing_gadget(named::complete(3), ColorSpec({1, 0}), AttachMode::pendant),
                  std::invalid_argument);
  // path mode needs (k,0)
  CHECK_THROWS_AS(derive_forcing_gadget(named::cycle(5), ColorSpec({0, 0}), AttachMode::path),
                  std::invalid_argument);
  // a loaded gadget whose guarantee fails
  Graph bad = named::path(3);
  bad.set_terminal("x2", 1);
  CHECK_THROWS_AS(load_forcing_gadget(bad, ColorSpec({1, 0}), AttachMode::path), GadgetRejected);
}

TEST_CASE("reduce_k0") {
  const auto& fg = mocks().k0;
  const std::size_t m = fg.graph.vertex_count();
  const auto single = reduce_k0(named::path(1), 2, fg);
  CHECK(single.graph.vertex_count() == 1 + m);
  CHECK(single.graph.edge_count() == fg.graph.edge_count() + 1);
  CHECK_THROWS(reduce_k0(named::path(1), 1, fg));
  CHECK_THROWS(reduce_k0(named::path(1), 2, mocks().p11));

  for (const auto& [name, g] : inputs()) {
    INFO(name);
    const auto out = reduce_k0(g, 2, fg);
    CHECK(out.trace.size() == g.vertex_count());
    CHECK(colorable(g, ColorSpec({1, 0})) == colorable(out.graph, ColorSpec({2, 0})));
    // the gadget hangs off s by one edge, so no new short cycle appears
    const auto gi = girth(g).length, go = girth(out.graph).length, gg = girth(fg.graph).length;
    CHECK(go == std::min(gi.value_or(1 << 30), gg.value_or(1 << 30)));
  }
}

TEST_CASE("build_E_ab") {
  const auto& e = mocks().e_ab;
  CHECK(e.graph.vertex_count() == 2 + 2 * mocks().p11.graph.vertex_count());
  for (const auto& r : verify_gadget(e))
    CHECK(r.outcome == (r.property.kind == PropertyKind::note ? Outcome::unchecked : Outcome::verified));
  CHECK_THROWS(build_E_ab(mocks().p21));

  // a pendant graph without the forcing guarantee, found by search: u' and v' may share a color
  SearchOptions so;
  so.random_attempts = 0;
  const auto broken = search_gadget(parse_property("property exists 1,1 pattern u'==v'"), 2, so);
  REQUIRE(broken.has_value());
  const Gadget bad = assemble_E_ab(broken->graph);
  const Property& both_saturated = bad.manifest.properties.at(2);
  const auto r = verify_property(bad.graph, both_saturated);
  CHECK(r.outcome == Outcome::refuted);
  REQUIRE(r.coloring.has_value());
  CHECK(check_coloring(bad.graph, ColorSpec({1, 1}), *r.coloring).ok);
  CHECK(pattern_holds(bad.graph, ColorSpec({1, 1}), *r.coloring, both_saturated.pattern));
  CHECK_FALSE(pattern_holds(bad.graph, ColorSpec({1, 1}), *r.coloring, both_saturated.consequence));
  CHECK_THROWS_AS(load_E_ab(bad.graph), GadgetRejected);
}

TEST_CASE("reduce_11") {
  const auto& e = mocks().e_ab;
  const auto one = reduce_11(named::path(2), e);
  CHECK(one.graph.vertex_count() == e.graph.vertex_count());
  CHECK(one.graph.edge_count() == e.graph.edge_count());
  CHECK(one.trace.size() == 1);

  for (const auto& [name, g] : inputs()) {
    INFO(name);
    const auto out = reduce_11(g, e);
    CHECK(out.trace.size() == g.edge_count());
    CHECK(colorable(g, ColorSpec({1, 1})) == colorable(out.graph, ColorSpec({1, 1})));
  }
}

TEST_CASE("reduce_kj") {
  CHECK(reduce_kj_t(2, 1) == 1);
  CHECK(reduce_kj_t(2, 2) == 1);
  CHECK(reduce_kj_t(3, 3) == 2);
  CHECK(reduce_kj_t(4, 1) == 1);
  CHECK_THROWS(reduce_kj(named::path(2), 2, 0, mocks().p21));
  CHECK_THROWS(reduce_kj(named::path(2), 2, 2, mocks().p21));

  for (const auto& [name, g] : inputs()) {
    INFO(name);
    const auto a = reduce_kj(g, 2, 1, mocks().p21);
    CHECK(a.graph.vertex_count() == g.vertex_count() * (1 + mocks().p21.graph.vertex_count()));
    CHECK(colorable(g, ColorSpec({1, 0})) == colorable(a.graph, ColorSpec({2, 1})));
    const auto b = reduce_kj(g, 2, 2, mocks().p22);
    CHECK(colorable(g, ColorSpec({1, 1})) == colorable(b.graph, ColorSpec({2, 2})));
  }
}

TEST_CASE("reductions agree with the solver on random small inputs") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 25; ++round) {
    const Graph g = random_graph(rng, 2 + static_cast<int>(rng() % 5), 0.6);
    INFO(serialize_graph(g));
    CHECK(colorable(g, ColorSpec({1, 0})) == colorable(reduce_k0(g, 2, mocks().k0).graph, ColorSpec({2, 0})));
    CHECK(colorable(g, ColorSpec({1, 1})) == colorable(reduce_11(g, mocks().e_ab).graph, ColorSpec({1, 1})));
    CHECK(colorable(g, ColorSpec({1, 0})) ==
          colorable(reduce_kj(g, 2, 1, mocks().p21).graph, ColorSpec({2, 1})));
    CHECK(colorable(g, ColorSpec({1, 1})) ==
          colorable(reduce_kj(g, 2, 2, mocks().p22).graph, ColorSpec({2, 2})));
  }
}

TEST_CASE("reduce_3col with the real E''") {
  const Gadget epp = gadget_E_family(1).Epp;
  const auto one = reduce_3col(named::path(2), 1, epp);
  CHECK(one.graph.vertex_count() == epp.graph.vertex_count());
  CHECK(one.graph.edge_count() == epp.graph.edge_count());

  const auto k3 = reduce_3col(named::complete(3), 1, epp);
  const auto r = solve(k3.graph, ColorSpec({0, 0, 0}));
  REQUIRE(r.sat());
  CHECK(check_coloring(k3.graph, ColorSpec({0, 0, 0}), r.certificate).ok);

  const auto k4 = reduce_3col(named::complete(4), 1, epp);
  CHECK(solve(k4.graph, ColorSpec({1, 1, 1})).unsat());

  for (const auto& [name, g] : inputs()) {
    if (g.vertex_count() > 5) continue;
    INFO(name);
    const auto out = reduce_3col(g, 1, epp);
    if (colorable(g, ColorSpec({0, 0, 0})))
      CHECK(colorable(out.graph, ColorSpec({0, 0, 0})));
    else
      CHECK_FALSE(colorable(out.graph, ColorSpec({1, 1, 1})));
    if (g.edge_count() > 0)
      CHECK(girth(out.graph).length ==
            std::min(girth(g).length.value_or(1 << 30), girth(epp.graph).length.value_or(1 << 30)));
  }
}

TEST_CASE("traces map every introduced vertex back to its copy") {
  const Graph in = named::cycle(4);
  const auto out = reduce_11(in, mocks().e_ab);
  VertexId prev_last = in.max_id();
  for (std::size_t i = 0; i < out.trace.size(); ++i) {
    const auto& e = out.trace[i];
    CHECK(e.copy == static_cast<int>(i));
    CHECK(e.edge);
    CHECK(in.has_edge(e.s, e.t));
    CHECK(e.first == prev_last + 1);
    prev_last = e.last;
  }
  for (VertexId v : out.graph.vertices()) {
    const auto o = out.origin(v);
    CHECK(o.has_value() == !in.has_vertex(v));
  }
  const std::string text = format_trace(out.trace);
  CHECK(text.rfind("copy 0 for edge 0-1 -> vertices ", 0) == 0);
  CHECK(parse_trace(text) == out.trace);
  const auto vt = reduce_k0(named::path(2), 2, mocks().k0).trace;
  CHECK(vt[0].str().rfind("copy 0 for vertex 0 -> vertices 2-", 0) == 0);
  CHECK(parse_trace(format_trace(vt)) == vt);
  CHECK_THROWS_AS(parse_trace("copy 0 for face 1 -> vertices 1-2\n"), ParseError);

  // deterministic
  CHECK(serialize_graph(reduce_11(in, mocks().e_ab).graph) == serialize_graph(out.graph));
}
