#include "doctest.h"

#include <random>

#include "defcol/analysis.hpp"
#include "support.hpp"

using namespace defcol;
using testing_support::random_graph;

TEST_CASE("rational arithmetic") {
  CHECK(Rational(4, 6) == Rational(2, 3));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
  CHECK(Rational(10, 3) > Rational(3));
  CHECK(Rational(6, 3).str() == "2");
}

TEST_CASE("girth") {
  CHECK(girth(named::cycle(4)).length == 4);
  CHECK(girth(named::complete_bipartite(2, 3)).length == 4);
  CHECK(girth(named::petersen()).length == 5);
  CHECK(girth(named::complete(4)).length == 3);
  CHECK_FALSE(girth(named::star(5)).length.has_value());
  CHECK_FALSE(girth(named::path(7)).length.has_value());
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Graph g = random_graph(rng, 9, 0.25);
    const auto r = girth(g);
    if (r.length) {
      CHECK(is_cycle_of(g, r.cycle));
      CHECK(static_cast<int>(r.cycle.size()) == *r.length);
    } else {
      // a forest has |E| = |V| - components < |V|
      CHECK(g.edge_count() < g.vertex_count());
    }
  }
}

TEST_CASE("mad exact values") {
  CHECK(mad(named::cycle(7)).value == Rational(2));
  CHECK(mad(named::complete(4)).value == Rational(3));
  CHECK(mad(named::star(4)).value == Rational(8, 5));
  CHECK(mad(named::petersen()).value == mad_brute_force(named::petersen()));
  CHECK(mad(named::petersen()).value == Rational(3));
  Graph iso;
  iso.add_vertex(0);
  CHECK(mad(iso).value == Rational(0));
}

TEST_CASE("mad agrees with subset enumeration") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const Graph g = random_graph(rng, n, 0.15 + 0.1 * static_cast<double>(rng() % 6));
    const auto r = mad(g);
    CHECK(r.value == mad_brute_force(g));
    CHECK(r.value >= Rational(2 * static_cast<std::int64_t>(g.edge_count()), static_cast<std::int64_t>(g.vertex_count())));
    CHECK(r.value >= Rational(static_cast<std::int64_t>(g.min_degree())));
    const Graph h = g.induced({r.densest.begin(), r.densest.end()});
    CHECK(Rational(2 * static_cast<std::int64_t>(h.edge_count()), static_cast<std::int64_t>(h.vertex_count())) == r.value);
  }
}

TEST_CASE("degeneracy") {
  CHECK(degeneracy(named::path(6)).value == 1);
  CHECK(degeneracy(named::complete(4)).value == 3);
  CHECK(degeneracy(named::icosahedron()).value == 5);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Graph g = random_graph(rng, 10, 0.3);
    const auto d = degeneracy(g);
    CHECK(check_elimination_order(g, d.order, d.value));
    if (d.value > 0) CHECK_FALSE(check_elimination_order(g, d.order, d.value - 1));
  }
}

TEST_CASE("n3 and the order") {
  CHECK(n3(named::cycle(5)) == 0);
  CHECK(n3(named::complete(4)) == 4);
  CHECK(n3(named::star(3)) == 1);
  CHECK(compare_order(named::cycle(5), named::complete(4)) == OrderVerdict::precedes);
  CHECK(compare_order(named::path(3), named::cycle(4)) == OrderVerdict::precedes);
  CHECK(compare_order(named::cycle(4), named::cycle(5)) == OrderVerdict::precedes);
  CHECK(compare_order(named::cycle(5), named::cycle(4)) == OrderVerdict::succeeds);
  CHECK(compare_order(named::cycle(5), named::path(5)) == OrderVerdict::equal);
}

TEST_CASE("order is consistent with nested subgraphs") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    Graph g = random_graph(rng, 9, 0.4);
    CHECK(compare_order(g, g) == OrderVerdict::equal);
    while (g.vertex_count() > 1) {
      Graph h = g;
      const auto vs = h.vertices();
      if (rng() % 2 && h.edge_count() > 0) {
        const auto es = h.edges();
        const auto [u, w] = es[rng() % es.size()];
        h.remove_edge(u, w);
      } else {
        h.remove_vertex(vs[rng() % vs.size()]);
      }
      const auto verdict = compare_order(h, g);
      CHECK((verdict == OrderVerdict::precedes || verdict == OrderVerdict::equal));
      if (h.vertex_count() < g.vertex_count()) CHECK(verdict == OrderVerdict::precedes);
      g = std::move(h);
    }
  }
}

TEST_CASE("planarity with witnesses") {
  const auto k4 = planarity(named::complete(4));
  CHECK(k4.planar);
  CHECK(check_rotation_system(named::complete(4), k4));
  for (const Graph& g : {named::complete(5), named::complete_bipartite(3, 3), named::petersen()}) {
    const auto r = planarity(g);
    CHECK_FALSE(r.planar);
    CHECK(check_kuratowski(g, r.kuratowski));
  }
  // Petersen fails the girth-5 Euler bound
  CHECK(15 * 3 > 5 * (10 - 2));
  const Graph ico = named::icosahedron();
  CHECK(is_planar(ico));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 80; ++i) {
    const Graph g = random_graph(rng, 9, 0.3);
    const auto r = planarity(g);
    if (r.planar) {
      CHECK(check_rotation_system(g, r));
      if (g.vertex_count() >= 3) CHECK(g.edge_count() <= 3 * g.vertex_count() - 6);
      const auto gi = girth(g).length;
      if (gi) CHECK(static_cast<double>(g.edge_count()) <= (*gi) / (*gi - 2.0) * (g.vertex_count() - 2.0) + 1e-9);
    } else {
      CHECK(check_kuratowski(g, r.kuratowski));
    }
  }
}

TEST_CASE("discharging audit") {
  auto k5 = discharge_audit(named::complete(5));
  REQUIRE(std::holds_alternative<Rational>(k5));
  CHECK(std::get<Rational>(k5) == Rational(4));
  auto ico = discharge_audit(named::icosahedron());
  REQUIRE(std::holds_alternative<Rational>(ico));
  CHECK(std::get<Rational>(ico) == Rational(5));
  CHECK(std::holds_alternative<PreconditionViolation>(discharge_audit(named::complete(4))));
  CHECK(std::holds_alternative<PreconditionViolation>(discharge_audit(named::cycle(6))));
  // K_{3,5}: each 3-vertex has three 5-neighbors and gains 1
  auto k35 = discharge_audit(named::complete_bipartite(3, 5));
  REQUIRE(std::holds_alternative<Rational>(k35));
  CHECK(std::get<Rational>(k35) == Rational(10, 3));
}
