#include "psch/cheeger.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace psch;
using psch::testing::make_graph;
using psch::testing::vec;

TEST_CASE("segment with killed ends and a size cap") {
  // Every 10-interval has two boundary edges: h = 2/10.
  const Graph g = path_graph(20, true, true, 2.0);
  CheegerOptions opts;
  opts.size_cap = 10;
  opts.connected_only = true;
  const CheegerResult r = cheeger_constant(g.weights(), g.measure(), g.potential(), opts);
  CHECK(r.h == doctest::Approx(0.2));
  CHECK(r.argmin_set.size() == 10);
  CHECK_FALSE(r.exhaustive);
}

TEST_CASE("binary tree with killed leaves") {
  // Cap 4: root and its subtree of 3 interior vertices give 5/4; cap 8 adds levels for 9/8.
  const Graph g = tree_graph(2, 3, true, 2.0);
  CheegerOptions opts;
  opts.connected_only = true;
  opts.size_cap = 4;
  CHECK(cheeger_constant(g.weights(), g.measure(), g.potential(), opts).h == doctest::Approx(1.25));
  opts.size_cap = 8;
  CHECK(cheeger_constant(g.weights(), g.measure(), g.potential(), opts).h == doctest::Approx(1.125));
}

TEST_CASE("exhaustive and connected enumeration agree") {
  const Graph g = make_graph({1, 2, 1, 3, 1}, {0, 0.5, 0, 0, 1}, {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {3, 4, 0.5}, {0, 4, 1}},
                             2.0);
  const CheegerResult all = cheeger_constant(g.weights(), g.measure(), g.potential());
  CheegerOptions conn;
  conn.connected_only = true;
  const CheegerResult c = cheeger_constant(g.weights(), g.measure(), g.potential(), conn);
  CHECK(all.exhaustive);
  CHECK(all.enumerated_count == 31);
  CHECK(c.h == doctest::Approx(all.h));
  // Brute force over all 31 sets.
  double best = kInfinity;
  for (unsigned mask = 1; mask < 32; ++mask) {
    double a = 0.0, mu = 0.0;
    for (Index x = 0; x < 5; ++x)
      if (mask >> x & 1u) {
        mu += g.measure()(x);
        a += g.potential()(x);
      }
    for (const auto& e : g.weights().entries())
      if ((mask >> e.u & 1u) != (mask >> e.v & 1u)) a += e.w;
    best = std::min(best, a / mu);
  }
  CHECK(all.h == doctest::Approx(best));
}

TEST_CASE("intrinsic metric on a segment") {
  // D = 2 on the line; rho = 2^{-1/2} makes every row sum exactly 1 at p = 2.
  const Graph g = path_graph(6, true, true, 2.0);
  const VertexFunction one = VertexFunction::Ones(6);
  const IntrinsicScale s = intrinsic_scale(g, one);
  CHECK(s.D == doctest::Approx(2.0));
  CHECK(s.rho_exterior == doctest::Approx(1.0 / std::sqrt(2.0)));
  const IntrinsicReport r = is_p_intrinsic(g, s.rho, one, s.rho_exterior);
  CHECK(r.intrinsic);
  CHECK(r.max_row == doctest::Approx(1.0));
  const EdgeTableD big = s.rho.transformed([](const EdgeD& e) { return 1.1 * e.w; });
  CHECK_FALSE(is_p_intrinsic(g, big, one, s.rho_exterior).intrinsic);
}

TEST_CASE("ground state transform and oscillation") {
  const Graph g = path_graph(3, false, false, 2.0);
  const VertexFunction u = vec({1, 2, 4});
  const EdgeTableD bu = ground_state_transform(g, u);
  CHECK(bu(0, 1) == 2.0);
  CHECK(bu(1, 2) == 8.0);
  CHECK(oscillation_bound(g, u) == 2.0);
  CHECK(oscillation_bound(path_graph(1, false, false, 2.0), vec({3})) == 1.0);
}

TEST_CASE("constant factor") {
  CHECK(cheeger_constant_factor(2.0) == doctest::Approx(2.0));
  CHECK(cheeger_constant_factor(3.0) == doctest::Approx(6.75));
}

TEST_CASE("two-sided bounds on the killed 4-path") {
  // h = 2/4 from the whole set; norm_H = 1 / (2 - 2 cos(pi/5)).
  const Graph g = path_graph(4, true, true, 2.0);
  const VertexFunction one = VertexFunction::Ones(4);
  const CheegerBoundsReport r = cheeger_bounds_report(g, one, CheegerVariant::general_p);
  CHECK(r.h == doctest::Approx(0.5));
  CHECK(r.norm_H == doctest::Approx(1.0 / (2.0 - 2.0 * std::cos(M_PI / 5.0))));
  CHECK(r.exhaustive);
  CHECK(r.lower_bound <= r.norm_H);
  CHECK(r.norm_H <= r.upper_degree);
  for (const auto& a : r.assertions) CHECK_MESSAGE(a.passed, a.name);

  const CheegerBoundsReport t = cheeger_bounds_report(g, one, CheegerVariant::gst_p2, one);
  CHECK(t.h == r.h);
  CHECK(t.norm_H == r.norm_H);
  CHECK(t.upper_degree == r.upper_degree);
}

TEST_CASE("bounds hold for p = 3 and for a transformed supersolution") {
  const Graph g = tree_graph(2, 2, true, 3.0);
  const VertexFunction one = VertexFunction::Ones(g.size());
  for (const auto& a : cheeger_bounds_report(g, one, CheegerVariant::general_p).assertions)
    CHECK_MESSAGE(a.passed, a.name);

  const Graph g2 = path_graph(5, true, true, 2.0);
  const VertexFunction u = vec({1.0, 1.5, 1.8, 1.5, 1.0});
  REQUIRE(is_supersolution(g2, u).verdict != SolutionClass::neither);
  for (const auto& a : cheeger_bounds_report(g2, VertexFunction::Ones(5), CheegerVariant::gst_p2, u).assertions)
    CHECK_MESSAGE(a.passed, a.name);
  CHECK_THROWS_AS(cheeger_bounds_report(g, one, CheegerVariant::gst_p2, one), PreconditionError);
}
