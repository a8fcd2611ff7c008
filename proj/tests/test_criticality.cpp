#include "psch/hardy.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace psch;
using psch::testing::vec;

TEST_CASE("criticalize the killed 3-path at its middle") {
  // min over a of 2a^2 + 2(1 - a)^2 is 1 at a = 1/2, so c0 = 1 and c becomes (1, -1, 1).
  const Graph g = path_graph(3, true, true, 2.0);
  const CriticalizeResult r = criticalize(g, 1);
  CHECK(r.c0 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_FALSE(r.critical_input);
  CHECK(r.critical.potential()(1) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(std::abs(r.post_check) <= 1e-8);
  CHECK(criticalize(path_graph(3, false, false, 2.0), 1).critical_input);
}

TEST_CASE("ground state of the criticalized path") {
  // Kernel of [[2,-1,0],[-1,1,-1],[0,-1,2]] is spanned by (1, 2, 1).
  const Graph crit = criticalize(path_graph(3, true, true, 2.0), 1).critical;
  const VertexFunction psi = ground_state(crit, 0);
  CHECK(psi(0) == doctest::Approx(1.0));
  CHECK(psi(1) == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(psi(2) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(ground_state(path_graph(3, true, true, 2.0)), PreconditionError);
}

TEST_CASE("ground state at p = 3 is a positive solution") {
  const Graph crit = criticalize(path_graph(4, true, false, 3.0), 2).critical;
  const VertexFunction psi = ground_state(crit);
  CHECK(psi.minCoeff() > 0);
  CHECK(schrodinger(crit, psi).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("Green function of the half-killed 4-path") {
  // Unit flux through every edge: u = (1, 2, 3, 4) for every p, Q'[u] = (0, 0, 0, 1).
  for (double p : {1.5, 2.0, 3.0}) {
    const Graph g = path_graph(4, true, false, p);
    const VertexFunction u = green_function(g, 3);
    const double tol = p < 2 ? 1e-5 : 1e-7;
    for (Index i = 0; i < 4; ++i) CHECK(u(i) == doctest::Approx(i + 1.0).epsilon(tol));
    const VertexFunction q = schrodinger(g, u);
    CHECK(q(3) == doctest::Approx(1.0).epsilon(tol));
    CHECK(std::abs(q(0)) <= residual_tolerance(p));
    CHECK(energy_value(g, u) == doctest::Approx(u(3)).epsilon(tol));
  }
  CHECK_THROWS_AS(green_function(path_graph(4, false, false, 2.0), 0), PreconditionError);
}

TEST_CASE("null sequence on a line segment") {
  // phi = 1 on {8-n..8+n}, linear down to the killed ends: energy 2 (8 - n)^{1-p}.
  for (double p : {2.0, 3.0}) {
    const Graph g = path_graph(17, false, false, p);
    VertexSet Y;
    for (Index i = 1; i <= 15; ++i) Y.push_back(i);
    std::vector<VertexSet> sets;
    for (Index n = 0; n <= 6; ++n) {
      VertexSet K;
      for (Index i = 8 - n; i <= 8 + n; ++i) K.push_back(i);
      sets.push_back(K);
    }
    const CriticalityReport r = null_sequence(g, VertexFunction::Ones(17), ExhaustionPlan(sets), Y);
    REQUIRE(r.null_sequence_energies.size() == 7);
    for (std::size_t n = 0; n < 7; ++n)
      CHECK(r.null_sequence_energies[n] ==
            doctest::Approx(2.0 * std::pow(8.0 - static_cast<double>(n), 1.0 - p)).epsilon(1e-7));
    CHECK(r.monotone);
  }
  CHECK_THROWS_AS(null_sequence(path_graph(3, true, true, 2.0), VertexFunction::Ones(3),
                                ExhaustionPlan::prefixes(3, {1, 2})),
                  PreconditionError);
}

TEST_CASE("null sequence of a criticalized graph reaches zero") {
  const Graph crit = criticalize(path_graph(5, true, true, 2.0), 2).critical;
  const VertexFunction psi = ground_state(crit, 2);
  const CriticalityReport r = null_sequence(crit, psi, ExhaustionPlan::balls(crit, 2));
  CHECK(std::abs(r.null_sequence_energies.back()) <= 1e-8);
  REQUIRE(r.ground_state);
  CHECK(((*r.ground_state) - psi).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("KP partial sums stay below the bound") {
  for (double p : {2.0, 3.0}) {
    const Graph g = path_graph(8, true, false, p);
    const VertexFunction u = green_function(g, 7);
    const KpReport r = kp_check(g, VertexFunction::Ones(8), u, 7, ExhaustionPlan::balls(g, 7));
    CHECK(r.holds);
    CHECK(r.stages.size() == 8);
    for (std::size_t i = 1; i < r.stages.size(); ++i) CHECK(r.stages[i].partial_sum >= r.stages[i - 1].partial_sum);
  }
}

TEST_CASE("essential spectrum and gap") {
  const Graph g = path_graph(6, true, true, 2.0);
  const auto lam = lambda_infty(g, VertexFunction::Ones(6), ExhaustionPlan::prefixes(6, {1, 3}));
  REQUIRE(lam.size() == 2);
  CHECK(lam[1] >= lam[0]);
  // Remaining killed 3-path {3, 4, 5} has lambda0 = 2 - sqrt 2.
  CHECK(lam[1] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-10));
}
