#include "psch/capacity.hpp"
#include "psch/random_instances.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace psch;
using psch::testing::vec;

TEST_CASE("capacity of an endpoint of a killed path") {
  // phi decreases linearly over n edges to the killed vertex: Cap = n (1/n)^p.
  for (double p : {1.5, 2.0, 3.0}) {
    for (long n : {1L, 4L, 9L}) {
      const Graph g = path_graph(n, false, true, p);
      const VertexFunction one = VertexFunction::Ones(n);
      const double expected = std::pow(static_cast<double>(n), 1.0 - p);
      const CapacityResult s = capacity(g, one, {0}, CapacityVariant::standard);
      CHECK(s.value == doctest::Approx(expected).epsilon(1e-8));
      CHECK(s.certified);
      CHECK(s.minimizer(n - 1) == doctest::Approx(1.0 / n).epsilon(1e-6));
      CHECK(capacity(g, one, {0}, CapacityVariant::tilde).value == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("middle of the killed 3-path at p = 2") {
  // phi = (1/2, 1, 1/2): Q = 1/4 + 1/4 + 2 (1/2)^2 = 1.
  const Graph g = path_graph(3, true, true, 2.0);
  const CapacityResult r = capacity_oracle_p2(g, {1});
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.minimizer(0) == doctest::Approx(0.5));
  CHECK(capacity(g, VertexFunction::Ones(3), {1}, CapacityVariant::standard).value == doctest::Approx(1.0));
  // K = {0}: phi = (1, 2/3, 1/3), Q = 4/3.
  CHECK(capacity_oracle_p2(g, {0}).value == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("solver agrees with the linear oracle at p = 2") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 30; ++k) {
    const RandomInstance inst = random_instance(rng, InstanceKind::subcritical_nonnegative, 2.0);
    const Graph& g = inst.graph;
    std::uniform_int_distribution<Index> pick(0, g.size() - 1);
    VertexSet K{pick(rng)};
    const Index extra = pick(rng);
    if (extra != K[0]) K.push_back(extra);
    const double oracle = capacity_oracle_p2(g, K).value;
    const double solved = capacity(g, VertexFunction::Ones(g.size()), K, CapacityVariant::standard).value;
    CHECK(std::abs(solved - oracle) <= 1e-8 * std::max(1.0, oracle));
  }
}

TEST_CASE("capacity properties on random instances") {
  std::mt19937_64 rng(32);
  for (double p : {1.5, 2.0, 3.0}) {
    for (int k = 0; k < 12; ++k) {
      const RandomInstance inst = random_mixed_instance(rng, static_cast<std::size_t>(k), p);
      const Graph& g = inst.graph;
      const VertexFunction& u = inst.supersolution;
      const VertexSet K{0};
      VertexSet K2{0};
      if (g.size() > 1) K2.push_back(g.size() - 1);
      const double cap1 = capacity(g, u, K, CapacityVariant::standard).value;
      const double cap2 = capacity(g, u, K2, CapacityVariant::standard).value;
      const double tilde = capacity(g, u, K, CapacityVariant::tilde).value;
      const double tol = 1e-9 * std::max(1.0, tilde);
      CHECK(cap1 >= -tol);
      CHECK(cap1 <= cap2 + tol);
      CHECK(cap1 <= tilde + tol);
      const double t = 1.7;
      const double scaled = capacity(g, VertexFunction(t * u), K, CapacityVariant::standard).value;
      CHECK(std::abs(scaled - std::pow(t, p) * cap1) <= 1e-8 * std::max(1.0, scaled));
    }
  }
}

TEST_CASE("substituted problem matches the standard capacity") {
  std::mt19937_64 rng(33);
  for (double p : {2.0, 3.0}) {
    for (int k = 0; k < 6; ++k) {
      const RandomInstance inst = random_instance(rng, InstanceKind::subcritical_signed, p);
      const double a = capacity(inst.graph, inst.supersolution, {0}, CapacityVariant::standard).value;
      const double b = capacity_substituted(inst.graph, inst.supersolution, {0}).value;
      CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, a));
    }
  }
}

TEST_CASE("variants are comparable and vanish together") {
  std::mt19937_64 rng(34);
  for (double p : {2.0, 3.0}) {
    for (int k = 0; k < 9; ++k) {
      const RandomInstance inst = random_mixed_instance(rng, static_cast<std::size_t>(k), p);
      const EquivalenceReport r = equivalence_report(inst.graph, inst.supersolution, {0});
      CHECK(r.ordering_holds);
      CHECK(r.zero_sets_agree);
      if (inst.kind == InstanceKind::critical) CHECK(std::abs(r.standard.value) <= 1e-7);
      if (p == 2.0 && r.standard.value > 1e-7) {
        CHECK(r.ratio_sim_standard >= 1.0 - 1e-8);
        CHECK(r.ratio_sim_standard <= 2.0 + 1e-8);
      }
    }
  }
}

TEST_CASE("sim variant requires a supersolution") {
  const Graph g = path_graph(3, false, false, 2.0);
  CHECK_THROWS_AS(capacity(g, vec({1, 2, 1}), {0}, CapacityVariant::sim), PreconditionError);
  CHECK(capacity_variant_from_string("tilde") == CapacityVariant::tilde);
  CHECK_THROWS_AS(capacity_variant_from_string("bogus"), InputError);
}
