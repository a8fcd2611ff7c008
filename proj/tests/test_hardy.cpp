#include "psch/hardy.hpp"
#include "psch/random_instances.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace psch;
using psch::testing::vec;

TEST_CASE("killed 3-path at p = 2") {
  // Dirichlet Laplacian tridiag(-1, 2, -1): smallest eigenvalue 2 - sqrt 2.
  const Graph g = path_graph(3, true, true, 2.0);
  const HardyEstimate e = hardy_constant(g, VertexFunction::Ones(3));
  CHECK(e.exact);
  CHECK(e.lambda0 == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(e.norm_H == doctest::Approx(1.0 / (2.0 - std::sqrt(2.0))).epsilon(1e-12));
  CHECK(e.minimizer(1) / e.minimizer(0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(rayleigh_quotient(g, VertexFunction::Ones(3), e.minimizer) == doctest::Approx(e.lambda0).epsilon(1e-12));
}

TEST_CASE("killed 3-path at p = 3") {
  // Independent Nelder-Mead minimum of the quotient: 0.38601651728334...
  const Graph g = path_graph(3, true, true, 3.0);
  const HardyEstimate e = hardy_constant(g, VertexFunction::Ones(3));
  CHECK_FALSE(e.exact);
  CHECK(e.lambda0 == doctest::Approx(0.386016517283345).epsilon(1e-8));
}

TEST_CASE("single killed vertex") {
  for (double p : {1.5, 2.0, 4.0}) {
    const Graph g = path_graph(1, true, true, p);
    CHECK(hardy_constant(g, VertexFunction::Ones(1)).lambda0 == doctest::Approx(2.0));
  }
}

TEST_CASE("critical instances have an infinite norm") {
  const Graph g = path_graph(4, false, false, 2.0);
  const HardyEstimate e = hardy_constant(g, VertexFunction::Ones(4));
  CHECK(std::abs(e.lambda0) <= 1e-12);
  CHECK(std::isinf(e.norm_H));
}

TEST_CASE("Hardy constant properties") {
  std::mt19937_64 rng(41);
  for (double p : {1.5, 2.0, 3.0}) {
    for (int k = 0; k < 10; ++k) {
      const RandomInstance inst = random_instance(rng, InstanceKind::subcritical_nonnegative, p);
      const Graph& g = inst.graph;
      const VertexFunction w = random_function(rng, g.size(), 0.5, 2.0);
      const HardyEstimate e = hardy_constant(g, w);
      CHECK(e.lambda0 > 0);
      const HardyEstimate twice = hardy_constant(g, VertexFunction(2.0 * w));
      CHECK(twice.lambda0 == doctest::Approx(e.lambda0 / 2.0).epsilon(1e-6));
      double sampled = kInfinity;
      for (int s = 0; s < 2000; ++s)
        sampled = std::min(sampled, rayleigh_quotient(g, w, random_function(rng, g.size(), 0.0, 1.0)));
      CHECK(e.lambda0 <= sampled + 1e-9);
      CHECK(rayleigh_quotient(g, w, e.minimizer) == doctest::Approx(e.lambda0).epsilon(1e-8));
    }
  }
}

TEST_CASE("Maz'ya norm of the killed 3-path") {
  // m(K) / Cap(K): {0}: 3/4, {1}: 1, {0,1}: 4/3, {0,2}: 1, {0,1,2}: 3/2.
  const Graph g = path_graph(3, true, true, 2.0);
  const VertexFunction one = VertexFunction::Ones(3);
  const MazyaEstimate m = mazya_norm(g, one, one);
  CHECK(m.exhaustive);
  CHECK(m.table.size() == 7);
  CHECK(m.norm_Hu == doctest::Approx(1.5).epsilon(1e-8));
  CHECK(m.argmax_set == VertexSet{0, 1, 2});
  const MazyaSandwichReport s = mazya_sandwich_check(g, one, one);
  CHECK(s.lower_holds);
  CHECK(s.ratio_holds);
  CHECK(s.norm_H >= s.norm_Hu);
  CHECK_THROWS_AS(mazya_sandwich_check(path_graph(12, true, true, 2.0), VertexFunction::Ones(12),
                                       VertexFunction::Ones(12)),
                  InputError);
}

TEST_CASE("Maz'ya sandwich on random instances") {
  std::mt19937_64 rng(42);
  InstanceOptions small;
  small.max_vertices = 6;
  for (double p : {2.0, 3.0}) {
    for (int k = 0; k < 5; ++k) {
      const RandomInstance inst = random_instance(rng, InstanceKind::subcritical_nonnegative, p, small);
      const VertexFunction w = random_function(rng, inst.graph.size(), 0.5, 2.0);
      const MazyaSandwichReport s = mazya_sandwich_check(inst.graph, w, inst.supersolution);
      CHECK(s.lower_holds);
      CHECK(s.ratio_holds);
    }
  }
}

TEST_CASE("residual tolerance") {
  CHECK(residual_tolerance(2.0) == 1e-7);
  CHECK(residual_tolerance(3.0, 1e-9) == 1e-9);
  CHECK(residual_tolerance(1.5) == doctest::Approx(1e-5));
}
