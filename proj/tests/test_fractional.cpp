#include "psch/energy.hpp"
#include "psch/fractional.hpp"
#include "psch/random_instances.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace psch;
using psch::testing::make_graph;

TEST_CASE("heat operator of a single edge") {
  // Delta has eigenvalues 0 and 2: e^{-t Delta} = [[a, b], [b, a]], a = (1 + e^{-2t}) / 2.
  const Graph g = complete_graph(2, 2.0);
  for (double t : {0.0, 0.3, 2.0}) {
    const Eigen::MatrixXd e = heat_operator(g, t);
    CHECK(e(0, 0) == doctest::Approx((1 + std::exp(-2 * t)) / 2));
    CHECK(e(0, 1) == doctest::Approx((1 - std::exp(-2 * t)) / 2));
  }
  CHECK_THROWS_AS(heat_operator(g, -1.0), InputError);
}

TEST_CASE("fractional weights of a single edge") {
  // Delta^sigma = 2^{sigma-1} Delta, so b_sigma = 2^{sigma-1}.
  const Graph g = complete_graph(2, 2.0);
  for (double sigma : {0.25, 0.5, 0.75}) {
    CHECK(fractional_weights(g, sigma)(0, 1) == doctest::Approx(std::pow(2.0, sigma - 1)).epsilon(1e-12));
    CHECK(fractional_weights_quadrature(g, sigma)(0, 1) == doctest::Approx(std::pow(2.0, sigma - 1)).epsilon(1e-10));
  }
  // int (1 - e^{-2t}) / 2 t^{-1-s} dt = 2^s Gamma(1 - s) / (2 s); s = 3/4 gives 4.0650164999095...
  const double closed = 4.065016499909536;
  CHECK(fractional_p_weights(g, 0.75, 2.0)(0, 1) == doctest::Approx(closed).epsilon(1e-12));
  CHECK(fractional_p_weights_quadrature(g, 0.75, 2.0)(0, 1) == doctest::Approx(closed).epsilon(1e-9));
  CHECK(fractional_p_weights(g, 0.5, 3.0)(0, 1) ==
        doctest::Approx(std::pow(2.0, 0.75) * std::tgamma(0.25) / 1.5).epsilon(1e-12));
}

TEST_CASE("semigroup properties on random graphs") {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 10; ++k) {
    const Graph g = random_connected_graph(rng, 2 + k % 8, 2.0);
    const HeatSemigroup heat(g);
    const Eigen::MatrixXd a = heat(0.4), b = heat(0.9), ab = heat(1.3);
    CHECK((a * b - ab).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((a.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
    CHECK(a.minCoeff() >= -1e-14);
    const Eigen::MatrixXd k1 = heat.kernel(0.7);
    CHECK((k1 - k1.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((k1 - g.measure().asDiagonal() * heat(0.7)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((heat.power(1.0) - g.measure().cwiseInverse().asDiagonal() * energy_matrix(g)).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK(heat.eigenvalues()(0) <= 1e-12);
    CHECK(heat.smallest_positive() > 0);
  }
}

TEST_CASE("spectral and quadrature weights agree") {
  std::mt19937_64 rng(62);
  for (int k = 0; k < 6; ++k) {
    const Graph g = random_connected_graph(rng, 3 + k, 2.0);
    for (double sigma : {0.25, 0.5, 0.75}) {
      const FractionalCheck c = spectral_fractional_check(g, sigma);
      CHECK(c.operator_deviation <= 1e-10);
      CHECK(c.eigenvalue_deviation <= 1e-10);
      CHECK(c.quadrature_deviation <= 1e-10);
      CHECK(c.min_offdiagonal > 0);
    }
  }
}

TEST_CASE("fractional graph keeps the measure") {
  const Graph g = make_graph({1, 2, 0.5}, {0, 0, 0}, {{0, 1, 1}, {1, 2, 3}}, 2.5);
  const Graph f = fractional_graph(g, 0.5);
  CHECK(f.p() == 2.5);
  CHECK(f.measure() == g.measure());
  CHECK(f.weights().size() == 3);
  CHECK(f.potential().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("preconditions") {
  const Graph g = complete_graph(3, 2.0);
  CHECK_THROWS_AS(fractional_weights(g, 1.2), InputError);
  CHECK_THROWS_AS(fractional_weights(g, 0.0), InputError);
  CHECK_THROWS_AS(fractional_p_weights(g, 0.8, 3.0), InputError);
  CHECK_THROWS_AS(fractional_weights(path_graph(3, true, false, 2.0), 0.5), PreconditionError);
  const Graph split = make_graph({1, 1, 1}, {0, 0, 0}, {{0, 1, 1}}, 2.0);
  CHECK_THROWS_AS(fractional_weights(split, 0.5), PreconditionError);
}

TEST_CASE("Gauss-Legendre rule") {
  const auto [x, w] = gauss_legendre(16);
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK((w.array() * x.array().pow(30)).sum() == doctest::Approx(2.0 / 31.0).epsilon(1e-13));
  CHECK(std::abs((w.array() * x.array().pow(5)).sum()) <= 1e-15);
  CHECK_THROWS_AS(gauss_legendre(0), InputError);
}
