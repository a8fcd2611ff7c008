#include "psch/energy.hpp"
#include "psch/random_instances.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace psch;
using psch::testing::make_graph;
using psch::testing::vec;

namespace {

// Central differences of Q.
VertexFunction numeric_gradient(const Graph& g, const VertexFunction& phi, double h = 1e-6) {
  VertexFunction out(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    VertexFunction a = phi, b = phi;
    a(i) += h;
    b(i) -= h;
    out(i) = (energy_value(g, a) - energy_value(g, b)) / (2 * h);
  }
  return out;
}

}  // namespace

TEST_CASE("single edge energy by hand") {
  // b = 2, m = (1, 3), c = (0.5, -1), p = 3, phi = (1, -2).
  const Graph g = make_graph({1, 3}, {0.5, -1}, {{0, 1, 2}}, 3.0);
  const VertexFunction phi = vec({1, -2});
  const auto e = energy(g, phi);
  CHECK(e.kinetic == doctest::Approx(54.0));
  CHECK(e.potential == doctest::Approx(-7.5));
  CHECK(e.total == doctest::Approx(46.5));
  CHECK(e.positive_part == doctest::Approx(54.5));

  const VertexFunction L = p_laplacian(g, phi);
  CHECK(L(0) == doctest::Approx(18.0));
  CHECK(L(1) == doctest::Approx(-6.0));
  const VertexFunction q = schrodinger(g, phi);
  CHECK(q(0) == doctest::Approx(18.5));
  CHECK(q(1) == doctest::Approx(-14.0 / 3.0));
  const VertexFunction grad = energy_gradient(g, phi);
  CHECK(grad(0) == doctest::Approx(55.5));
  CHECK(grad(1) == doctest::Approx(-42.0));
}

TEST_CASE("sgnpow and abspow") {
  CHECK(sgnpow(-2.0, 2.0) == -4.0);
  CHECK(sgnpow(0.0, 0.5) == 0.0);
  CHECK(abspow(-3.0, 2.0) == 9.0);
  CHECK(abspow(0.0, 0.3) == 0.0);
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(11);
  for (double p : {1.5, 2.0, 3.0, 4.5}) {
    for (int k = 0; k < 20; ++k) {
      const Graph g = random_mixed_instance(rng, static_cast<std::size_t>(k), p).graph;
      const VertexFunction phi = random_function(rng, g.size(), -2.0, 2.0);
      const VertexFunction exact = energy_gradient(g, phi);
      const VertexFunction approx = numeric_gradient(g, phi);
      const double scale = std::max(1.0, exact.cwiseAbs().maxCoeff());
      CHECK((exact - approx).cwiseAbs().maxCoeff() <= 1e-5 * scale);
    }
  }
}

TEST_CASE("Hessian matches differences of the gradient") {
  std::mt19937_64 rng(12);
  for (double p : {2.0, 3.0}) {
    for (int k = 0; k < 10; ++k) {
      const Graph g = random_mixed_instance(rng, static_cast<std::size_t>(k), p).graph;
      const VertexFunction phi = random_function(rng, g.size(), -1.0, 1.0);
      const Eigen::MatrixXd h = energy_hessian(g, phi);
      const double step = 1e-6;
      for (Index i = 0; i < g.size(); ++i) {
        VertexFunction a = phi, b = phi;
        a(i) += step;
        b(i) -= step;
        const VertexFunction col = (energy_gradient(g, a) - energy_gradient(g, b)) / (2 * step);
        CHECK((col - h.col(i)).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, h.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("quadratic form at p = 2 and homogeneity") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 20; ++k) {
    const Graph g = random_mixed_instance(rng, static_cast<std::size_t>(k), 2.0).graph;
    const VertexFunction phi = random_function(rng, g.size(), -1.0, 1.0);
    const double q = energy_value(g, phi);
    CHECK(phi.dot(energy_matrix(g) * phi) == doctest::Approx(q).epsilon(1e-12).scale(1.0));
    const Graph g3 = g.with_p(3.0);
    CHECK(energy_value(g3, VertexFunction(-1.7 * phi)) ==
          doctest::Approx(std::pow(1.7, 3.0) * energy_value(g3, phi)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("Euler identity sum m phi Q'[phi] = Q(phi)") {
  std::mt19937_64 rng(14);
  for (double p : {1.5, 2.5}) {
    for (int k = 0; k < 20; ++k) {
      const Graph g = random_mixed_instance(rng, static_cast<std::size_t>(k), p).graph;
      const VertexFunction phi = random_function(rng, g.size(), -1.0, 1.0);
      const VertexFunction q = schrodinger(g, phi);
      const double lhs = g.measure().cwiseProduct(phi).dot(q);
      CHECK(lhs == doctest::Approx(energy_value(g, phi)).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("supersolution classification") {
  const Graph killed = path_graph(3, true, true, 2.0);
  const auto s = is_supersolution(killed, VertexFunction::Ones(3));
  CHECK(s.verdict == SolutionClass::supersolution);
  CHECK(s.min_value == 0.0);
  CHECK(s.max_abs == 1.0);
  CHECK(is_supersolution(path_graph(4, false, false, 3.0), VertexFunction::Ones(4)).verdict ==
        SolutionClass::solution);
  CHECK(is_supersolution(path_graph(3, false, false, 2.0), vec({1, 2, 1})).verdict == SolutionClass::neither);
  CHECK(is_supersolution(path_graph(3, false, false, 2.0), vec({1, 2, 1}), {1}).verdict ==
        SolutionClass::supersolution);
  CHECK_THROWS_AS(is_supersolution(killed, vec({1, 0, 1})), PreconditionError);
  CHECK(std::string(to_string(SolutionClass::solution)) == "solution");
}

TEST_CASE("critical potentials make u a solution") {
  std::mt19937_64 rng(15);
  for (double p : {1.5, 2.0, 3.0}) {
    const RandomInstance inst = random_instance(rng, InstanceKind::critical, p);
    const auto s = is_supersolution(inst.graph, inst.supersolution, {}, 1e-10);
    CHECK(s.verdict == SolutionClass::solution);
  }
}

TEST_CASE("flux sums") {
  const Graph g = make_graph({1, 1, 1}, {0, 0, 0}, {{0, 1, 1}, {1, 2, 2}}, 3.0);
  const VertexFunction f = flux_sums(g, vec({0, 1, 3}));
  CHECK(f(0) == doctest::Approx(1.0));
  CHECK(f(1) == doctest::Approx(1.0 + 2.0 * 4.0));
  CHECK(f(2) == doctest::Approx(8.0));
}
