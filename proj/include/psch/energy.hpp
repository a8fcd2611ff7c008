// Energy functional Q, the p-Laplacian L and the Schroedinger operator Q'.
#pragma once

#include "psch/graph.hpp"

#include <cmath>

namespace psch {

/// sign(t)|t|^e; the value at t = 0 is 0 for every e > 0.
template <typename Scalar>
inline Scalar sgnpow(Scalar t, Scalar e) {
  using std::abs;
  using std::pow;
  if (t == Scalar(0)) return Scalar(0);
  const Scalar a = pow(abs(t), e);
  return t > 0 ? a : -a;
}

template <typename Scalar>
inline Scalar abspow(Scalar t, Scalar e) {
  using std::abs;
  using std::pow;
  if (t == Scalar(0)) return Scalar(0);
  return pow(abs(t), e);
}

template <typename Scalar>
struct EnergyBreakdown {
  Scalar kinetic{0};        // (1/2) sum over ordered pairs b|grad phi|^p
  Scalar potential{0};      // sum c|phi|^p
  Scalar total{0};
  Scalar positive_part{0};  // kinetic + sum c_+ |phi|^p
};

template <typename Scalar, typename Derived>
EnergyBreakdown<Scalar> energy(const WeightedGraph<Scalar>& g, const Eigen::MatrixBase<Derived>& phi) {
  const Scalar p = g.p();
  EnergyBreakdown<Scalar> e;
  for (const auto& ed : g.weights().entries()) e.kinetic += ed.w * abspow<Scalar>(phi(ed.u) - phi(ed.v), p);
  Scalar plus(0);
  for (Index x = 0; x < g.size(); ++x) {
    const Scalar c = g.potential()(x);
    if (c == Scalar(0)) continue;
    const Scalar t = c * abspow<Scalar>(phi(x), p);
    e.potential += t;
    if (c > 0) plus += t;
  }
  e.total = e.kinetic + e.potential;
  e.positive_part = e.kinetic + plus;
  return e;
}

/// Q(phi).
template <typename Scalar, typename Derived>
Scalar energy_value(const WeightedGraph<Scalar>& g, const Eigen::MatrixBase<Derived>& phi) {
  return energy(g, phi).total;
}

/// L f(x) = (1/m(x)) sum_y b(x,y) sign(grad)|grad|^{p-1}, grad = f(x) - f(y).
template <typename Scalar, typename Derived>
Vector<Scalar> p_laplacian(const WeightedGraph<Scalar>& g, const Eigen::MatrixBase<Derived>& f) {
  const Scalar e = g.p() - 1;
  Vector<Scalar> out = Vector<Scalar>::Zero(g.size());
  for (const auto& ed : g.weights().entries()) {
    const Scalar t = ed.w * sgnpow<Scalar>(f(ed.u) - f(ed.v), e);
    out(ed.u) += t;
    out(ed.v) -= t;
  }
  return out.cwiseQuotient(g.measure());
}

/// Q'[f] = L f + (c/m) sign(f)|f|^{p-1}.
template <typename Scalar, typename Derived>
Vector<Scalar> schrodinger(const WeightedGraph<Scalar>& g, const Eigen::MatrixBase<Derived>& f) {
  const Scalar e = g.p() - 1;
  Vector<Scalar> out = p_laplacian(g, f);
  for (Index x = 0; x < g.size(); ++x)
    out(x) += g.potential()(x) / g.measure()(x) * sgnpow<Scalar>(f(x), e);
  return out;
}

/// Gradient of phi -> Q(phi); equals p * m * Q'[phi] componentwise.
template <typename Scalar, typename Derived>
Vector<Scalar> energy_gradient(const WeightedGraph<Scalar>& g, const Eigen::MatrixBase<Derived>& phi) {
  const Vector<Scalar> q = schrodinger(g, phi);
  Vector<Scalar> out(g.size());
  for (Index x = 0; x < g.size(); ++x) out(x) = g.p() * g.measure()(x) * q(x);
  return out;
}

/// Hessian of Q at phi. For p < 2 the entries |t|^{p-2} are floored at
/// |t| >= floor to stay finite; floor = 0 gives the exact Hessian where it exists.
template <typename Scalar, typename Derived>
Matrix<Scalar> energy_hessian(const WeightedGraph<Scalar>& g, const Eigen::MatrixBase<Derived>& phi,
                              Scalar floor = Scalar(0)) {
  using std::abs;
  using std::max;
  using std::pow;
  const Scalar p = g.p();
  const Scalar k = p * (p - 1);
  auto curv = [&](Scalar t) -> Scalar {
    if (p == Scalar(2)) return Scalar(1);
    Scalar a = abs(t);
    if (p < 2) a = max(a, floor);
    if (a == Scalar(0)) return Scalar(0);
    return pow(a, p - 2);
  };
  Matrix<Scalar> h = Matrix<Scalar>::Zero(g.size(), g.size());
  for (const auto& ed : g.weights().entries()) {
    const Scalar w = k * ed.w * curv(phi(ed.u) - phi(ed.v));
    h(ed.u, ed.u) += w;
    h(ed.v, ed.v) += w;
    h(ed.u, ed.v) -= w;
    h(ed.v, ed.u) -= w;
  }
  for (Index x = 0; x < g.size(); ++x) h(x, x) += k * g.potential()(x) * curv(phi(x));
  return h;
}

/// Matrix H with Q(phi) = phi^T H phi at p = 2 (combinatorial Laplacian plus diag(c)).
template <typename Scalar>
Matrix<Scalar> energy_matrix(const WeightedGraph<Scalar>& g) {
  Matrix<Scalar> h = Matrix<Scalar>::Zero(g.size(), g.size());
  for (const auto& ed : g.weights().entries()) {
    h(ed.u, ed.u) += ed.w;
    h(ed.v, ed.v) += ed.w;
    h(ed.u, ed.v) -= ed.w;
    h(ed.v, ed.u) -= ed.w;
  }
  h.diagonal() += g.potential();
  return h;
}

enum class SolutionClass { solution, supersolution, neither };

const char* to_string(SolutionClass c);

struct SupersolutionReport {
  double min_value = 0.0;  // min over Y of Q'[u]
  Index argmin = -1;
  double max_abs = 0.0;  // max over Y of |Q'[u]|
  SolutionClass verdict = SolutionClass::neither;
};

/// Classifies u on Y: solution if |Q'[u]| <= tol on Y, supersolution if Q'[u] >= -tol on Y.
/// Throws PreconditionError if u <= 0 somewhere on Y. Empty Y means the whole graph.
SupersolutionReport is_supersolution(const Graph& g, const VertexFunction& u, const VertexSet& Y = {},
                                     double tol = 1e-10);

/// Row sums sum_y b(x,y)|grad f|^{p-1}; the summability diagnostic of F(X).
VertexFunction flux_sums(const Graph& g, const VertexFunction& f);

}  // namespace psch
