#include "psch/optimize.hpp"

#include <cmath>
#include <vector>

namespace psch {

Eigen::VectorXd project_box(const Eigen::VectorXd& x, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  return x.cwiseMax(lower).cwiseMin(upper);
}

double projected_gradient_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& grad, const Eigen::VectorXd& lower,
                               const Eigen::VectorXd& upper) {
  if (x.size() == 0) return 0.0;
  return (x - project_box(x - grad, lower, upper)).cwiseAbs().maxCoeff();
}

SolveResult minimize_box(const BoxProblem& prob, Eigen::VectorXd x0, const SolverOptions& opts) {
  const Eigen::Index n = x0.size();
  if (prob.lower.size() != n || prob.upper.size() != n) throw SolverError("minimize_box: bounds have wrong length");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(prob.lower(i) <= prob.upper(i))) throw SolverError("minimize_box: empty feasible box");

  SolveResult res;
  Eigen::VectorXd x = project_box(x0, prob.lower, prob.upper);
  if (prob.normalize) prob.normalize(x);
  double f = prob.value(x);
  Eigen::VectorXd g = prob.gradient(x);
  double mu = 1e-10;
  int stalled = 0;

  for (res.iterations = 0; res.iterations < opts.max_iter; ++res.iterations) {
    res.grad_norm = projected_gradient_norm(x, g, prob.lower, prob.upper);
    if (res.grad_norm < opts.tol) {
      res.converged = true;
      break;
    }
    const double eps = std::min(1e-3, res.grad_norm);
    std::vector<Eigen::Index> free, active;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (prob.lower(i) == prob.upper(i)) continue;
      const bool at_lo = x(i) - prob.lower(i) <= eps && g(i) > 0;
      const bool at_hi = prob.upper(i) - x(i) <= eps && g(i) < 0;
      (at_lo || at_hi ? active : free).push_back(i);
    }

    const Eigen::MatrixXd h = prob.hessian(x);
    const Eigen::Index nf = static_cast<Eigen::Index>(free.size());
    Eigen::MatrixXd hf(nf, nf);
    Eigen::VectorXd gf(nf);
    for (Eigen::Index a = 0; a < nf; ++a) {
      gf(a) = g(free[a]);
      for (Eigen::Index b = 0; b < nf; ++b) hf(a, b) = h(free[a], free[b]);
    }
    const double scale = nf > 0 ? 1.0 + hf.diagonal().cwiseAbs().maxCoeff() : 1.0;

    bool accepted = false;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
      if (nf > 0) {
        Eigen::MatrixXd reg = hf;
        reg.diagonal().array() += mu * scale;
        Eigen::LLT<Eigen::MatrixXd> llt(reg);
        if (llt.info() != Eigen::Success) {
          mu = std::max(mu * 10.0, 1e-12);
          continue;
        }
        const Eigen::VectorXd df = llt.solve(-gf);
        for (Eigen::Index a = 0; a < nf; ++a) d(free[a]) = df(a);
      }
      for (Eigen::Index i : active) d(i) = -g(i) / std::max(std::abs(h(i, i)), 1e-12);

      double alpha = 1.0;
      for (int ls = 0; ls < 60; ++ls) {
        const Eigen::VectorXd xn = project_box(x + alpha * d, prob.lower, prob.upper);
        double decrease = 0.0;
        for (Eigen::Index i : free) decrease -= alpha * g(i) * d(i);
        for (Eigen::Index i : active) decrease += g(i) * (x(i) - xn(i));
        const double fn = prob.value(xn);
        if (std::isfinite(fn) && fn <= f - 1e-4 * decrease) {
          const double drop = f - fn;
          stalled = drop <= 1e-15 * std::max(1.0, std::abs(f)) ? stalled + 1 : 0;
          x = xn;
          if (prob.normalize) prob.normalize(x);
          f = prob.normalize ? prob.value(x) : fn;
          accepted = true;
          mu = alpha == 1.0 ? std::max(mu * 0.1, 1e-14) : std::min(mu * 4.0, 1e6);
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) mu = std::max(mu * 10.0, 1e-12);
    }
    g = prob.gradient(x);
    if (!accepted || stalled >= 8) {
      res.grad_norm = projected_gradient_norm(x, g, prob.lower, prob.upper);
      res.converged = res.grad_norm < opts.tol;
      break;
    }
  }
  if (res.iterations >= opts.max_iter) {
    res.grad_norm = projected_gradient_norm(x, g, prob.lower, prob.upper);
    res.converged = res.grad_norm < opts.tol;
  }
  res.value = f;
  res.witness = std::move(x);
  return res;
}

}  // namespace psch
