// Box-constrained smooth minimization shared by the variational operations.
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <stdexcept>

namespace psch {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value, witness and convergence diagnostics of a variational operation.
struct SolveResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd witness;
  bool converged = false;
  bool certified = false;  // first-order stationarity of a convex problem
  int iterations = 0;
  double grad_norm = std::numeric_limits<double>::infinity();  // projected gradient, infinity norm
  int starts = 1;
};

/// minimize f(x) subject to lower <= x <= upper (entries may be +-inf; equal
/// bounds fix a coordinate).
struct BoxProblem {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  /// Optional map applied after every accepted step; must keep the point
  /// feasible and leave the value unchanged (used for scale-invariant objectives).
  std::function<void(Eigen::VectorXd&)> normalize;
};

struct SolverOptions {
  double tol = 1e-9;  // projected gradient, infinity norm
  int max_iter = 2000;
};

/// Projected Newton method with an epsilon-active set, Levenberg-Marquardt
/// regularization of the free block and a projected Armijo search.
SolveResult minimize_box(const BoxProblem& prob, Eigen::VectorXd x0, const SolverOptions& opts = {});

Eigen::VectorXd project_box(const Eigen::VectorXd& x, const Eigen::VectorXd& lower, const Eigen::VectorXd& upper);

/// Infinity norm of x - P(x - grad).
double projected_gradient_norm(const Eigen::VectorXd& x, const Eigen::VectorXd& grad, const Eigen::VectorXd& lower,
                               const Eigen::VectorXd& upper);

}  // namespace psch
