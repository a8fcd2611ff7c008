// Heat semigroup of the p = 2 operator and the fractional weights it induces.
//
// With S = M^{-1/2} H M^{-1/2} = V diag(lambda) V^T, the operator
// e^{-t Delta} = M^{-1/2} V e^{-t lambda} V^T M^{1/2} has rows p_t(x, .) m(.).
// Fractional weights are computed on the finite truncation only.
#pragma once

#include "psch/graph.hpp"

namespace psch {

class HeatSemigroup {
 public:
  /// Uses b, c and m of g; the stored p is ignored.
  explicit HeatSemigroup(const Graph& g);

  const Eigen::VectorXd& eigenvalues() const { return lambda_; }  // ascending, clipped at 0
  const Eigen::MatrixXd& eigenvectors() const { return V_; }      // of S

  /// e^{-t Delta}.
  Eigen::MatrixXd operator()(double t) const;
  /// m(x) p_t(x, y) m(y), symmetric.
  Eigen::MatrixXd kernel(double t) const;
  /// Delta^sigma by functional calculus.
  Eigen::MatrixXd power(double sigma) const;
  /// S^sigma.
  Eigen::MatrixXd symmetric_power(double sigma) const;
  /// Smallest eigenvalue above the round-off floor.
  double smallest_positive() const;
  /// lambda_i^sigma, with eigenvalues at or below the round-off floor taken as 0.
  Eigen::VectorXd eigenvalue_power(double sigma) const;

  const Eigen::VectorXd& sqrt_measure() const { return sqrt_m_; }

 private:
  Eigen::VectorXd sqrt_m_;
  Eigen::VectorXd lambda_;
  Eigen::MatrixXd V_;
  double floor_ = 0.0;
};

Eigen::MatrixXd heat_operator(const Graph& g, double t);

struct QuadratureOptions {
  double t_min = 1e-10;
  double panel_width = 0.5;  // in log t
  int nodes = 16;            // Gauss-Legendre nodes per panel
  double tail_tol = 1e-14;
};

/// b_sigma(x, y) = (1 / |Gamma(-sigma)|) int m(x) p_t(x, y) m(y) dt / t^{1 + sigma}, by functional calculus.
EdgeTableD fractional_weights(const Graph& g, double sigma);

/// Same integral by quadrature over the matrix exponential.
EdgeTableD fractional_weights_quadrature(const Graph& g, double sigma, const QuadratureOptions& opts = {});

/// b_{sigma,p}(x, y) = int m(x) p_t(x, y) m(y) dt / t^{1 + sigma p / 2}, no Gamma normalization.
EdgeTableD fractional_p_weights(const Graph& g, double sigma, double p);
EdgeTableD fractional_p_weights_quadrature(const Graph& g, double sigma, double p, const QuadratureOptions& opts = {});

/// (b_sigma, m, c = 0) with the exponent of g.
Graph fractional_graph(const Graph& g, double sigma);

/// Graph Laplacian H = diag(row sums) - B of an edge table.
Eigen::MatrixXd laplacian_matrix(Index n, const EdgeTableD& b);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int nodes);

struct FractionalCheck {
  double sigma = 0.0;
  double operator_deviation = 0.0;    // max |Delta_{b_sigma} - Delta^sigma| entrywise
  double eigenvalue_deviation = 0.0;  // max |mu_i - lambda_i^sigma| over sorted spectra
  double quadrature_deviation = 0.0;  // max |b_sigma - b_sigma quadrature| per entry
  double min_offdiagonal = 0.0;
  double distance_to_b = 0.0;         // max |b_sigma - b|, reported only
  std::vector<double> eigenvalues;    // lambda_i of the base operator
};

FractionalCheck spectral_fractional_check(const Graph& g, double sigma, bool with_quadrature = true,
                                          const QuadratureOptions& opts = {});

}  // namespace psch
