#include "psch/fractional.hpp"

#include "psch/energy.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace psch {

namespace {

void require_sigma(double sigma, const char* what) {
  if (!(sigma > 0 && sigma < 1)) throw InputError(std::string(what) + " must lie in (0, 1)");
}

void require_free_connected(const Graph& g) {
  if (g.potential().cwiseAbs().maxCoeff() != 0) throw PreconditionError("fractional weights require c = 0");
  if (!g.connected()) throw PreconditionError("fractional weights require a connected graph");
}

// -sqrt(m_x m_y) (S^s)_{xy} for every pair.
EdgeTableD spectral_table(const Graph& g, double s, double scale) {
  const HeatSemigroup heat(g);
  const Eigen::MatrixXd ps = heat.symmetric_power(s);
  const Eigen::VectorXd& r = heat.sqrt_measure();
  EdgeTableD out;
  for (Index x = 0; x < g.size(); ++x)
    for (Index y = x + 1; y < g.size(); ++y) out.set(x, y, -scale * r(x) * r(y) * 0.5 * (ps(x, y) + ps(y, x)));
  return out;
}

// int_0^inf m(x) p_t(x, y) m(y) dt / t^{1+s} for every pair x != y.
EdgeTableD quadrature_table(const Graph& g, double s, double scale, const QuadratureOptions& opts) {
  const Index n = g.size();
  const Eigen::VectorXd& m = g.measure();
  const Eigen::MatrixXd delta = m.cwiseInverse().asDiagonal() * energy_matrix(g);
  const double lambda1 = HeatSemigroup(g).smallest_positive();
  double T = 1.0;
  while (std::exp(-lambda1 * T) * std::pow(T, -s) >= opts.tail_tol) T *= 1.25;

  auto kernel = [&](double t) -> Eigen::MatrixXd {
    const Eigen::MatrixXd e = (-t * delta).exp();
    return m.asDiagonal() * e;
  };

  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  // Head on [0, t_min]: k_t = t b + t^2 m(x) (Delta^2)_{xy} / 2 + O(t^3).
  const Eigen::MatrixXd d2 = m.asDiagonal() * (delta * delta);
  const double t0 = opts.t_min;
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      if (x == y) continue;
      const double k1 = -m(x) * delta(x, y);
      const double k2 = d2(x, y);
      acc(x, y) += k1 * std::pow(t0, 1 - s) / (1 - s) + 0.5 * k2 * std::pow(t0, 2 - s) / (2 - s);
    }
  // Body on [t_min, T] in u = log t: int k(e^u) e^{-s u} du.
  const auto [xi, wi] = gauss_legendre(opts.nodes);
  const double a = std::log(t0), b = std::log(T);
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / opts.panel_width)));
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h;
    for (Index j = 0; j < xi.size(); ++j) {
      const double u = lo + 0.5 * h * (xi(j) + 1.0);
      acc += (0.5 * h * wi(j) * std::exp(-s * u)) * kernel(std::exp(u));
    }
  }
  // Tail on [T, inf): the stationary kernel m_x m_y / m(X).
  const double mass = m.sum();
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (x != y) acc(x, y) += m(x) * m(y) / mass * std::pow(T, -s) / s;

  EdgeTableD out;
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y) out.set(x, y, scale * 0.5 * (acc(x, y) + acc(y, x)));
  return out;
}

double inverse_abs_gamma(double sigma) { return sigma / std::tgamma(1.0 - sigma); }

}  // namespace

HeatSemigroup::HeatSemigroup(const Graph& g) {
  sqrt_m_ = g.measure().cwiseSqrt();
  const Eigen::VectorXd inv = sqrt_m_.cwiseInverse();
  Eigen::MatrixXd s = inv.asDiagonal() * energy_matrix(g) * inv.asDiagonal();
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  lambda_ = es.eigenvalues().cwiseMax(0.0);
  V_ = es.eigenvectors();
  floor_ = 1e-10 * std::max(1.0, lambda_.maxCoeff());
}

Eigen::MatrixXd HeatSemigroup::operator()(double t) const {
  if (!(t >= 0)) throw InputError("heat time must be nonnegative");
  const Eigen::VectorXd e = (-t * lambda_).array().exp();
  return sqrt_m_.cwiseInverse().asDiagonal() * V_ * e.asDiagonal() * V_.transpose() * sqrt_m_.asDiagonal();
}

Eigen::MatrixXd HeatSemigroup::kernel(double t) const {
  if (!(t >= 0)) throw InputError("heat time must be nonnegative");
  const Eigen::VectorXd e = (-t * lambda_).array().exp();
  return sqrt_m_.asDiagonal() * V_ * e.asDiagonal() * V_.transpose() * sqrt_m_.asDiagonal();
}

Eigen::VectorXd HeatSemigroup::eigenvalue_power(double sigma) const {
  Eigen::VectorXd e(lambda_.size());
  for (Index i = 0; i < lambda_.size(); ++i) e(i) = lambda_(i) <= floor_ ? 0.0 : std::pow(lambda_(i), sigma);
  return e;
}

Eigen::MatrixXd HeatSemigroup::symmetric_power(double sigma) const {
  return V_ * eigenvalue_power(sigma).asDiagonal() * V_.transpose();
}

Eigen::MatrixXd HeatSemigroup::power(double sigma) const {
  return sqrt_m_.cwiseInverse().asDiagonal() * symmetric_power(sigma) * sqrt_m_.asDiagonal();
}

double HeatSemigroup::smallest_positive() const {
  for (Index i = 0; i < lambda_.size(); ++i)
    if (lambda_(i) > floor_) return lambda_(i);
  return floor_;
}

Eigen::MatrixXd heat_operator(const Graph& g, double t) { return HeatSemigroup(g)(t); }

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int nodes) {
  if (nodes < 1) throw InputError("Gauss-Legendre needs at least one node");
  // Golub-Welsch: eigenpairs of the Jacobi matrix.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = j(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  Eigen::VectorXd w(nodes);
  for (int k = 0; k < nodes; ++k) w(k) = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
  return {es.eigenvalues(), w};
}

EdgeTableD fractional_weights(const Graph& g, double sigma) {
  require_sigma(sigma, "sigma");
  require_free_connected(g);
  return spectral_table(g, sigma, 1.0);
}

EdgeTableD fractional_weights_quadrature(const Graph& g, double sigma, const QuadratureOptions& opts) {
  require_sigma(sigma, "sigma");
  require_free_connected(g);
  return quadrature_table(g, sigma, inverse_abs_gamma(sigma), opts);
}

EdgeTableD fractional_p_weights(const Graph& g, double sigma, double p) {
  require_sigma(sigma * p / 2, "sigma p / 2");
  require_free_connected(g);
  const double s = sigma * p / 2;
  return spectral_table(g, s, 1.0 / inverse_abs_gamma(s));
}

EdgeTableD fractional_p_weights_quadrature(const Graph& g, double sigma, double p, const QuadratureOptions& opts) {
  require_sigma(sigma * p / 2, "sigma p / 2");
  require_free_connected(g);
  return quadrature_table(g, sigma * p / 2, 1.0, opts);
}

Graph fractional_graph(const Graph& g, double sigma) {
  return Graph(g.ids(), g.measure(), VertexFunction::Zero(g.size()), fractional_weights(g, sigma), g.p());
}

Eigen::MatrixXd laplacian_matrix(Index n, const EdgeTableD& b) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : b.entries()) {
    h(e.u, e.u) += e.w;
    h(e.v, e.v) += e.w;
    h(e.u, e.v) -= e.w;
    h(e.v, e.u) -= e.w;
  }
  return h;
}

FractionalCheck spectral_fractional_check(const Graph& g, double sigma, bool with_quadrature,
                                          const QuadratureOptions& opts) {
  const EdgeTableD bs = fractional_weights(g, sigma);
  const HeatSemigroup heat(g);
  const Index n = g.size();
  const Eigen::VectorXd& m = g.measure();
  FractionalCheck rep;
  rep.sigma = sigma;
  rep.eigenvalues.assign(heat.eigenvalues().data(), heat.eigenvalues().data() + n);

  const Eigen::MatrixXd hs = laplacian_matrix(n, bs);
  const Eigen::MatrixXd delta_s = m.cwiseInverse().asDiagonal() * hs;
  rep.operator_deviation = (delta_s - heat.power(sigma)).cwiseAbs().maxCoeff();

  const Eigen::VectorXd r = heat.sqrt_measure().cwiseInverse();
  Eigen::MatrixXd sym = r.asDiagonal() * hs * r.asDiagonal();
  sym = 0.5 * (sym + sym.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd target = heat.eigenvalue_power(sigma);
  rep.eigenvalue_deviation = (es.eigenvalues() - target).cwiseAbs().maxCoeff();

  rep.min_offdiagonal = std::numeric_limits<double>::infinity();
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y) {
      rep.min_offdiagonal = std::min(rep.min_offdiagonal, bs(x, y));
      rep.distance_to_b = std::max(rep.distance_to_b, std::abs(bs(x, y) - g.weights()(x, y)));
    }
  if (n == 1) rep.min_offdiagonal = 0.0;

  if (with_quadrature) {
    const EdgeTableD bq = fractional_weights_quadrature(g, sigma, opts);
    for (Index x = 0; x < n; ++x)
      for (Index y = x + 1; y < n; ++y)
        rep.quadrature_deviation = std::max(rep.quadrature_deviation, std::abs(bs(x, y) - bq(x, y)));
  }
  return rep;
}

}  // namespace psch
