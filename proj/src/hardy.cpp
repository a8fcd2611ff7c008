#include "psch/hardy.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <random>

namespace psch {

namespace {

VertexFunction weight_measure(const Graph& g, const VertexFunction& weight) {
  if (weight.size() != g.size()) throw InputError("weight has wrong length");
  VertexFunction w = g.measure().cwiseProduct(weight.cwiseAbs());
  if (!(w.maxCoeff() > 0)) throw InputError("weight must not vanish identically");
  return w;
}

void orient(VertexFunction& phi) {
  const double s = phi.sum();
  Index k = 0;
  phi.cwiseAbs().maxCoeff(&k);
  if (s < 0 || (s == 0 && phi(k) < 0)) phi = -phi;
}

}  // namespace

double rayleigh_quotient(const Graph& g, const VertexFunction& weight, const VertexFunction& phi) {
  const VertexFunction w = weight_measure(g, weight);
  double den = 0.0;
  for (Index x = 0; x < g.size(); ++x) den += w(x) * abspow(phi(x), g.p());
  return energy_value(g, phi) / den;
}

HardyEstimate hardy_constant_p2(const Graph& g, const VertexFunction& weight, double zero_threshold) {
  const VertexFunction w = weight_measure(g, weight);
  const Index n = g.size();
  VertexSet S, N;
  for (Index x = 0; x < n; ++x) (w(x) > 0 ? S : N).push_back(x);
  const Eigen::MatrixXd h = energy_matrix(g);
  const Index ns = static_cast<Index>(S.size()), nn = static_cast<Index>(N.size());
  auto block = [&](const VertexSet& r, const VertexSet& c) {
    Eigen::MatrixXd out(static_cast<Index>(r.size()), static_cast<Index>(c.size()));
    for (Index i = 0; i < out.rows(); ++i)
      for (Index j = 0; j < out.cols(); ++j) out(i, j) = h(r[i], c[j]);
    return out;
  };

  HardyEstimate est;
  est.exact = true;
  Eigen::MatrixXd a = block(S, S);
  Eigen::MatrixXd pinv_hns;  // H_NN^+ H_NS
  const double scale = 1.0 + h.cwiseAbs().maxCoeff();
  if (nn > 0) {
    const Eigen::MatrixXd hnn = block(N, N), hns = block(N, S);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hnn);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double tiny = 1e-12 * scale;
    if (ev(0) < -tiny) {
      est.indefinite = true;
      est.lambda0 = -kInfinity;
      est.norm_H = kInfinity;
      est.minimizer = VertexFunction::Zero(n);
      return est;
    }
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(nn);
    for (Index i = 0; i < nn; ++i) {
      if (ev(i) > tiny) {
        inv(i) = 1.0 / ev(i);
      } else if ((es.eigenvectors().col(i).transpose() * hns).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        // A null direction of H_NN coupled to the support: Q is unbounded below.
        est.indefinite = true;
        est.lambda0 = -kInfinity;
        est.norm_H = kInfinity;
        est.minimizer = VertexFunction::Zero(n);
        return est;
      }
    }
    pinv_hns = es.eigenvectors() * inv.asDiagonal() * (es.eigenvectors().transpose() * hns);
    a -= hns.transpose() * pinv_hns;
  }
  Eigen::VectorXd wis(ns);
  for (Index i = 0; i < ns; ++i) wis(i) = 1.0 / std::sqrt(w(S[i]));
  Eigen::MatrixXd b = wis.asDiagonal() * a * wis.asDiagonal();
  b = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  est.lambda0 = es.eigenvalues()(0);
  const Eigen::VectorXd phis = wis.cwiseProduct(es.eigenvectors().col(0));
  VertexFunction phi = VertexFunction::Zero(n);
  for (Index i = 0; i < ns; ++i) phi(S[i]) = phis(i);
  if (nn > 0) {
    const Eigen::VectorXd phin = -pinv_hns * phis;
    for (Index i = 0; i < nn; ++i) phi(N[i]) = phin(i);
  }
  orient(phi);
  est.minimizer = phi;
  est.indefinite = est.lambda0 < -1e-10 * scale;
  est.norm_H = est.lambda0 > zero_threshold * scale ? 1.0 / est.lambda0 : kInfinity;
  est.diagnostics.value = est.lambda0;
  est.diagnostics.witness = phi;
  est.diagnostics.converged = est.diagnostics.certified = true;
  est.diagnostics.grad_norm = 0.0;
  return est;
}

namespace {

// inf Q(phi) / w(x) |phi(x)|^p for a weight supported on the single vertex x.
HardyEstimate hardy_single_vertex(const Graph& g, const VertexFunction& w, Index x, const HardyOptions& opts) {
  const Index n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  BoxProblem prob;
  prob.value = [&g](const Eigen::VectorXd& phi) { return energy_value(g, phi); };
  prob.gradient = [&g](const Eigen::VectorXd& phi) { return energy_gradient(g, phi); };
  prob.hessian = [&g](const Eigen::VectorXd& phi) { return energy_hessian(g, phi, 1e-8); };
  prob.lower = VertexFunction::Zero(n);
  prob.upper = VertexFunction::Constant(n, inf);
  prob.lower(x) = prob.upper(x) = 1.0;

  std::vector<VertexFunction> starts{VertexFunction::Ones(n)};
  const HardyEstimate e2 = hardy_constant_p2(g, w.cwiseQuotient(g.measure()));
  if (!e2.indefinite && std::abs(e2.minimizer(x)) > 0) starts.push_back(e2.minimizer.cwiseAbs() / std::abs(e2.minimizer(x)));
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  for (int k = 0; k < std::min(opts.starts, 4); ++k) {
    VertexFunction s(n);
    for (Index i = 0; i < n; ++i) s(i) = unif(rng);
    starts.push_back(s);
  }
  HardyEstimate est;
  bool first = true;
  for (const auto& s : starts) {
    SolveResult r = minimize_box(prob, s, opts.solver);
    if (first || r.value < est.diagnostics.value) {
      est.diagnostics = r;
      first = false;
    }
  }
  est.diagnostics.starts = static_cast<int>(starts.size());
  est.lambda0 = est.diagnostics.value / w(x);
  est.minimizer = est.diagnostics.witness / std::pow(w(x), 1.0 / g.p());
  return est;
}

HardyEstimate hardy_rayleigh(const Graph& g, const VertexFunction& w, const HardyOptions& opts) {
  const Index n = g.size();
  const double p = g.p();
  auto den = [&w, p](const Eigen::VectorXd& phi) {
    double s = 0.0;
    for (Index i = 0; i < phi.size(); ++i) s += w(i) * abspow(phi(i), p);
    return s;
  };
  auto den_grad = [&w, p](const Eigen::VectorXd& phi) {
    Eigen::VectorXd out(phi.size());
    for (Index i = 0; i < phi.size(); ++i) out(i) = p * w(i) * sgnpow(phi(i), p - 1);
    return out;
  };
  BoxProblem prob;
  prob.value = [&g, den](const Eigen::VectorXd& phi) { return energy_value(g, phi) / den(phi); };
  prob.gradient = [&g, den, den_grad](const Eigen::VectorXd& phi) {
    const double d = den(phi), r = energy_value(g, phi) / d;
    return Eigen::VectorXd((energy_gradient(g, phi) - r * den_grad(phi)) / d);
  };
  prob.hessian = [&g, &w, p, den, den_grad](const Eigen::VectorXd& phi) {
    const double d = den(phi), r = energy_value(g, phi) / d;
    const Eigen::VectorXd gn = den_grad(phi);
    const Eigen::VectorXd gr = (energy_gradient(g, phi) - r * gn) / d;
    Eigen::MatrixXd h = energy_hessian(g, phi, 1e-8);
    for (Index i = 0; i < phi.size(); ++i) {
      double t = std::abs(phi(i));
      if (p < 2) t = std::max(t, 1e-8);
      if (w(i) > 0 && t > 0) h(i, i) -= r * p * (p - 1) * w(i) * std::pow(t, p - 2);
    }
    h -= gn * gr.transpose() + gr * gn.transpose();
    return Eigen::MatrixXd(h / d);
  };
  prob.lower = VertexFunction::Zero(n);
  prob.upper = VertexFunction::Constant(n, std::numeric_limits<double>::infinity());
  prob.normalize = [den, p](Eigen::VectorXd& phi) {
    const double d = den(phi);
    if (d > 0) phi /= std::pow(d, 1.0 / p);
  };

  std::vector<VertexFunction> starts;
  const HardyEstimate e2 = hardy_constant_p2(g, w.cwiseQuotient(g.measure()));
  if (!e2.indefinite) {
    VertexFunction s = e2.minimizer.cwiseAbs();
    if (den(s) > 0) starts.push_back(s);
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  for (int k = 0; k < opts.starts; ++k) {
    VertexFunction s(n);
    for (Index i = 0; i < n; ++i) s(i) = unif(rng);
    starts.push_back(s);
  }
  HardyEstimate est;
  bool first = true;
  for (const auto& s : starts) {
    SolveResult r = minimize_box(prob, s, opts.solver);
    if (first || r.value < est.diagnostics.value) {
      est.diagnostics = r;
      first = false;
    }
  }
  est.diagnostics.starts = static_cast<int>(starts.size());
  est.lambda0 = est.diagnostics.value;
  est.minimizer = est.diagnostics.witness;
  return est;
}

}  // namespace

HardyEstimate hardy_constant(const Graph& g, const VertexFunction& weight, const HardyOptions& opts) {
  if (g.p() == 2.0) return hardy_constant_p2(g, weight, opts.zero_threshold);
  const VertexFunction w = weight_measure(g, weight);
  const VertexSet S = support(w);
  HardyEstimate est = S.size() == 1 ? hardy_single_vertex(g, w, S.front(), opts) : hardy_rayleigh(g, w, opts);
  const double scale = 1.0 + energy_matrix(g).cwiseAbs().maxCoeff();
  est.indefinite = est.lambda0 < -1e-10 * scale;
  est.norm_H = est.lambda0 > opts.zero_threshold * scale ? 1.0 / est.lambda0 : kInfinity;
  return est;
}

// ---------------------------------------------------------------------------

namespace {

}  // namespace

MazyaEstimate mazya_norm(const Graph& g, const VertexFunction& weight, const VertexFunction& u,
                         const MazyaOptions& opts) {
  const Index n = g.size();
  if (weight.size() != n || u.size() != n) throw InputError("mazya_norm: weight or u has wrong length");
  if (opts.subset_cap < 0) throw InputError("mazya_norm: subset cap must be positive");
  if (is_supersolution(g, u).verdict == SolutionClass::neither)
    throw PreconditionError("mazya_norm: u must be a positive supersolution");
  const double p = g.p();
  VertexFunction dens(n);
  for (Index x = 0; x < n; ++x) dens(x) = g.measure()(x) * std::pow(u(x), p) * std::abs(weight(x));

  MazyaEstimate est;
  auto consider = [&](const VertexSet& K) {
    if (std::isinf(est.norm_Hu)) return;
    double num = 0.0;
    for (Index x : K) num += dens(x);
    if (num <= 0) return;
    MazyaRow row;
    row.K = K;
    row.numerator = num;
    row.capacity = capacity(g, u, K, CapacityVariant::standard, opts.capacity).value;
    row.quotient = row.capacity < opts.zero_threshold ? kInfinity : num / row.capacity;
    if (est.table.empty() || row.quotient > est.norm_Hu) {
      est.norm_Hu = row.quotient;
      est.argmax_set = K;
    }
    est.table.push_back(std::move(row));
  };

  const bool all_sizes = opts.subset_cap == 0 || opts.subset_cap >= n;
  if (n <= opts.exhaustive_limit && !opts.connected_only) {
    const int cap = all_sizes ? static_cast<int>(n) : opts.subset_cap;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      if (std::popcount(mask) > cap) continue;
      VertexSet K;
      for (Index x = 0; x < n; ++x)
        if (mask >> x & 1) K.push_back(x);
      consider(K);
    }
    est.exhaustive = all_sizes;
  } else {
    const int cap = opts.subset_cap == 0 ? std::min<int>(8, static_cast<int>(n)) : opts.subset_cap;
    for_each_connected_subset(adjacency_lists(n, g.weights()), cap, consider);
    est.exhaustive = false;
  }
  return est;
}

MazyaSandwichReport mazya_sandwich_check(const Graph& g, const VertexFunction& weight, const VertexFunction& u,
                                         int max_vertices, double tol, const MazyaOptions& opts,
                                         const HardyOptions& hopts) {
  if (g.size() > max_vertices)
    throw InputError("mazya_sandwich_check: |X| = " + std::to_string(g.size()) + " exceeds the enumeration bound " +
                     std::to_string(max_vertices));
  MazyaSandwichReport r;
  MazyaOptions full = opts;
  full.exhaustive_limit = std::max(full.exhaustive_limit, max_vertices);
  full.connected_only = false;
  full.subset_cap = 0;
  r.hardy = hardy_constant(g, weight, hopts);
  r.mazya = mazya_norm(g, weight, u, full);
  r.norm_H = r.hardy.norm_H;
  r.norm_Hu = r.mazya.norm_Hu;
  r.lower_holds = std::isinf(r.norm_H) || r.norm_Hu <= r.norm_H + tol;
  r.ratio = r.norm_H / r.norm_Hu;
  r.ratio_holds = std::isfinite(r.ratio) && r.ratio >= 1.0 - 1e-9;
  return r;
}

}  // namespace psch
