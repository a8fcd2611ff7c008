#include "psch/hardy.hpp"

#include <random>

namespace psch {

const char* to_string(Verdict v) { return v == Verdict::critical ? "critical" : "subcritical"; }

CriticalizeResult criticalize(const Graph& g, Index x, const HardyOptions& opts, double zero_threshold) {
  if (x < 0 || x >= g.size()) throw InputError("criticalize: unknown vertex");
  const VertexFunction one_x = indicator(g.size(), {x});
  const HardyEstimate est = hardy_constant(g, one_x, opts);
  if (est.indefinite) throw PreconditionError("criticalize: Q is not nonnegative");
  double c0 = est.lambda0;
  bool critical = c0 <= zero_threshold;
  if (critical) c0 = 0.0;
  VertexFunction c = g.potential();
  c(x) -= c0 * g.measure()(x);
  Graph crit = g.with_potential(c);
  const double post = hardy_constant(crit, one_x, opts).lambda0;
  return CriticalizeResult{c0, critical, std::move(crit), post};
}

CriticalityReport null_sequence(const Graph& g, const VertexFunction& psi, const ExhaustionPlan& plan,
                                const VertexSet& domain, double zero_threshold) {
  const Index n = g.size();
  if (psi.size() != n) throw InputError("null_sequence: psi has wrong length");
  const HardyEstimate whole = hardy_constant(g, VertexFunction::Ones(n));
  if (!(whole.lambda0 <= zero_threshold))
    throw PreconditionError("null_sequence: instance is subcritical (lambda0 = " + std::to_string(whole.lambda0) + ")");

  VertexSet Y = domain;
  if (Y.empty()) {
    Y.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) Y[i] = i;
  }
  std::sort(Y.begin(), Y.end());
  std::vector<Index> local(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < Y.size(); ++k) local[Y[k]] = static_cast<Index>(k);
  const Graph gy = Y.size() == static_cast<std::size_t>(n) ? g : restrict(g, Y);
  VertexFunction psi_y(gy.size());
  for (std::size_t k = 0; k < Y.size(); ++k) psi_y(static_cast<Index>(k)) = psi(Y[k]);

  CriticalityReport rep;
  rep.verdict = Verdict::critical;
  CapacityOptions copts;
  copts.starts = 2;
  for (std::size_t s = 0; s < plan.size(); ++s) {
    VertexSet K;
    for (Index x : plan[s]) {
      if (local[x] < 0) throw InputError("null_sequence: exhaustion set leaves the domain");
      K.push_back(local[x]);
    }
    const CapacityResult r = capacity(gy, psi_y, K, CapacityVariant::tilde, copts);
    VertexFunction phi = VertexFunction::Zero(n);
    for (std::size_t k = 0; k < Y.size(); ++k) phi(Y[k]) = r.minimizer(static_cast<Index>(k));
    if (!rep.null_sequence_energies.empty())
      rep.monotone = rep.monotone &&
                     r.value >= rep.null_sequence_energies.back() - 1e-12 * std::max(1.0, std::abs(r.value));
    rep.null_sequence_energies.push_back(r.value);
    rep.minimizers.push_back(std::move(phi));
  }
  if (!rep.minimizers.empty()) rep.ground_state = rep.minimizers.back();
  return rep;
}

VertexFunction ground_state(const Graph& g, std::optional<Index> probe, double zero_threshold, double residual_tol) {
  const Index n = g.size();
  const Index o = probe ? *probe : g.probe_vertex();
  if (o < 0 || o >= n) throw InputError("ground_state: unknown probe vertex");
  VertexFunction psi = VertexFunction::Ones(n);
  if (n > 1) {
    const VertexSet N = complement(n, {o});
    const Index nn = static_cast<Index>(N.size());
    const Eigen::MatrixXd h = energy_matrix(g);
    Eigen::MatrixXd a(nn, nn);
    Eigen::VectorXd rhs(nn);
    for (Index i = 0; i < nn; ++i) {
      rhs(i) = -h(N[i], o);
      for (Index j = 0; j < nn; ++j) a(i, j) = h(N[i], N[j]);
    }
    Eigen::VectorXd lin = a.ldlt().solve(rhs);
    for (Index i = 0; i < nn; ++i) psi(N[i]) = lin(i);
    if (g.p() != 2.0) {
      BoxProblem prob;
      prob.value = [&g](const Eigen::VectorXd& phi) { return energy_value(g, phi); };
      prob.gradient = [&g](const Eigen::VectorXd& phi) { return energy_gradient(g, phi); };
      prob.hessian = [&g](const Eigen::VectorXd& phi) { return energy_hessian(g, phi, 1e-8); };
      prob.lower = VertexFunction::Zero(n);
      prob.upper = VertexFunction::Constant(n, std::numeric_limits<double>::infinity());
      prob.lower(o) = prob.upper(o) = 1.0;
      SolverOptions so;
      so.tol = 1e-12;
      SolveResult best = minimize_box(prob, VertexFunction::Ones(n), so);
      if (psi.allFinite() && psi.minCoeff() > 0) {
        SolveResult alt = minimize_box(prob, psi, so);
        if (alt.value < best.value) best = alt;
      }
      psi = best.witness;
    }
  }
  const double q = energy_value(g, psi);
  if (!(std::abs(q) <= zero_threshold))
    throw PreconditionError("ground_state: instance is not critical (Q(psi) = " + std::to_string(q) + ")");
  if (!(psi.minCoeff() > 0)) throw SolverError("ground_state: computed solution is not strictly positive");
  const double res = schrodinger(g, psi).cwiseAbs().maxCoeff();
  if (!(res <= residual_tol)) throw SolverError("ground_state: residual " + std::to_string(res) + " above tolerance");
  return psi;
}

VertexFunction green_function(const Graph& g, Index x, const CapacityOptions& opts) {
  const Index n = g.size();
  if (x < 0 || x >= n) throw InputError("green_function: unknown vertex");
  const Eigen::MatrixXd h = energy_matrix(g);
  Eigen::LLT<Eigen::MatrixXd> llt(h);
  VertexFunction u2;
  bool have_linear = false;
  if (llt.info() == Eigen::Success) {
    u2 = llt.solve(indicator(n, {x}));
    have_linear = u2.allFinite() && u2.minCoeff() > 0;
  }
  if (g.p() == 2.0) {
    if (llt.info() != Eigen::Success) throw PreconditionError("green_function: singular energy (critical instance)");
    if (!have_linear) throw SolverError("green_function: solution is not strictly positive");
    return u2;
  }

  const double p = g.p();
  BoxProblem prob;
  prob.value = [&g, x, p](const Eigen::VectorXd& phi) { return energy_value(g, phi) - p * phi(x); };
  prob.gradient = [&g, x, p](const Eigen::VectorXd& phi) {
    Eigen::VectorXd gr = energy_gradient(g, phi);
    gr(x) -= p;
    return gr;
  };
  prob.hessian = [&g, &opts](const Eigen::VectorXd& phi) { return energy_hessian(g, phi, opts.hessian_floor); };
  prob.lower = VertexFunction::Zero(n);
  prob.upper = VertexFunction::Constant(n, std::numeric_limits<double>::infinity());
  std::vector<VertexFunction> starts;
  if (have_linear) starts.push_back(u2);
  starts.push_back(VertexFunction::Ones(n));
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  const bool convex = g.potential().minCoeff() >= 0;
  const int extra = convex ? 0 : opts.starts;
  for (int k = 0; k < extra; ++k) {
    VertexFunction s(n);
    for (Index i = 0; i < n; ++i) s(i) = unif(rng);
    starts.push_back(s);
  }
  SolverOptions so = opts.solver;
  so.tol = std::min(so.tol, 1e-11);
  SolveResult best;
  bool first = true;
  for (const auto& s : starts) {
    SolveResult r = minimize_box(prob, s, so);
    if (first || r.value < best.value) {
      best = r;
      first = false;
    }
  }
  const VertexFunction& u = best.witness;
  if (!std::isfinite(best.value) || best.value < -1e12 || u.cwiseAbs().maxCoeff() > 1e12)
    throw PreconditionError("green_function: energy is unbounded below (critical instance)");
  if (!(u.minCoeff() > 0)) throw SolverError("green_function: solution is not strictly positive");
  VertexFunction q = schrodinger(g, u);
  q(x) -= 1.0 / g.measure()(x);
  if (!(q.cwiseAbs().maxCoeff() <= residual_tolerance(p) * std::max(1.0, u.maxCoeff())))
    throw SolverError("green_function: Euler-Lagrange residual above tolerance");
  return u;
}

KpReport kp_check(const Graph& g, const VertexFunction& weight, const VertexFunction& u, Index x,
                  const ExhaustionPlan& plan, double slack, const HardyOptions& opts) {
  const Index n = g.size();
  if (weight.size() != n || u.size() != n) throw InputError("kp_check: weight or u has wrong length");
  KpReport rep;
  rep.norm_H = hardy_constant(g, weight, opts).norm_H;
  rep.c0 = criticalize(g, x, opts).c0;
  rep.psi_x = u(x);
  const double p = g.p();
  const double tail = rep.c0 * g.measure()(x) * std::pow(rep.psi_x, p);
  for (std::size_t s = 0; s < plan.size(); ++s) {
    KpStage st;
    st.n = s + 1;
    for (Index y : plan[s]) st.partial_sum += g.measure()(y) * std::abs(weight(y)) * std::pow(u(y), p);
    st.bound = rep.norm_H * (1.0 / static_cast<double>(st.n) + tail);
    st.holds = st.partial_sum <= st.bound + slack;
    rep.holds = rep.holds && st.holds;
    rep.stages.push_back(st);
  }
  return rep;
}

std::vector<double> lambda_infty(const Graph& g, const VertexFunction& weight, const ExhaustionPlan& plan,
                                 const HardyOptions& opts) {
  std::vector<double> out;
  for (std::size_t s = 0; s < plan.size(); ++s) {
    const VertexSet rest = complement(g.size(), plan[s]);
    if (rest.empty()) {
      out.push_back(kInfinity);
      continue;
    }
    const Graph sub = restrict(g, rest);
    VertexFunction w(sub.size());
    for (std::size_t k = 0; k < rest.size(); ++k) w(static_cast<Index>(k)) = weight(rest[k]);
    double best = kInfinity;
    for (const auto& comp : sub.components()) {
      VertexFunction wc(static_cast<Index>(comp.size()));
      for (std::size_t k = 0; k < comp.size(); ++k) wc(static_cast<Index>(k)) = w(comp[k]);
      if (!(wc.cwiseAbs().maxCoeff() > 0)) continue;
      const Graph gc = comp.size() == static_cast<std::size_t>(sub.size()) ? sub : restrict(sub, comp);
      best = std::min(best, hardy_constant(gc, wc, opts).lambda0);
    }
    out.push_back(best);
  }
  return out;
}

GapReport spectral_gap_and_minimizer_check(const Graph& g, const VertexFunction& weight, const ExhaustionPlan& plan,
                                           double margin, double tol, const HardyOptions& opts) {
  GapReport rep;
  const HardyEstimate est = hardy_constant(g, weight, opts);
  rep.lambda0 = est.lambda0;
  rep.lambda_sequence = lambda_infty(g, weight, plan, opts);
  rep.lambda_infty = rep.lambda_sequence.empty() ? kInfinity : rep.lambda_sequence.back();
  rep.gap = std::isinf(rep.lambda_infty) ? std::isfinite(rep.lambda0) : rep.lambda0 < rep.lambda_infty * (1.0 - margin);
  if (!rep.gap) return rep;

  const double p = g.p();
  const VertexFunction w = g.measure().cwiseProduct(weight.cwiseAbs());
  const Graph shifted = g.with_potential(g.potential() - rep.lambda0 * w);
  rep.ground_state = ground_state(shifted);
  const CriticalityReport nulls = null_sequence(shifted, rep.ground_state, plan);
  rep.null_energies = nulls.null_sequence_energies;
  rep.critical_after_shift = true;
  for (double e : rep.null_energies) rep.critical_after_shift = rep.critical_after_shift && std::abs(e) <= 1e-7;

  rep.q_psi = energy_value(g, rep.ground_state);
  double num = 0.0;
  for (Index x = 0; x < g.size(); ++x) num += w(x) * std::pow(rep.ground_state(x), p);
  rep.saturation = std::abs(rep.q_psi - rep.lambda0 * num);
  rep.saturates = rep.saturation <= tol * std::abs(rep.q_psi) + 1e-12;

  for (std::size_t s = 0; s < plan.size(); ++s) {
    double acc = 0.0;
    for (Index x : plan[s]) {
      const double psip = std::pow(rep.ground_state(x), p);
      acc += w(x) * psip + std::max(0.0, -g.potential()(x)) * psip;
    }
    rep.partial_sums.push_back(acc);
  }
  return rep;
}

}  // namespace psch
