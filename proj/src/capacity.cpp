#include "psch/capacity.hpp"

#include <memory>
#include <random>

namespace psch {

const char* to_string(CapacityVariant v) {
  switch (v) {
    case CapacityVariant::standard: return "standard";
    case CapacityVariant::tilde: return "tilde";
    default: return "sim";
  }
}

CapacityVariant capacity_variant_from_string(const std::string& s) {
  if (s == "standard") return CapacityVariant::standard;
  if (s == "tilde") return CapacityVariant::tilde;
  if (s == "sim") return CapacityVariant::sim;
  throw InputError("unknown capacity variant '" + s + "'");
}

namespace {

void check_inputs(const Graph& g, const VertexFunction& u, const VertexSet& K, const char* who) {
  if (K.empty()) throw InputError(std::string(who) + ": K must be nonempty");
  if (u.size() != g.size()) throw InputError(std::string(who) + ": u has wrong length");
  for (Index x : K)
    if (x < 0 || x >= g.size()) throw InputError(std::string(who) + ": K contains an unknown vertex");
  for (Index x = 0; x < g.size(); ++x)
    if (!(u(x) > 0)) throw PreconditionError(std::string(who) + ": u must be strictly positive");
}

bool nonnegative_potential(const Graph& g) { return g.potential().minCoeff() >= 0; }

double sgn1(double t) { return t < 0 ? -1.0 : 1.0; }

}  // namespace

// ---------------------------------------------------------------------------

SimplifiedObjective::SimplifiedObjective(const Graph& graph, const VertexFunction& uu, double fl)
    : g(&graph), u(uu), floor(fl) {
  const VertexFunction q = schrodinger(graph, u);
  weight = graph.measure().cwiseProduct(u).cwiseProduct(q);
}

double SimplifiedObjective::value(const VertexFunction& phi) const {
  const double p = g->p();
  double half = 0.0;
  for (const auto& e : g->weights().entries()) {
    const double s = std::abs(phi(e.u) - phi(e.v));
    if (s == 0.0) continue;
    const double uu = u(e.u) * u(e.v);
    const double B = std::abs(u(e.u) - u(e.v)) * 0.5 * (std::abs(phi(e.u)) + std::abs(phi(e.v))) + std::sqrt(uu) * s;
    half += e.w * uu * s * s * std::pow(B, p - 2);
  }
  double pot = 0.0;
  for (Index x = 0; x < g->size(); ++x) pot += weight(x) * abspow(phi(x), p);
  return 2.0 * half + pot;
}

VertexFunction SimplifiedObjective::gradient(const VertexFunction& phi) const {
  const double p = g->p(), q = p - 2;
  VertexFunction grad = VertexFunction::Zero(g->size());
  for (const auto& e : g->weights().entries()) {
    const double d = phi(e.u) - phi(e.v);
    const double s = std::abs(d);
    if (s == 0.0) continue;
    const double uu = u(e.u) * u(e.v);
    const double a = std::abs(u(e.u) - u(e.v)), r = std::sqrt(uu);
    const double B = a * 0.5 * (std::abs(phi(e.u)) + std::abs(phi(e.v))) + r * s;
    const double k = 2.0 * e.w * uu;  // ordered-pair doubling
    const double sd = sgn1(d);
    const double bx = a * 0.5 * sgn1(phi(e.u)) + r * sd;
    const double by = a * 0.5 * sgn1(phi(e.v)) - r * sd;
    const double Bq = std::pow(B, q), Bq1 = std::pow(B, q - 1);
    grad(e.u) += k * (2.0 * d * Bq + q * s * s * Bq1 * bx);
    grad(e.v) += k * (-2.0 * d * Bq + q * s * s * Bq1 * by);
  }
  for (Index x = 0; x < g->size(); ++x) grad(x) += p * weight(x) * sgnpow(phi(x), p - 1);
  return grad;
}

Eigen::MatrixXd SimplifiedObjective::hessian(const VertexFunction& phi) const {
  const double p = g->p(), q = p - 2;
  const Index n = g->size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g->weights().entries()) {
    const double d = phi(e.u) - phi(e.v);
    const double s = std::abs(d);
    const double uu = u(e.u) * u(e.v);
    const double a = std::abs(u(e.u) - u(e.v)), r = std::sqrt(uu);
    double B = a * 0.5 * (std::abs(phi(e.u)) + std::abs(phi(e.v))) + r * s;
    if (p < 2) B = std::max(B, floor);
    if (B == 0.0) continue;
    const double k = 2.0 * e.w * uu;
    const double sd = sgn1(d);
    const double sv[2] = {sd, -sd};
    const double bv[2] = {a * 0.5 * sgn1(phi(e.u)) + r * sd, a * 0.5 * sgn1(phi(e.v)) - r * sd};
    const Index idx[2] = {e.u, e.v};
    const double Bq = std::pow(B, q), Bq1 = std::pow(B, q - 1), Bq2 = std::pow(B, q - 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        h(idx[i], idx[j]) += k * (2.0 * sv[i] * sv[j] * Bq + 2.0 * q * s * Bq1 * (sv[i] * bv[j] + sv[j] * bv[i]) +
                                  q * (q - 1) * s * s * Bq2 * bv[i] * bv[j]);
  }
  for (Index x = 0; x < n; ++x) {
    double t = std::abs(phi(x));
    if (p < 2) t = std::max(t, floor);
    if (t > 0) h(x, x) += p * (p - 1) * weight(x) * std::pow(t, p - 2);
  }
  return h;
}

// ---------------------------------------------------------------------------

namespace {

CapacityResult run_starts(const BoxProblem& prob, std::vector<VertexFunction> starts, const SolverOptions& solver) {
  CapacityResult best;
  best.value = std::numeric_limits<double>::infinity();
  int k = 0;
  for (const auto& s : starts) {
    SolveResult r = minimize_box(prob, s, solver);
    if (k == 0 || r.value < best.value) {
      best.value = r.value;
      best.minimizer = r.witness;
      best.diagnostics = r;
      best.best_start = k;
    }
    ++k;
  }
  best.diagnostics.starts = static_cast<int>(starts.size());
  return best;
}

}  // namespace

CapacityResult capacity(const Graph& g, const VertexFunction& u, const VertexSet& K, CapacityVariant variant,
                        const CapacityOptions& opts) {
  check_inputs(g, u, K, "capacity");
  const Index n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  const VertexFunction ind = indicator(n, K);

  BoxProblem prob;
  std::vector<VertexFunction> starts;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  if (variant == CapacityVariant::sim) {
    if (is_supersolution(g, u).verdict == SolutionClass::neither)
      throw PreconditionError("capacity: the sim variant requires u to be a supersolution");
    auto obj = std::make_shared<SimplifiedObjective>(g, u, opts.hessian_floor);
    prob.value = [obj](const Eigen::VectorXd& x) { return obj->value(x); };
    prob.gradient = [obj](const Eigen::VectorXd& x) { return obj->gradient(x); };
    prob.hessian = [obj](const Eigen::VectorXd& x) { return obj->hessian(x); };
    prob.lower = ind;
    prob.upper = VertexFunction::Constant(n, inf);
    starts.push_back(VertexFunction::Ones(n));
    starts.push_back(ind);
    while (static_cast<int>(starts.size()) < opts.starts) {
      VertexFunction s(n);
      for (Index x = 0; x < n; ++x) s(x) = ind(x) + unif(rng);
      starts.push_back(s);
    }
  } else {
    const double floor = opts.hessian_floor;
    prob.value = [&g](const Eigen::VectorXd& x) { return energy_value(g, x); };
    prob.gradient = [&g](const Eigen::VectorXd& x) { return energy_gradient(g, x); };
    prob.hessian = [&g, floor](const Eigen::VectorXd& x) { return energy_hessian(g, x, floor); };
    prob.lower = ind.cwiseProduct(u);
    prob.upper = variant == CapacityVariant::tilde ? u : VertexFunction::Constant(n, inf);
    starts.push_back(u);
    starts.push_back(prob.lower);
    while (static_cast<int>(starts.size()) < opts.starts) {
      VertexFunction s(n);
      for (Index x = 0; x < n; ++x) {
        const double r = unif(rng);
        s(x) = u(x) * (variant == CapacityVariant::tilde ? std::max(ind(x), r) : ind(x) + r);
      }
      starts.push_back(s);
    }
  }
  starts.resize(static_cast<std::size_t>(std::max(1, opts.starts)));
  for (const auto& s : opts.extra_starts) {
    if (s.size() != n) throw InputError("capacity: extra start has wrong length");
    starts.push_back(s);
  }

  CapacityResult res = run_starts(prob, std::move(starts), opts.solver);
  res.variant = variant;
  res.certified = variant != CapacityVariant::sim && nonnegative_potential(g) && res.diagnostics.converged;
  res.diagnostics.certified = res.certified;
  return res;
}

CapacityResult capacity_oracle_p2(const Graph& g, const VertexSet& K) {
  if (g.p() != 2.0) throw PreconditionError("capacity_oracle_p2: requires p = 2");
  if (!nonnegative_potential(g)) throw PreconditionError("capacity_oracle_p2: requires c >= 0");
  if (K.empty()) throw InputError("capacity_oracle_p2: K must be nonempty");
  const Index n = g.size();
  const VertexFunction ind = indicator(n, K);
  const VertexSet F = complement(n, K);
  VertexFunction phi = ind;
  if (!F.empty()) {
    const Eigen::MatrixXd h = energy_matrix(g);
    const Index nf = static_cast<Index>(F.size());
    Eigen::MatrixXd a(nf, nf);
    Eigen::VectorXd rhs(nf);
    for (Index i = 0; i < nf; ++i) {
      rhs(i) = 0.0;
      for (Index k : K) rhs(i) -= h(F[i], k);
      for (Index j = 0; j < nf; ++j) a(i, j) = h(F[i], F[j]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) throw SolverError("capacity_oracle_p2: singular system (critical instance)");
    const Eigen::VectorXd sol = llt.solve(rhs);
    for (Index i = 0; i < nf; ++i) phi(F[i]) = sol(i);
  }
  CapacityResult r;
  r.value = energy_value(g, phi);
  r.minimizer = phi;
  r.variant = CapacityVariant::standard;
  r.certified = true;
  r.diagnostics.value = r.value;
  r.diagnostics.witness = phi;
  r.diagnostics.converged = r.diagnostics.certified = true;
  r.diagnostics.grad_norm = projected_gradient_norm(phi, energy_gradient(g, phi), ind, VertexFunction::Constant(n, std::numeric_limits<double>::infinity()));
  return r;
}

CapacityResult capacity_substituted(const Graph& g, const VertexFunction& u, const VertexSet& K,
                                    const CapacityOptions& opts) {
  check_inputs(g, u, K, "capacity_substituted");
  const Index n = g.size();
  const VertexFunction ind = indicator(n, K);
  const double floor = opts.hessian_floor;
  BoxProblem prob;
  prob.value = [&g, &u](const Eigen::VectorXd& psi) { return energy_value(g, VertexFunction(psi.cwiseProduct(u))); };
  prob.gradient = [&g, &u](const Eigen::VectorXd& psi) {
    return VertexFunction(energy_gradient(g, VertexFunction(psi.cwiseProduct(u))).cwiseProduct(u));
  };
  prob.hessian = [&g, &u, floor](const Eigen::VectorXd& psi) {
    Eigen::MatrixXd h = energy_hessian(g, VertexFunction(psi.cwiseProduct(u)), floor);
    return Eigen::MatrixXd(u.asDiagonal() * h * u.asDiagonal());
  };
  prob.lower = ind;
  prob.upper = VertexFunction::Constant(n, std::numeric_limits<double>::infinity());
  std::vector<VertexFunction> starts{VertexFunction::Ones(n), ind};
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  while (static_cast<int>(starts.size()) < opts.starts) {
    VertexFunction s(n);
    for (Index x = 0; x < n; ++x) s(x) = ind(x) + unif(rng);
    starts.push_back(s);
  }
  starts.resize(static_cast<std::size_t>(std::max(1, opts.starts)));
  CapacityResult res = run_starts(prob, std::move(starts), opts.solver);
  res.minimizer = res.minimizer.cwiseProduct(u);
  res.certified = nonnegative_potential(g) && res.diagnostics.converged;
  return res;
}

EquivalenceReport equivalence_report(const Graph& g, const VertexFunction& u, const VertexSet& K,
                                     const CapacityOptions& opts, double zero_threshold) {
  EquivalenceReport r;
  r.tilde = capacity(g, u, K, CapacityVariant::tilde, opts);
  // The tilde box is contained in the standard one, so its minimizer is a valid start.
  CapacityOptions with_tilde = opts;
  with_tilde.extra_starts.push_back(r.tilde.minimizer);
  r.standard = capacity(g, u, K, CapacityVariant::standard, with_tilde);
  r.sim = capacity(g, u, K, CapacityVariant::sim, opts);
  r.unit = capacity(g, VertexFunction::Ones(g.size()), K, CapacityVariant::standard, opts);
  r.ordering_holds = r.standard.value <= r.tilde.value;
  const bool zu = r.standard.value < zero_threshold;
  const bool z1 = r.unit.value < zero_threshold;
  r.zero_sets_agree = zu == z1;
  auto ratio = [](double a, double b) { return b != 0.0 ? a / b : std::numeric_limits<double>::quiet_NaN(); };
  r.ratio_tilde_standard = ratio(r.tilde.value, r.standard.value);
  r.ratio_sim_standard = ratio(r.sim.value, r.standard.value);
  r.ratio_standard_unit = ratio(r.standard.value, r.unit.value);
  return r;
}

}  // namespace psch
