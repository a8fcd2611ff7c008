#include "psch/cheeger.hpp"

#include <bit>

namespace psch {

namespace {

struct SetScore {
  double ratio = kInfinity;
  VertexSet set;
};

void offer(SetScore& best, double ratio, const VertexSet& set) {
  if (best.set.empty() || ratio < best.ratio || (ratio == best.ratio && set < best.set)) {
    best.ratio = ratio;
    best.set = set;
  }
}

double set_ratio(const EdgeTableD& a, const VertexFunction& mu, const VertexFunction& exterior,
                 const std::vector<char>& in, const VertexSet& set) {
  double boundary = 0.0, mass = 0.0;
  for (const auto& e : a.entries())
    if (in[e.u] != in[e.v]) boundary += e.w;
  for (Index x : set) {
    boundary += exterior(x);
    mass += mu(x);
  }
  return boundary / mass;
}

// sup_x (sum_y a(x,y) + exterior(x)) / mu(x)
double degree_bound(const EdgeTableD& a, const VertexFunction& exterior, const VertexFunction& mu) {
  VertexFunction deg = exterior;
  for (const auto& e : a.entries()) {
    deg(e.u) += e.w;
    deg(e.v) += e.w;
  }
  double d = 0.0;
  for (Index x = 0; x < mu.size(); ++x) d = std::max(d, deg(x) / mu(x));
  return d;
}

BoundAssertion assert_le(std::string name, double lhs, double rhs, double tol) {
  BoundAssertion a;
  a.name = std::move(name);
  a.lhs = lhs;
  a.rhs = rhs;
  if (std::isinf(rhs) && rhs > 0) {
    a.slack = kInfinity;
    a.passed = true;
  } else if (std::isinf(lhs) && lhs > 0) {
    a.slack = -kInfinity;
    a.passed = false;
  } else {
    a.slack = rhs - lhs;
    a.passed = lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
  }
  return a;
}

double inv_pow(double base, double p) {
  if (base == 0) return kInfinity;
  return 1.0 / std::pow(base, p);
}

}  // namespace

CheegerResult cheeger_constant(const EdgeTableD& a, const VertexFunction& mu, const VertexFunction& exterior,
                               const CheegerOptions& opts) {
  const Index n = mu.size();
  if (exterior.size() != n) throw InputError("exterior has wrong length");
  for (Index x = 0; x < n; ++x) {
    if (!(mu(x) > 0)) throw InputError("Cheeger measure must be strictly positive");
    if (!(exterior(x) >= 0)) throw InputError("exterior weights must be nonnegative");
  }
  for (const auto& e : a.entries())
    if (!(e.w >= 0)) throw InputError("Cheeger weights must be nonnegative");

  const int cap = opts.size_cap <= 0 ? static_cast<int>(n) : std::min<int>(opts.size_cap, static_cast<int>(n));
  const int needed = opts.exclude_full ? static_cast<int>(n) - 1 : static_cast<int>(n);
  CheegerResult res;
  res.exhaustive = cap >= needed;
  SetScore best;
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  auto visit = [&](const VertexSet& set) {
    if (opts.exclude_full && static_cast<Index>(set.size()) == n) return;
    for (Index x : set) in[x] = 1;
    offer(best, set_ratio(a, mu, exterior, in, set), set);
    for (Index x : set) in[x] = 0;
    ++res.enumerated_count;
  };

  if (!opts.connected_only && n <= opts.exhaustive_limit && n < 63) {
    const std::uint64_t total = std::uint64_t{1} << n;
    VertexSet set;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      if (std::popcount(mask) > cap) continue;
      set.clear();
      for (Index x = 0; x < n; ++x)
        if (mask >> x & 1) set.push_back(x);
      visit(set);
    }
  } else {
    // Minimizers can be taken connected: a ratio of sums is at least the least ratio.
    for_each_connected_subset(adjacency_lists(n, a), cap, visit);
  }
  res.h = best.ratio;
  res.argmin_set = best.set;
  return res;
}

CheegerResult cheeger_constant(const EdgeTableD& a, const VertexFunction& mu, const CheegerOptions& opts) {
  return cheeger_constant(a, mu, VertexFunction::Zero(mu.size()), opts);
}

IntrinsicReport is_p_intrinsic(const EdgeTableD& a, const VertexFunction& exterior, const VertexFunction& mu, double p,
                               const EdgeTableD& rho, double rho_exterior, double tol) {
  const Index n = mu.size();
  const double q = p / (p - 1);
  VertexFunction row = VertexFunction::Zero(n);
  for (const auto& e : a.entries()) {
    const double t = e.w * std::pow(rho(e.u, e.v), q);
    row(e.u) += t;
    row(e.v) += t;
  }
  const double ext_scale = std::pow(rho_exterior, q);
  IntrinsicReport rep;
  for (Index x = 0; x < n; ++x) {
    const double r = (row(x) + exterior(x) * ext_scale) / mu(x);
    if (rep.argmax < 0 || r > rep.max_row) {
      rep.max_row = r;
      rep.argmax = x;
    }
    if (r > 1.0 + tol) rep.violations.push_back(x);
  }
  rep.intrinsic = rep.violations.empty();
  return rep;
}

IntrinsicReport is_p_intrinsic(const Graph& g, const EdgeTableD& rho, const VertexFunction& weight,
                               double rho_exterior, double tol) {
  if (weight.size() != g.size()) throw InputError("weight has wrong length");
  const VertexFunction mu = g.measure().cwiseProduct(weight.cwiseAbs());
  const VertexFunction ext = g.potential().cwiseMax(0.0);
  return is_p_intrinsic(g.weights(), ext, mu, g.p(), rho, rho_exterior, tol);
}

IntrinsicScale intrinsic_scale(const Graph& g, const VertexFunction& weight) {
  if (weight.size() != g.size()) throw InputError("weight has wrong length");
  const VertexFunction mu = g.measure().cwiseProduct(weight.cwiseAbs());
  for (Index x = 0; x < g.size(); ++x)
    if (!(mu(x) > 0)) throw PreconditionError("weight must be strictly positive");
  IntrinsicScale s;
  s.D = degree_bound(g.weights(), g.potential().cwiseMax(0.0), mu);
  const double q = g.p() / (g.p() - 1);
  const double r = s.D > 0 ? std::pow(s.D, -1.0 / q) : 0.0;
  s.rho = g.weights().transformed([r](const EdgeD&) { return r; });
  s.rho_exterior = r;
  return s;
}

EdgeTableD ground_state_transform(const Graph& g, const VertexFunction& u) {
  if (u.size() != g.size()) throw InputError("u has wrong length");
  return g.weights().transformed([&u](const EdgeD& e) { return e.w * u(e.u) * u(e.v); });
}

double oscillation_bound(const Graph& g, const VertexFunction& u) {
  if (u.size() != g.size()) throw InputError("u has wrong length");
  double U = 1.0;
  bool any = false;
  for (const auto& e : g.weights().entries()) {
    if (!(e.w > 0)) continue;
    const double r = std::max(u(e.v) / u(e.u), u(e.u) / u(e.v));
    U = any ? std::max(U, r) : r;
    any = true;
  }
  return any ? std::max(U, 1.0) : 1.0;
}

const char* to_string(CheegerVariant v) {
  switch (v) {
    case CheegerVariant::general_p:
      return "general_p";
    case CheegerVariant::gst_p2:
      return "gst_p2";
  }
  return "?";
}

double cheeger_constant_factor(double p) { return std::pow(2.0, 1.0 - p) * std::pow(p, p); }

CheegerBoundsReport cheeger_bounds_report(const Graph& g, const VertexFunction& weight, CheegerVariant variant,
                                          const VertexFunction& u_in, const CheegerOptions& opts, double tol,
                                          const HardyOptions& hopts) {
  const Index n = g.size();
  if (weight.size() != n) throw InputError("weight has wrong length");
  const double p = g.p();
  const double q = p / (p - 1);
  const VertexFunction base_mu = g.measure().cwiseProduct(weight.cwiseAbs());
  for (Index x = 0; x < n; ++x)
    if (!(base_mu(x) > 0)) throw PreconditionError("weight must be strictly positive");

  EdgeTableD a;
  VertexFunction ext, mu;
  double U = 1.0;
  double D_base = 0.0;
  if (variant == CheegerVariant::general_p) {
    if (g.potential().minCoeff() < 0) throw PreconditionError("general_p requires a nonnegative potential");
    a = g.weights();
    ext = g.potential().cwiseMax(0.0);
    mu = base_mu;
    D_base = degree_bound(a, ext, mu);
  } else {
    if (p != 2) throw PreconditionError("gst_p2 requires p = 2");
    const VertexFunction u = u_in.size() == 0 ? VertexFunction::Ones(n) : u_in;
    if (u.size() != n) throw InputError("u has wrong length");
    if (!(u.minCoeff() > 0)) throw PreconditionError("u must be strictly positive");
    // kappa(x) = u(x) (sum_y b(x,y) (u(x) - u(y)) + c(x) u(x)) = m u Q'[u]
    VertexFunction flux = VertexFunction::Zero(n);
    for (const auto& e : g.weights().entries()) {
      flux(e.u) += e.w * (u(e.u) - u(e.v));
      flux(e.v) += e.w * (u(e.v) - u(e.u));
    }
    ext.resize(n);
    const double scale = 1.0 + u.cwiseAbs().maxCoeff() * (1.0 + g.potential().cwiseAbs().maxCoeff());
    for (Index x = 0; x < n; ++x) {
      const double kappa = u(x) * (flux(x) + g.potential()(x) * u(x));
      if (kappa < -1e-9 * scale * u(x)) throw PreconditionError("u is not a supersolution");
      ext(x) = std::max(kappa, 0.0);
    }
    a = ground_state_transform(g, u);
    mu.resize(n);
    for (Index x = 0; x < n; ++x) mu(x) = base_mu(x) * u(x) * u(x);
    U = oscillation_bound(g, u);
    D_base = degree_bound(g.weights(), g.potential().cwiseMax(0.0), base_mu);
  }

  CheegerBoundsReport rep;
  const HardyEstimate est = hardy_constant(g, weight, hopts);
  rep.norm_H = est.norm_H;
  rep.critical = std::isinf(est.norm_H);
  rep.U = U;
  rep.D = D_base;

  const double D_T = degree_bound(a, ext, mu);
  const double rho_val = D_T > 0 ? std::pow(D_T, -1.0 / q) : 0.0;
  const EdgeTableD a_rho = a.transformed([rho_val](const EdgeD& e) { return e.w * rho_val; });
  const VertexFunction ext_rho = ext * rho_val;

  const CheegerResult hr = cheeger_constant(a, mu, ext, opts);
  const CheegerResult hr_rho = cheeger_constant(a_rho, mu, ext_rho, opts);
  rep.h = hr.h;
  rep.h_rho = hr_rho.h;
  rep.exhaustive = hr.exhaustive && hr_rho.exhaustive;

  const double kp = cheeger_constant_factor(p);
  rep.lower_bound = inv_pow(rep.h, 1.0);
  rep.upper_intrinsic = kp * inv_pow(rep.h_rho, p);
  rep.upper_degree = kp * std::pow(D_T, p / q) * inv_pow(rep.h, p);
  rep.upper_oscillation = kp * U * std::pow(D_base, p / q) * inv_pow(rep.h, p);

  rep.assertions.push_back(assert_le("lower", rep.lower_bound, rep.norm_H, tol));
  if (rep.exhaustive) {
    rep.assertions.push_back(assert_le("upper_intrinsic", rep.norm_H, rep.upper_intrinsic, tol));
    rep.assertions.push_back(assert_le("upper_degree", rep.norm_H, rep.upper_degree, tol));
    // (U D)^{-1/q} must itself be intrinsic for the transformed data.
    const double s = U * D_base > 0 ? std::pow(U * D_base, -1.0 / q) : 0.0;
    const EdgeTableD rho_osc = a.transformed([s](const EdgeD&) { return s; });
    if (is_p_intrinsic(a, ext, mu, p, rho_osc, s, 1e-12).intrinsic)
      rep.assertions.push_back(assert_le("upper_oscillation", rep.norm_H, rep.upper_oscillation, tol));
  }
  return rep;
}

}  // namespace psch
