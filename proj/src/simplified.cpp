#include "psch/simplified.hpp"

#include <limits>

namespace psch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(const Graph& g, const VertexFunction& u, const char* who) {
  if (u.size() != g.size()) throw InputError(std::string(who) + ": u has wrong length");
  for (Index x = 0; x < g.size(); ++x)
    if (!(u(x) > 0)) throw PreconditionError(std::string(who) + ": u must be strictly positive");
}

}  // namespace

SimplifiedTerms simplified_terms(const Graph& g, const VertexFunction& u, const VertexFunction& phi) {
  require_positive(g, u, "simplified_terms");
  if (phi.size() != g.size()) throw InputError("simplified_terms: phi has wrong length");
  const double p = g.p();
  SimplifiedTerms out;
  double half = 0.0;
  for (const auto& e : g.weights().entries()) {
    const double dphi = std::abs(phi(e.u) - phi(e.v));
    double term = 0.0;
    if (dphi != 0.0) {
      const double uu = u(e.u) * u(e.v);
      const double bracket =
          std::abs(u(e.u) - u(e.v)) * 0.5 * (std::abs(phi(e.u)) + std::abs(phi(e.v))) + std::sqrt(uu) * dphi;
      if (bracket == 0.0)
        term = p < 2 ? kInf : 0.0;
      else
        term = e.w * uu * dphi * dphi * std::pow(bracket, p - 2);
    }
    out.terms.set(e.u, e.v, term);
    half += term;
  }
  out.total = 2.0 * half;
  const VertexFunction q = schrodinger(g, u);
  for (Index x = 0; x < g.size(); ++x)
    out.supersolution_term += g.measure()(x) * u(x) * q(x) * abspow(phi(x), p);
  return out;
}

double simplified_energy(const Graph& g, const VertexFunction& u, const VertexFunction& phi) {
  return simplified_terms(g, u, phi).total;
}

SandwichReport sandwich_report(const Graph& g, const VertexFunction& u, const VertexFunction& phi, double tol) {
  require_positive(g, u, "sandwich_report");
  const auto sup = is_supersolution(g, u, {}, tol);
  if (sup.verdict == SolutionClass::neither)
    throw PreconditionError("sandwich_report: u is not a supersolution");
  SandwichReport r;
  const VertexFunction uphi = u.cwiseProduct(phi);
  r.q_u_phi = energy_value(g, uphi);
  const SimplifiedTerms t = simplified_terms(g, u, phi);
  r.simplified = t.total;
  r.supersolution_term = t.supersolution_term;
  r.middle = r.simplified + r.supersolution_term;
  if (r.q_u_phi == 0.0) {
    r.consistent = r.middle == 0.0;
    r.ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    r.ratio = r.middle / r.q_u_phi;
  }
  r.identity_residual = g.p() == 2.0 ? std::abs(r.q_u_phi - 0.5 * r.simplified - r.supersolution_term)
                                     : std::numeric_limits<double>::quiet_NaN();
  return r;
}

// ---------------------------------------------------------------------------

PiecewiseLinear PiecewiseLinear::through(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw InputError("piecewise-linear contraction needs at least two points");
  bool anchored = false;
  PiecewiseLinear f;
  f.slopes.push_back(0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].first == 0.0) anchored = points[i].second == 0.0;
    f.breakpoints.push_back(points[i].first);
    if (i + 1 < points.size()) {
      const double dx = points[i + 1].first - points[i].first;
      if (!(dx > 0)) throw InputError("piecewise-linear contraction: abscissae must increase");
      f.slopes.push_back((points[i + 1].second - points[i].second) / dx);
    }
  }
  f.slopes.push_back(0.0);
  if (!anchored) throw InputError("piecewise-linear contraction must pass through (0, 0)");
  return f;
}

void check_contraction(const ContractionSpec& spec) {
  if (const auto* c = std::get_if<Clamp>(&spec)) {
    if (!(c->alpha >= 0) || !(c->beta >= 0)) throw InputError("clamp bounds must be nonnegative");
  } else if (const auto* f = std::get_if<PiecewiseLinear>(&spec)) {
    if (f->slopes.size() != f->breakpoints.size() + 1)
      throw InputError("piecewise-linear contraction: need one more slope than breakpoints");
    for (std::size_t i = 1; i < f->breakpoints.size(); ++i)
      if (!(f->breakpoints[i] > f->breakpoints[i - 1]))
        throw InputError("piecewise-linear contraction: breakpoints must increase");
    for (double s : f->slopes)
      if (!(std::abs(s) <= 1.0)) throw InputError("piecewise-linear contraction: slope exceeds 1 in absolute value");
  }
}

namespace {

// Integral of the slope function from 0 to t.
double integrate_slopes(const PiecewiseLinear& f, double t) {
  const double a = std::min(0.0, t), b = std::max(0.0, t);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.slopes.size(); ++i) {
    const double lo = i == 0 ? -kInf : f.breakpoints[i - 1];
    const double hi = i == f.breakpoints.size() ? kInf : f.breakpoints[i];
    const double len = std::min(hi, b) - std::max(lo, a);
    if (len > 0) acc += f.slopes[i] * len;
  }
  return t >= 0 ? acc : -acc;
}

}  // namespace

double apply_contraction(double t, const ContractionSpec& spec) {
  return std::visit(
      [t](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, AbsoluteValue>) return std::abs(t);
        else if constexpr (std::is_same_v<S, Clamp>) return std::min(std::max(t, -s.alpha), s.beta);
        else return integrate_slopes(s, t);
      },
      spec);
}

VertexFunction apply_contraction(const VertexFunction& phi, const ContractionSpec& spec) {
  check_contraction(spec);
  VertexFunction out(phi.size());
  for (Index i = 0; i < phi.size(); ++i) out(i) = apply_contraction(phi(i), spec);
  return out;
}

PiecewiseLinear random_contraction(std::mt19937_64& rng, int max_breaks, double range) {
  std::uniform_int_distribution<int> count(0, max_breaks);
  std::uniform_real_distribution<double> pos(-range, range);
  std::uniform_real_distribution<double> slope(-1.0, 1.0);
  PiecewiseLinear f;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) f.breakpoints.push_back(pos(rng));
  std::sort(f.breakpoints.begin(), f.breakpoints.end());
  f.breakpoints.erase(std::unique(f.breakpoints.begin(), f.breakpoints.end()), f.breakpoints.end());
  for (std::size_t i = 0; i <= f.breakpoints.size(); ++i) f.slopes.push_back(slope(rng));
  return f;
}

ContractionReport contraction_monotonicity_check(const Graph& g, const VertexFunction& u, const VertexFunction& phi,
                                                 const ContractionSpec& spec, double tol) {
  const VertexFunction cphi = apply_contraction(phi, spec);
  const SimplifiedTerms a = simplified_terms(g, u, phi);
  const SimplifiedTerms b = simplified_terms(g, u, cphi);
  ContractionReport r;
  r.before = a.total;
  r.after = b.total;
  r.slack = a.total - b.total;
  r.min_term_slack = kInf;
  for (std::size_t i = 0; i < a.terms.entries().size(); ++i)
    r.min_term_slack = std::min(r.min_term_slack, a.terms.entries()[i].w - b.terms.entries()[i].w);
  if (a.terms.empty()) r.min_term_slack = 0.0;
  r.claimed = !std::holds_alternative<PiecewiseLinear>(spec) || g.p() >= 2.0;
  r.holds = !r.claimed || (r.slack >= -tol && r.min_term_slack >= -tol);
  return r;
}

CutoffReport cutoff_energy_check(const Graph& g, const VertexFunction& u, const VertexFunction& phi, double tol) {
  require_positive(g, u, "cutoff_energy_check");
  if (is_supersolution(g, u).verdict == SolutionClass::neither)
    throw PreconditionError("cutoff_energy_check: u is not a supersolution");
  CutoffReport r;
  r.q_phi = energy_value(g, phi);
  if (!(r.q_phi > 0)) throw PreconditionError("cutoff_energy_check: Q(phi) must be positive");
  const VertexFunction cut = phi.cwiseMax(0.0).cwiseMin(u);
  r.q_cut = energy_value(g, cut);
  r.ratio = r.q_cut / r.q_phi;
  r.asserted = g.p() == 2.0;
  r.holds = std::isfinite(r.ratio) && (!r.asserted || r.q_cut <= 2.0 * r.q_phi + tol);
  return r;
}

}  // namespace psch
