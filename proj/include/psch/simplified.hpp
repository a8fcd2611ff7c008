// Simplified energy E_u, the sandwich against Q(u phi), normal contractions, cutoff.
#pragma once

#include "psch/energy.hpp"

#include <random>
#include <variant>

namespace psch {

/// Unordered-pair terms S_u[phi]_{xy} and the aggregates built from them.
/// total sums over ordered pairs, i.e. twice the table sum. A term is +inf
/// only when the bracket vanishes with grad phi != 0 and p < 2; any total
/// containing it is +inf.
struct SimplifiedTerms {
  EdgeTableD terms;
  double total = 0.0;
  double supersolution_term = 0.0;  // sum m u Q'[u] |phi|^p
};

SimplifiedTerms simplified_terms(const Graph& g, const VertexFunction& u, const VertexFunction& phi);

/// E_u(phi) alone (ordered-pair sum).
double simplified_energy(const Graph& g, const VertexFunction& u, const VertexFunction& phi);

struct SandwichReport {
  double q_u_phi = 0.0;  // Q(u phi)
  double simplified = 0.0;
  double supersolution_term = 0.0;
  double middle = 0.0;  // simplified + supersolution_term
  double ratio = 0.0;   // middle / Q(u phi)
  double identity_residual = 0.0;  // p = 2: |Q(u phi) - E_u/2 - supersolution_term|; NaN otherwise
  bool consistent = true;  // false when Q(u phi) = 0 but middle != 0
};

/// Requires u > 0 and u a supersolution on the whole graph (tolerance tol).
SandwichReport sandwich_report(const Graph& g, const VertexFunction& u, const VertexFunction& phi,
                               double tol = 1e-10);

// ---------------------------------------------------------------------------
// Normal contractions

struct AbsoluteValue {};

/// (-alpha) v t ^ beta.
struct Clamp {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Continuous piecewise-linear map anchored at C(0) = 0. slopes has one more
/// entry than breakpoints: slopes[0] applies left of breakpoints[0], slopes[k]
/// between breakpoints[k-1] and breakpoints[k], slopes.back() right of the last.
struct PiecewiseLinear {
  std::vector<double> breakpoints;
  std::vector<double> slopes;

  /// Interpolates the listed points (sorted by abscissa, one of them (0, 0))
  /// and extends constantly outside.
  static PiecewiseLinear through(const std::vector<std::pair<double, double>>& points);
};

using ContractionSpec = std::variant<AbsoluteValue, Clamp, PiecewiseLinear>;

/// Throws InputError if spec is not a normal contraction.
void check_contraction(const ContractionSpec& spec);

double apply_contraction(double t, const ContractionSpec& spec);
VertexFunction apply_contraction(const VertexFunction& phi, const ContractionSpec& spec);

/// Random piecewise-linear normal contraction: up to max_breaks breakpoints in
/// [-range, range], slopes uniform in [-1, 1].
PiecewiseLinear random_contraction(std::mt19937_64& rng, int max_breaks = 8, double range = 3.0);

struct ContractionReport {
  double before = 0.0;  // E_u(phi)
  double after = 0.0;   // E_u(C o phi)
  double slack = 0.0;   // before - after
  double min_term_slack = 0.0;  // min over pairs of S_u[phi] - S_u[C o phi]
  bool claimed = false;  // whether the inequality is asserted for this spec and p
  bool holds = true;
};

/// Asserts E_u(C o phi) <= E_u(phi) for |.| and clamps (every p) and for
/// general contractions when p >= 2; otherwise only reports.
ContractionReport contraction_monotonicity_check(const Graph& g, const VertexFunction& u, const VertexFunction& phi,
                                                 const ContractionSpec& spec, double tol = 1e-12);

struct CutoffReport {
  double q_phi = 0.0;
  double q_cut = 0.0;  // Q(0 v phi ^ u)
  double ratio = 0.0;  // q_cut / q_phi
  bool asserted = false;  // p = 2 bound ratio <= 2
  bool holds = true;
};

/// Requires u a strictly positive supersolution and Q(phi) > 0.
CutoffReport cutoff_energy_check(const Graph& g, const VertexFunction& u, const VertexFunction& phi,
                                 double tol = 1e-9);

}  // namespace psch
