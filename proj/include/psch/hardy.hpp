// Hardy constants, the Maz'ya norm and the criticality machinery.
#pragma once

#include "psch/capacity.hpp"

#include <optional>

namespace psch {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct HardyOptions {
  int starts = 16;  // random starts for p != 2, on top of the p = 2 eigenvector
  std::uint64_t seed = 0;
  SolverOptions solver{};
  double zero_threshold = 1e-12;  // lambda0 at or below this gives norm_H = +inf
};

struct HardyEstimate {
  double lambda0 = 0.0;
  double norm_H = kInfinity;
  VertexFunction minimizer;  // sum m |g| |phi|^p = 1
  SolveResult diagnostics;
  bool indefinite = false;  // Q takes negative values
  bool exact = false;       // p = 2 eigensolve
};

/// lambda0 = inf Q(phi) / sum m |weight| |phi|^p.
HardyEstimate hardy_constant(const Graph& g, const VertexFunction& weight, const HardyOptions& opts = {});

/// Dense generalized eigensolve at p = 2 (any stored p is ignored).
HardyEstimate hardy_constant_p2(const Graph& g, const VertexFunction& weight, double zero_threshold = 1e-12);

/// Rayleigh quotient Q(phi) / sum m |weight| |phi|^p.
double rayleigh_quotient(const Graph& g, const VertexFunction& weight, const VertexFunction& phi);

// ---------------------------------------------------------------------------
// Maz'ya norm

struct MazyaOptions {
  int subset_cap = 0;  // 0: all sizes
  bool connected_only = false;
  int exhaustive_limit = 10;  // enumerate every subset up to this |X|
  double zero_threshold = 1e-7;
  CapacityOptions capacity{};
};

struct MazyaRow {
  VertexSet K;
  double numerator = 0.0;  // sum_K m u^p |g|
  double capacity = 0.0;
  double quotient = 0.0;
};

struct MazyaEstimate {
  double norm_Hu = 0.0;
  VertexSet argmax_set;
  std::vector<MazyaRow> table;
  bool exhaustive = true;
};

MazyaEstimate mazya_norm(const Graph& g, const VertexFunction& weight, const VertexFunction& u,
                         const MazyaOptions& opts = {});

struct MazyaSandwichReport {
  double norm_H = 0.0;
  double norm_Hu = 0.0;
  double ratio = 0.0;  // norm_H / norm_Hu
  bool lower_holds = true;
  bool ratio_holds = true;
  MazyaEstimate mazya;
  HardyEstimate hardy;
};

/// Throws InputError when |X| exceeds max_vertices.
MazyaSandwichReport mazya_sandwich_check(const Graph& g, const VertexFunction& weight, const VertexFunction& u,
                                         int max_vertices = 10, double tol = 1e-8, const MazyaOptions& opts = {},
                                         const HardyOptions& hopts = {});

// ---------------------------------------------------------------------------
// Criticality

struct CriticalizeResult {
  double c0 = 0.0;
  bool critical_input = false;
  Graph critical;  // potential c - c0 m(x) 1_x
  double post_check = 0.0;  // lambda0 of the criticalized form for weight 1_x
};

/// Largest c0 with Q - c0 m(x) |phi(x)|^p >= 0.
CriticalizeResult criticalize(const Graph& g, Index x, const HardyOptions& opts = {}, double zero_threshold = 1e-7);

enum class Verdict { critical, subcritical };
const char* to_string(Verdict v);

struct CriticalityReport {
  Verdict verdict = Verdict::critical;
  double c0 = 0.0;
  std::optional<VertexFunction> ground_state;
  std::vector<double> null_sequence_energies;
  std::vector<VertexFunction> minimizers;
  bool monotone = true;  // energies non-decreasing along the plan
};

/// For each K_n minimizes Q(phi) over 1_{K_n} psi <= phi <= psi on the domain
/// Y (killed outside; empty Y = whole truncation). The plan and psi refer to
/// the vertices of g; K_n must lie in Y.
CriticalityReport null_sequence(const Graph& g, const VertexFunction& psi, const ExhaustionPlan& plan,
                                const VertexSet& domain = {}, double zero_threshold = 1e-7);

/// Positive solution normalized to 1 at the probe vertex: minimizes Q with phi(o) = 1.
VertexFunction ground_state(const Graph& g, std::optional<Index> probe = std::nullopt, double zero_threshold = 1e-7,
                            double residual_tol = 1e-7);

/// Tolerance on |Q'[u] - f| for a computed u. For p < 2 an error d in u moves
/// the residual by about d^{p-1}.
inline double residual_tolerance(double p, double base = 1e-7) {
  return p < 2 ? std::max(base, std::pow(1e-10, p - 1)) : base;
}

/// Minimal positive Green function: Q'[u] = 1_x / m.
VertexFunction green_function(const Graph& g, Index x, const CapacityOptions& opts = {});

struct KpStage {
  std::size_t n = 0;
  double partial_sum = 0.0;  // sum_{K_n} m |g| u^p
  double bound = 0.0;        // norm_H (1/n + c0 m(x) psi(x)^p)
  bool holds = true;
};

struct KpReport {
  double norm_H = 0.0;
  double c0 = 0.0;
  double psi_x = 0.0;
  std::vector<KpStage> stages;
  bool holds = true;
};

KpReport kp_check(const Graph& g, const VertexFunction& weight, const VertexFunction& u, Index x,
                  const ExhaustionPlan& plan, double slack = 1e-9, const HardyOptions& opts = {});

/// lambda0 of restrict(g, X \ K_n) for every stage (min over components, +inf without weight).
std::vector<double> lambda_infty(const Graph& g, const VertexFunction& weight, const ExhaustionPlan& plan,
                                 const HardyOptions& opts = {});

struct GapReport {
  double lambda0 = 0.0;
  double lambda_infty = 0.0;
  bool gap = false;
  std::vector<double> lambda_sequence;
  std::vector<double> null_energies;
  bool critical_after_shift = false;
  VertexFunction ground_state;
  double saturation = 0.0;  // |Q(psi) - lambda0 sum m |g| psi^p|
  double q_psi = 0.0;
  bool saturates = false;
  std::vector<double> partial_sums;  // sum_{K_n} m |g| psi^p + c_- psi^p
};

GapReport spectral_gap_and_minimizer_check(const Graph& g, const VertexFunction& weight, const ExhaustionPlan& plan,
                                           double margin = 0.1, double tol = 1e-8, const HardyOptions& opts = {});

}  // namespace psch
