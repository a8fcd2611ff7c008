// Generalized capacities Cap_u, tilde-Cap_u and Cap_{u,Sim}.
#pragma once

#include "psch/energy.hpp"
#include "psch/optimize.hpp"

#include <cstdint>
#include <vector>

namespace psch {

enum class CapacityVariant { standard, tilde, sim };

const char* to_string(CapacityVariant v);
CapacityVariant capacity_variant_from_string(const std::string& s);

struct CapacityOptions {
  int starts = 8;
  std::uint64_t seed = 0;
  SolverOptions solver{};
  std::vector<VertexFunction> extra_starts;  // tried after the standard starts
  double hessian_floor = 1e-8;  // |t|^{p-2} floor for p < 2
};

struct CapacityResult {
  double value = 0.0;
  VertexFunction minimizer;
  CapacityVariant variant = CapacityVariant::standard;
  SolveResult diagnostics;
  bool certified = false;  // convex objective and stationary
  int best_start = 0;
};

/// standard: inf Q(phi), phi >= 1_K u.
/// tilde:    inf Q(phi), u >= phi >= 1_K u.
/// sim:      inf E_u(phi) + sum m u Q'[u] |phi|^p, phi >= 1_K (u a supersolution).
/// phi >= 0 is imposed throughout; it does not change the infimum.
CapacityResult capacity(const Graph& g, const VertexFunction& u, const VertexSet& K, CapacityVariant variant,
                        const CapacityOptions& opts = {});

/// Equilibrium potential at p = 2 with u = 1 and c >= 0: H phi = 0 off K, phi = 1 on K.
CapacityResult capacity_oracle_p2(const Graph& g, const VertexSet& K);

/// inf Q(psi u) over psi >= 1_K, computed in the psi variable.
CapacityResult capacity_substituted(const Graph& g, const VertexFunction& u, const VertexSet& K,
                                    const CapacityOptions& opts = {});

struct EquivalenceReport {
  CapacityResult standard;
  CapacityResult tilde;
  CapacityResult sim;
  CapacityResult unit;  // Cap_1(K)
  bool ordering_holds = true;  // standard <= tilde
  bool zero_sets_agree = true;
  double ratio_tilde_standard = 0.0;
  double ratio_sim_standard = 0.0;
  double ratio_standard_unit = 0.0;
};

EquivalenceReport equivalence_report(const Graph& g, const VertexFunction& u, const VertexSet& K,
                                     const CapacityOptions& opts = {}, double zero_threshold = 1e-7);

/// Objective of the sim variant, with gradient and Hessian, for phi >= 0.
struct SimplifiedObjective {
  const Graph* g;
  VertexFunction u;
  VertexFunction weight;  // m u Q'[u]
  double floor = 1e-8;

  SimplifiedObjective(const Graph& graph, const VertexFunction& u, double floor = 1e-8);
  double value(const VertexFunction& phi) const;
  VertexFunction gradient(const VertexFunction& phi) const;
  Eigen::MatrixXd hessian(const VertexFunction& phi) const;
};

}  // namespace psch
