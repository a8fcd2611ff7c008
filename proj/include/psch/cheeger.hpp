// Cheeger constants, p-intrinsic metrics and the two-sided Hardy bounds.
//
// A nonnegative potential is read as edges to one Dirichlet exterior vertex:
// it contributes to the boundary of every set containing its vertex and to the
// degree entering D. With c = 0 this is the plain edge-boundary setting.
#pragma once

#include "psch/hardy.hpp"

namespace psch {

struct CheegerOptions {
  int size_cap = 0;  // 0: no cap
  bool connected_only = false;
  bool exclude_full = false;
  int exhaustive_limit = 20;  // enumerate all subsets up to this many vertices
};

struct CheegerResult {
  double h = kInfinity;
  VertexSet argmin_set;
  long enumerated_count = 0;
  bool exhaustive = false;  // true if every W of the truncation was admissible and visited
};

/// h = inf a(dW) / mu(W) over nonempty W, dW = W x (X \ W), plus sum_W exterior.
CheegerResult cheeger_constant(const EdgeTableD& a, const VertexFunction& mu, const VertexFunction& exterior,
                               const CheegerOptions& opts = {});
CheegerResult cheeger_constant(const EdgeTableD& a, const VertexFunction& mu, const CheegerOptions& opts = {});

struct IntrinsicReport {
  double max_row = 0.0;  // max_x (1/weight(x)) sum_y b rho^q (+ exterior term)
  Index argmax = -1;
  std::vector<Index> violations;  // rows above 1 + tol
  bool intrinsic = true;
};

/// rho_exterior applies to the potential edges (c_+); pass 0 to ignore them.
IntrinsicReport is_p_intrinsic(const Graph& g, const EdgeTableD& rho, const VertexFunction& weight,
                               double rho_exterior = 0.0, double tol = 1e-12);

/// Same test for a transformed instance given by its parts.
IntrinsicReport is_p_intrinsic(const EdgeTableD& a, const VertexFunction& exterior, const VertexFunction& mu, double p,
                               const EdgeTableD& rho, double rho_exterior, double tol = 1e-12);

struct IntrinsicScale {
  EdgeTableD rho;     // D^{-1/q} on every edge
  double rho_exterior = 0.0;
  double D = 0.0;     // sup_x (sum_y b(x,y) + c_+(x)) / (m(x) |g|(x))
};

IntrinsicScale intrinsic_scale(const Graph& g, const VertexFunction& weight);

/// b_u(x, y) = b(x, y) u(x) u(y).
EdgeTableD ground_state_transform(const Graph& g, const VertexFunction& u);

/// U = max over adjacent ordered pairs of u(y) / u(x); 1 without edges.
double oscillation_bound(const Graph& g, const VertexFunction& u);

enum class CheegerVariant { general_p, gst_p2 };
const char* to_string(CheegerVariant v);

struct BoundAssertion {
  std::string name;
  bool passed = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

struct CheegerBoundsReport {
  double norm_H = 0.0;
  double h = 0.0;
  double h_rho = 0.0;
  double D = 0.0;
  double U = 1.0;
  double lower_bound = 0.0;        // 1 / h
  double upper_intrinsic = 0.0;    // 2^{1-p} p^p / h_rho^p
  double upper_oscillation = 0.0;  // 2^{1-p} p^p U D^{p/q} / h^p
  double upper_degree = 0.0;       // 2^{1-p} p^p D^{p/q} / h^p
  bool exhaustive = false;
  bool critical = false;
  std::vector<BoundAssertion> assertions;
};

/// general_p: c >= 0, weight > 0. gst_p2: p = 2, u a strictly positive
/// supersolution (harmonic in the classical statement), weight > 0.
/// Upper bounds are asserted only when the Cheeger values are exhaustive.
CheegerBoundsReport cheeger_bounds_report(const Graph& g, const VertexFunction& weight, CheegerVariant variant,
                                          const VertexFunction& u = {}, const CheegerOptions& opts = {},
                                          double tol = 1e-9, const HardyOptions& hopts = {});

/// 2^{1-p} p^p.
double cheeger_constant_factor(double p);

}  // namespace psch
