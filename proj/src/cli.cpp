#include "psch/cli.hpp"

#include "psch/corpus.hpp"
#include "psch/fractional.hpp"
#include "psch/simplified.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace psch {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw InputError("not a number: '" + s + "'");
  return v;
}

VertexSet parse_set(const Graph& g, const std::string& spec) {
  VertexSet out;
  for (const auto& id : split(spec, ',')) out.push_back(g.index_of(id));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Index parse_vertex(const Graph& g, const std::string& id) { return id.empty() ? g.probe_vertex() : g.index_of(id); }

CapacityOptions capacity_options(const RunConfig& c) {
  CapacityOptions o;
  o.starts = c.restarts;
  o.seed = c.seed;
  o.solver.tol = c.stationarity_tol;
  return o;
}

HardyOptions hardy_options(const RunConfig& c) {
  HardyOptions o;
  o.starts = 2 * c.restarts;
  o.seed = c.seed;
  o.solver.tol = c.stationarity_tol;
  return o;
}

Json config_json(const RunConfig& c) {
  Json j = Json::object();
  j["graph"] = c.graph_path;
  j["p"] = c.p ? json_number(*c.p) : Json(nullptr);
  j["tol"] = c.tol;
  j["stationarity_tol"] = c.stationarity_tol;
  j["zero_threshold"] = c.zero_threshold;
  j["restarts"] = c.restarts;
  j["seed"] = c.seed;
  j["subset_cap"] = c.subset_cap;
  j["exhaustion"] = c.exhaustion;
  j["output"] = c.output;
  j["vertex"] = c.vertex;
  j["set"] = c.set;
  j["u"] = c.u;
  j["phi"] = c.phi;
  j["weight"] = c.weight;
  j["variant"] = c.variant;
  j["sigma"] = c.sigma;
  j["frac_p"] = c.frac_p ? json_number(*c.frac_p) : Json(nullptr);
  j["scale"] = c.scale;
  return j;
}

void add(Report& r, const BoundAssertion& a) { r.assertions.push_back(a); }

Json capacity_json(const Graph& g, const CapacityResult& r) {
  Json j = Json::object();
  j["variant"] = to_string(r.variant);
  j["value"] = json_number(r.value);
  j["certified"] = r.certified;
  j["converged"] = r.diagnostics.converged;
  j["iterations"] = r.diagnostics.iterations;
  j["grad_norm"] = json_number(r.diagnostics.grad_norm);
  j["best_start"] = r.best_start;
  j["minimizer"] = json_vertex_map(g, r.minimizer);
  return j;
}

Json hardy_json(const Graph& g, const HardyEstimate& e) {
  Json j = Json::object();
  j["lambda0"] = json_number(e.lambda0);
  j["norm_H"] = json_number(e.norm_H);
  j["indefinite"] = e.indefinite;
  j["exact"] = e.exact;
  j["converged"] = e.diagnostics.converged;
  j["minimizer"] = e.minimizer.size() == g.size() ? json_vertex_map(g, e.minimizer) : Json::object();
  return j;
}

Json cheeger_json(const Graph& g, const CheegerResult& r) {
  Json j = Json::object();
  j["h"] = json_number(r.h);
  j["argmin_set"] = json_vertex_set(g, r.argmin_set);
  j["enumerated_count"] = r.enumerated_count;
  j["exhaustive"] = r.exhaustive;
  return j;
}

Json doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

VertexSet require_set(const Graph& g, const RunConfig& c) {
  if (c.set.empty()) throw InputError(c.subcommand + " requires --set");
  return parse_set(g, c.set);
}

void run_graph_subcommand(const RunConfig& c, const Graph& g, Report& r) {
  const std::string& sub = c.subcommand;
  const Index n = g.size();
  const double p = g.p();
  auto fn = [&](const std::string& spec, std::uint64_t salt, double lo, double hi) {
    return parse_function(g, spec, c.seed + salt, lo, hi);
  };
  auto u_fn = [&] { return fn(c.u, 1, 0.2, 2.0); };
  auto phi_fn = [&] { return fn(c.phi, 2, -2.0, 2.0); };
  auto weight_fn = [&] { return fn(c.weight, 3, 0.5, 2.0); };
  auto plan_fn = [&] { return parse_exhaustion(g, c.exhaustion, parse_vertex(g, c.vertex)); };
  Json& res = r.results;

  if (sub == "energy") {
    const VertexFunction phi = phi_fn();
    const auto e = energy(g, phi);
    res["phi"] = json_vertex_map(g, phi);
    res["kinetic"] = json_number(e.kinetic);
    res["potential"] = json_number(e.potential);
    res["total"] = json_number(e.total);
    res["positive_part"] = json_number(e.positive_part);
  } else if (sub == "plap") {
    const VertexFunction phi = phi_fn();
    res["phi"] = json_vertex_map(g, phi);
    res["L_phi"] = json_vertex_map(g, p_laplacian(g, phi));
  } else if (sub == "schrodinger") {
    const VertexFunction phi = phi_fn();
    res["phi"] = json_vertex_map(g, phi);
    res["Q_prime"] = json_vertex_map(g, schrodinger(g, phi));
  } else if (sub == "supersolution") {
    const VertexFunction u = u_fn();
    const VertexSet Y = c.set.empty() ? VertexSet{} : parse_set(g, c.set);
    const SupersolutionReport s = is_supersolution(g, u, Y, c.tol);
    res["u"] = json_vertex_map(g, u);
    res["min_value"] = json_number(s.min_value);
    res["argmin"] = s.argmin >= 0 ? Json(g.id(s.argmin)) : Json(nullptr);
    res["max_abs"] = json_number(s.max_abs);
    res["verdict"] = to_string(s.verdict);
    r.check("supersolution", s.min_value >= -c.tol, -s.min_value, c.tol);
  } else if (sub == "simplified") {
    const VertexFunction u = u_fn(), phi = phi_fn();
    const SimplifiedTerms t = simplified_terms(g, u, phi);
    res["E_u"] = json_number(t.total);
    res["supersolution_term"] = json_number(t.supersolution_term);
    res["terms"] = json_edges(g, t.terms, "S");
  } else if (sub == "sandwich") {
    const VertexFunction u = u_fn(), phi = phi_fn();
    const SandwichReport s = sandwich_report(g, u, phi, c.tol);
    res["q_u_phi"] = json_number(s.q_u_phi);
    res["simplified"] = json_number(s.simplified);
    res["supersolution_term"] = json_number(s.supersolution_term);
    res["middle"] = json_number(s.middle);
    res["ratio"] = json_number(s.ratio);
    res["identity_residual"] = json_number(s.identity_residual);
    res["consistent"] = s.consistent;
    r.check("consistent", s.consistent, s.middle, s.q_u_phi);
    if (s.q_u_phi > 0) r.check("middle_positive", s.middle > 0, 0.0, s.middle);
    if (p == 2) {
      r.check("identity", s.identity_residual <= c.tol * std::max(1.0, std::abs(s.q_u_phi)), s.identity_residual,
              c.tol * std::max(1.0, std::abs(s.q_u_phi)));
      if (s.q_u_phi > 0) {
        r.check("ratio_lower", s.ratio >= 1.0 - c.tol, 1.0, s.ratio);
        r.check("ratio_upper", s.ratio <= 2.0 + c.tol, s.ratio, 2.0);
      }
    }
  } else if (sub == "capacity") {
    const VertexSet K = require_set(g, c);
    const VertexFunction u = u_fn();
    const CapacityVariant v = c.variant.empty() ? CapacityVariant::standard : capacity_variant_from_string(c.variant);
    res["K"] = json_vertex_set(g, K);
    res["capacity"] = capacity_json(g, capacity(g, u, K, v, capacity_options(c)));
  } else if (sub == "cap-equiv") {
    const VertexSet K = require_set(g, c);
    const VertexFunction u = u_fn();
    const EquivalenceReport e = equivalence_report(g, u, K, capacity_options(c), c.zero_threshold);
    res["K"] = json_vertex_set(g, K);
    res["standard"] = capacity_json(g, e.standard);
    res["tilde"] = capacity_json(g, e.tilde);
    res["sim"] = capacity_json(g, e.sim);
    res["unit"] = capacity_json(g, e.unit);
    res["ratio_tilde_standard"] = json_number(e.ratio_tilde_standard);
    res["ratio_sim_standard"] = json_number(e.ratio_sim_standard);
    res["ratio_standard_unit"] = json_number(e.ratio_standard_unit);
    r.check("ordering", e.ordering_holds, e.standard.value, e.tilde.value);
    r.check("zero_sets_agree", e.zero_sets_agree, e.standard.value, e.unit.value);
  } else if (sub == "hardy") {
    const VertexFunction w = weight_fn();
    res["weight"] = json_vertex_map(g, w);
    res["hardy"] = hardy_json(g, hardy_constant(g, w, hardy_options(c)));
  } else if (sub == "mazya") {
    const VertexFunction w = weight_fn(), u = u_fn();
    MazyaOptions mo;
    mo.subset_cap = c.subset_cap;
    mo.zero_threshold = c.zero_threshold;
    mo.capacity = capacity_options(c);
    const MazyaEstimate m = mazya_norm(g, w, u, mo);
    res["norm_Hu"] = json_number(m.norm_Hu);
    res["argmax_set"] = json_vertex_set(g, m.argmax_set);
    res["exhaustive"] = m.exhaustive;
    Json table = Json::array();
    for (const auto& row : m.table)
      table.push_back(Json{{"K", json_vertex_set(g, row.K)},
                           {"numerator", json_number(row.numerator)},
                           {"capacity", json_number(row.capacity)},
                           {"quotient", json_number(row.quotient)}});
    res["table"] = std::move(table);
  } else if (sub == "mazya-check") {
    const VertexFunction w = weight_fn(), u = u_fn();
    MazyaOptions mo;
    mo.subset_cap = c.subset_cap;
    mo.zero_threshold = c.zero_threshold;
    mo.capacity = capacity_options(c);
    const MazyaSandwichReport m = mazya_sandwich_check(g, w, u, 12, c.tol, mo, hardy_options(c));
    res["norm_H"] = json_number(m.norm_H);
    res["norm_Hu"] = json_number(m.norm_Hu);
    res["ratio"] = json_number(m.ratio);
    res["argmax_set"] = json_vertex_set(g, m.mazya.argmax_set);
    r.check("lower", m.lower_holds, m.norm_Hu, m.norm_H);
    r.check("ratio", m.ratio_holds, 1.0, m.ratio);
  } else if (sub == "criticalize") {
    const Index x = parse_vertex(g, c.vertex);
    const CriticalizeResult cr = criticalize(g, x, hardy_options(c), c.zero_threshold);
    res["vertex"] = g.id(x);
    res["c0"] = json_number(cr.c0);
    res["critical_input"] = cr.critical_input;
    res["post_check"] = json_number(cr.post_check);
    res["critical_potential"] = json_vertex_map(g, cr.critical.potential());
    r.check("post_check", std::abs(cr.post_check) <= c.zero_threshold, std::abs(cr.post_check), c.zero_threshold);
  } else if (sub == "nullseq") {
    const VertexFunction psi = u_fn();
    const ExhaustionPlan plan = plan_fn();
    const CriticalityReport cr = null_sequence(g, psi, plan, {}, c.zero_threshold);
    res["verdict"] = to_string(cr.verdict);
    res["energies"] = doubles(cr.null_sequence_energies);
    res["monotone"] = cr.monotone;
    r.check("monotone", cr.monotone, 0.0, 0.0);
  } else if (sub == "groundstate") {
    const Index o = parse_vertex(g, c.vertex);
    const VertexFunction psi = ground_state(g, o, c.zero_threshold);
    const double residual = schrodinger(g, psi).cwiseAbs().maxCoeff();
    res["probe"] = g.id(o);
    res["ground_state"] = json_vertex_map(g, psi);
    res["residual"] = json_number(residual);
    r.check("residual", residual <= c.zero_threshold, residual, c.zero_threshold);
  } else if (sub == "green") {
    const Index x = parse_vertex(g, c.vertex);
    const VertexFunction u = green_function(g, x, capacity_options(c));
    VertexFunction q = schrodinger(g, u);
    q(x) -= 1.0 / g.measure()(x);
    const double residual = q.cwiseAbs().maxCoeff();
    res["vertex"] = g.id(x);
    res["green"] = json_vertex_map(g, u);
    res["residual"] = json_number(residual);
    const double bound = residual_tolerance(p, c.zero_threshold) * std::max(1.0, u.maxCoeff());
    r.check("residual", residual <= bound, residual, bound);
  } else if (sub == "kp-check") {
    const Index x = parse_vertex(g, c.vertex);
    const VertexFunction w = weight_fn();
    const VertexFunction u =
        c.u == "ones" ? green_function(g, x, capacity_options(c)) : parse_function(g, c.u, c.seed + 1, 0.2, 2.0);
    const KpReport kp = kp_check(g, w, u, x, plan_fn(), c.tol, hardy_options(c));
    res["vertex"] = g.id(x);
    res["norm_H"] = json_number(kp.norm_H);
    res["c0"] = json_number(kp.c0);
    res["psi_x"] = json_number(kp.psi_x);
    Json stages = Json::array();
    double worst_lhs = 0.0, worst_rhs = kInfinity, worst = kInfinity;
    for (const auto& s : kp.stages) {
      stages.push_back(Json{{"n", s.n},
                            {"partial_sum", json_number(s.partial_sum)},
                            {"bound", json_number(s.bound)},
                            {"holds", s.holds}});
      if (s.bound - s.partial_sum < worst) {
        worst = s.bound - s.partial_sum;
        worst_lhs = s.partial_sum;
        worst_rhs = s.bound;
      }
    }
    res["stages"] = std::move(stages);
    r.check("kp_bound", kp.holds, worst_lhs, worst_rhs);
  } else if (sub == "lambda-infty") {
    const VertexFunction w = weight_fn();
    res["lambda_sequence"] = doubles(lambda_infty(g, w, plan_fn(), hardy_options(c)));
  } else if (sub == "gap-check") {
    const VertexFunction w = weight_fn();
    const GapReport gr = spectral_gap_and_minimizer_check(g, w, plan_fn(), 0.1, c.tol, hardy_options(c));
    res["lambda0"] = json_number(gr.lambda0);
    res["lambda_infty"] = json_number(gr.lambda_infty);
    res["gap"] = gr.gap;
    res["lambda_sequence"] = doubles(gr.lambda_sequence);
    if (gr.gap) {
      res["ground_state"] = json_vertex_map(g, gr.ground_state);
      res["null_energies"] = doubles(gr.null_energies);
      res["critical_after_shift"] = gr.critical_after_shift;
      res["q_psi"] = json_number(gr.q_psi);
      res["saturation"] = json_number(gr.saturation);
      res["saturates"] = gr.saturates;
      res["partial_sums"] = doubles(gr.partial_sums);
      r.check("critical_after_shift", gr.critical_after_shift, 0.0, 0.0);
      r.check("saturates", gr.saturates, gr.saturation, c.tol * std::abs(gr.q_psi));
    }
  } else if (sub == "cheeger") {
    const VertexFunction w = weight_fn();
    CheegerOptions co;
    co.size_cap = c.subset_cap;
    const CheegerResult ch =
        cheeger_constant(g.weights(), g.measure().cwiseProduct(w.cwiseAbs()), g.potential().cwiseMax(0.0), co);
    res["cheeger"] = cheeger_json(g, ch);
  } else if (sub == "intrinsic") {
    const VertexFunction w = weight_fn();
    const IntrinsicScale s = intrinsic_scale(g, w);
    const IntrinsicReport ir = is_p_intrinsic(g, s.rho, w, s.rho_exterior);
    res["D"] = json_number(s.D);
    res["rho"] = json_number(s.rho_exterior);
    res["max_row"] = json_number(ir.max_row);
    res["argmax"] = ir.argmax >= 0 ? Json(g.id(ir.argmax)) : Json(nullptr);
    res["intrinsic"] = ir.intrinsic;
    r.check("intrinsic", ir.intrinsic, ir.max_row, 1.0);
  } else if (sub == "cheeger-bounds") {
    const VertexFunction w = weight_fn();
    const CheegerVariant v = c.variant == "gst_p2" ? CheegerVariant::gst_p2 : CheegerVariant::general_p;
    if (!c.variant.empty() && c.variant != "gst_p2" && c.variant != "general_p")
      throw InputError("unknown Cheeger variant '" + c.variant + "'");
    CheegerOptions co;
    co.size_cap = c.subset_cap;
    const VertexFunction u = v == CheegerVariant::gst_p2 ? u_fn() : VertexFunction();
    const CheegerBoundsReport b = cheeger_bounds_report(g, w, v, u, co, c.tol, hardy_options(c));
    res["norm_H"] = json_number(b.norm_H);
    res["h"] = json_number(b.h);
    res["h_rho"] = json_number(b.h_rho);
    res["D"] = json_number(b.D);
    res["U"] = json_number(b.U);
    res["lower_bound"] = json_number(b.lower_bound);
    res["upper_intrinsic"] = json_number(b.upper_intrinsic);
    res["upper_oscillation"] = json_number(b.upper_oscillation);
    res["upper_degree"] = json_number(b.upper_degree);
    res["exhaustive"] = b.exhaustive;
    res["critical"] = b.critical;
    for (const auto& a : b.assertions) add(r, a);
  } else if (sub == "gst") {
    if (p != 2) throw PreconditionError("gst requires p = 2");
    const VertexFunction u = u_fn();
    if (!(u.minCoeff() > 0)) throw PreconditionError("u must be strictly positive");
    const VertexFunction kappa = g.measure().cwiseProduct(u).cwiseProduct(schrodinger(g, u));
    res["u"] = json_vertex_map(g, u);
    res["b_u"] = json_edges(g, ground_state_transform(g, u), "b");
    res["exterior"] = json_vertex_map(g, kappa);
    res["U"] = json_number(oscillation_bound(g, u));
    r.check("supersolution", kappa.minCoeff() >= -c.tol, -kappa.minCoeff(), c.tol);
  } else if (sub == "frac-weights") {
    res["sigma"] = c.sigma;
    res["b_sigma"] = json_edges(g, fractional_weights(g, c.sigma), "b");
    if (c.frac_p) res["b_sigma_p"] = json_edges(g, fractional_p_weights(g, c.sigma, *c.frac_p), "b");
  } else if (sub == "frac-check") {
    const FractionalCheck f = spectral_fractional_check(g, c.sigma);
    res["sigma"] = c.sigma;
    res["operator_deviation"] = json_number(f.operator_deviation);
    res["eigenvalue_deviation"] = json_number(f.eigenvalue_deviation);
    res["quadrature_deviation"] = json_number(f.quadrature_deviation);
    res["min_offdiagonal"] = json_number(f.min_offdiagonal);
    res["distance_to_b"] = json_number(f.distance_to_b);
    res["eigenvalues"] = doubles(f.eigenvalues);
    r.check("eigenvalues", f.eigenvalue_deviation <= 1e-6, f.eigenvalue_deviation, 1e-6);
    r.check("quadrature", f.quadrature_deviation <= 1e-6, f.quadrature_deviation, 1e-6);
    if (n > 1) r.check("positive_offdiagonal", f.min_offdiagonal > 0, 0.0, f.min_offdiagonal);
  } else {
    throw InputError("unknown subcommand '" + sub + "'");
  }
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{
      "validate",    "energy",      "plap",          "schrodinger", "supersolution", "simplified", "sandwich",
      "capacity",    "cap-equiv",   "hardy",         "mazya",       "mazya-check",   "criticalize", "nullseq",
      "groundstate", "green",       "kp-check",      "lambda-infty", "gap-check",    "cheeger",    "intrinsic",
      "cheeger-bounds", "gst",      "frac-weights",  "frac-check",  "corpus"};
  return names;
}

VertexFunction parse_function(const Graph& g, const std::string& spec, std::uint64_t seed, double lo, double hi) {
  const Index n = g.size();
  if (spec == "ones") return VertexFunction::Ones(n);
  if (spec == "random") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(lo, hi);
    VertexFunction f(n);
    for (Index i = 0; i < n; ++i) f(i) = unif(rng);
    return f;
  }
  if (spec == "groundstate") return ground_state(g);
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "indicator") {
    VertexFunction f = VertexFunction::Zero(n);
    for (const auto& id : split(arg, '+')) f(g.index_of(id)) = 1.0;
    return f;
  }
  if (kind == "values") {
    const auto items = split(arg, ',');
    if (static_cast<Index>(items.size()) != n) throw InputError("values: expected one value per vertex");
    VertexFunction f(n);
    for (Index i = 0; i < n; ++i) f(i) = parse_double(items[static_cast<std::size_t>(i)]);
    return f;
  }
  if (kind == "green") return green_function(g, g.index_of(arg));
  throw InputError("unknown function spec '" + spec + "'");
}

ExhaustionPlan parse_exhaustion(const Graph& g, const std::string& spec, Index center) {
  if (spec.empty()) return ExhaustionPlan::balls(g, center);
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "balls") return ExhaustionPlan::balls(g, arg.empty() ? center : g.index_of(arg));
  if (kind == "prefix") {
    std::vector<Index> sizes;
    for (const auto& s : split(arg, ',')) sizes.push_back(static_cast<Index>(parse_double(s)));
    return ExhaustionPlan::prefixes(g.size(), sizes);
  }
  throw InputError("unknown exhaustion spec '" + spec + "'");
}

Report make_report(const RunConfig& c, const std::optional<Graph>& graph) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), c.subcommand) == names.end())
    throw InputError("unknown subcommand '" + c.subcommand + "'");
  if (c.output != "json" && c.output != "csv") throw InputError("output must be json or csv");
  Report r;
  r.subcommand = c.subcommand;
  r.config = config_json(c);

  if (c.subcommand == "corpus") {
    if (c.scale != "reduced" && c.scale != "full") throw InputError("scale must be reduced or full");
    Report cr = corpus_report(c.seed, c.scale == "full" ? CorpusScale::full() : CorpusScale::reduced());
    r.results = std::move(cr.results);
    r.assertions = std::move(cr.assertions);
    return r;
  }
  if (!graph && c.graph_path.empty()) throw InputError(c.subcommand + " requires --graph");

  if (c.subcommand == "validate") {
    GraphData data = graph ? to_data(*graph) : load_graph_data(c.graph_path);
    if (c.p) data.p = *c.p;
    const ValidationReport v = validate(data);
    Json violations = Json::array();
    std::size_t blocking = 0;
    for (const auto& x : v.violations) {
      violations.push_back(Json{{"kind", x.kind}, {"detail", x.detail}, {"vertices", x.vertices}});
      if (x.kind != "disconnected") ++blocking;
    }
    r.results["valid"] = blocking == 0;
    r.results["connected"] = v.connected;
    r.results["components"] = v.components;
    r.results["row_sums"] = doubles(v.row_sums);
    r.results["violations"] = std::move(violations);
    r.check("valid", blocking == 0, static_cast<double>(blocking), 0.0);
    return r;
  }

  Graph g = graph ? *graph : load_graph(c.graph_path);
  if (c.p) g = g.with_p(*c.p);
  run_graph_subcommand(c, g, r);
  return r;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Report r;
  try {
    r = make_report(c);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kExitInput;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitFailed;
  }
  const std::string text = c.output == "csv" ? r.to_csv() : dump_json(r.to_json()) + "\n";
  if (c.out_file.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out_file, std::ios::binary);
    if (!f) {
      err << "input error: cannot write '" << c.out_file << "'\n";
      return kExitInput;
    }
    f << text;
  }
  return r.passed() ? kExitPassed : kExitFailed;
}

std::optional<int> parse_command_line(int argc, const char* const* argv, RunConfig& c, std::ostream& out,
                                      std::ostream& err) {
  CLI::App app{"Hardy inequalities, capacities and criticality for p-Schroedinger forms on weighted graphs"};
  app.add_option("subcommand", c.subcommand, "one of: validate, energy, ..., corpus")->required();
  app.add_option("--graph", c.graph_path, "graph JSON file");
  app.add_option("--p", c.p, "override the exponent");
  app.add_option("--tol", c.tol, "assertion tolerance");
  app.add_option("--stationarity-tol", c.stationarity_tol, "solver stop criterion");
  app.add_option("--zero-threshold", c.zero_threshold, "values at or below count as zero");
  app.add_option("--restarts", c.restarts, "multi-start count");
  app.add_option("--seed", c.seed, "seed of every randomized choice");
  app.add_option("--subset-cap", c.subset_cap, "largest enumerated subset (0: none)");
  app.add_option("--exhaustion", c.exhaustion, "balls:<id> or prefix:<k1>,<k2>,...");
  app.add_option("--output", c.output, "json or csv");
  app.add_option("--out-file", c.out_file, "report path (default stdout)");
  app.add_option("--vertex", c.vertex, "vertex id (default: smallest id)");
  app.add_option("--set", c.set, "comma-separated vertex ids");
  app.add_option("--u", c.u, "ones, random, indicator:<id>+<id>, values:<v0>,..., green:<id>, groundstate");
  app.add_option("--phi", c.phi, "function spec, as --u");
  app.add_option("--weight", c.weight, "function spec, as --u");
  app.add_option("--variant", c.variant, "standard, tilde, sim; or general_p, gst_p2");
  app.add_option("--sigma", c.sigma, "fractional order in (0, 1)");
  app.add_option("--frac-p", c.frac_p, "exponent of the b_{sigma,p} table");
  app.add_option("--scale", c.scale, "corpus size: reduced or full");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPassed;
  } catch (const CLI::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  return std::nullopt;
}

}  // namespace psch
