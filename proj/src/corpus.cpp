#include "psch/corpus.hpp"

#include "psch/cli.hpp"
#include "psch/fractional.hpp"
#include "psch/random_instances.hpp"
#include "psch/simplified.hpp"

#include <Eigen/Eigenvalues>

#include <cstdio>

namespace psch {

namespace {

constexpr double kPs[] = {1.5, 2.0, 3.0};

std::mt19937_64 criterion_rng(std::uint64_t seed, int id) {
  return std::mt19937_64(seed * 1000003ULL + static_cast<std::uint64_t>(id));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string p_key(double p) { return "p=" + fmt(p); }

VertexSet random_subset(std::mt19937_64& rng, Index n) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  VertexSet K;
  for (Index x = 0; x < n; ++x)
    if (unif(rng) < 0.3) K.push_back(x);
  if (K.empty()) K.push_back(std::uniform_int_distribution<Index>(0, n - 1)(rng));
  return K;
}

double relative(double a, double b, double floor = 0.0) {
  const double d = std::abs(a - b);
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0 ? d / std::max(s, floor) : d;
}

}  // namespace

CorpusScale CorpusScale::reduced() {
  CorpusScale s;
  s.identity_instances = 20;
  s.sandwich_instances = 20;
  s.contraction_trials = 100;
  s.cutoff_trials = 50;
  s.capacity_instances = 10;
  s.equivalence_instances = 12;
  s.mazya_instances = 4;
  s.gradient_trials = 100;
  s.criticalize_instances = 10;
  return s;
}

CriterionOutcome criterion_gst_identity(std::uint64_t seed, const CorpusScale& scale) {
  CriterionOutcome out{1, "gst_identity", true, "", Json::object()};
  auto rng = criterion_rng(seed, out.id);
  double worst = 0.0;
  for (int i = 0; i < scale.identity_instances; ++i) {
    const RandomInstance inst = random_mixed_instance(rng, static_cast<std::size_t>(i), 2.0);
    const Graph& g = inst.graph;
    const Index n = g.size();
    const VertexFunction u = random_function(rng, n, 0.2, 2.0);
    const VertexFunction phi = random_function(rng, n, -2.0, 2.0);
    const double q = energy_value(g, VertexFunction(u.cwiseProduct(phi)));
    const SimplifiedTerms t = simplified_terms(g, u, phi);
    const double rhs = 0.5 * t.total + t.supersolution_term;
    const VertexFunction w = g.measure().cwiseProduct(u).cwiseProduct(schrodinger(g, u));
    double mag = 0.5 * t.total;
    for (Index x = 0; x < n; ++x) mag += std::abs(w(x)) * phi(x) * phi(x);
    const double rel = std::abs(q - rhs) / std::max(mag, 1e-300);
    worst = std::max(worst, rel);
  }
  out.passed = worst <= 1e-10;
  out.details["instances"] = scale.identity_instances;
  out.details["max_relative_residual"] = json_number(worst);
  out.summary = "max relative residual " + fmt(worst) + " (tol 1e-10)";
  return out;
}

CriterionOutcome criterion_sandwich(std::uint64_t seed, const CorpusScale& scale) {
  CriterionOutcome out{2, "simplified_energy_sandwich", true, "", Json::object()};
  auto rng = criterion_rng(seed, out.id);
  std::string summary;
  for (double p : kPs) {
    double lo = kInfinity, hi = 0.0;
    int bad = 0;
    for (int i = 0; i < scale.sandwich_instances; ++i) {
      const RandomInstance inst = random_mixed_instance(rng, static_cast<std::size_t>(i), p);
      const VertexFunction phi = random_function(rng, inst.graph.size(), -2.0, 2.0);
      const SandwichReport s = sandwich_report(inst.graph, inst.supersolution, phi);
      bool ok = s.middle > 0 && s.q_u_phi > 0 && std::isfinite(s.ratio) && s.consistent;
      if (p == 2.0) ok = ok && s.ratio >= 1.0 - 1e-10 && s.ratio <= 2.0 + 1e-10;
      if (!ok) ++bad;
      lo = std::min(lo, s.ratio);
      hi = std::max(hi, s.ratio);
    }
    out.details[p_key(p)] = Json{{"min_ratio", json_number(lo)}, {"max_ratio", json_number(hi)}, {"failures", bad}};
    out.passed = out.passed && bad == 0;
    summary += p_key(p) + " ratio in [" + fmt(lo) + ", " + fmt(hi) + "] ";
  }
  out.summary = summary;
  return out;
}

CriterionOutcome criterion_contraction(std::uint64_t seed, const CorpusScale& scale) {
  CriterionOutcome out{3, "normal_contractions", true, "", Json::object()};
  auto rng = criterion_rng(seed, out.id);
  std::uniform_real_distribution<double> unif(0.0, 2.0);
  std::string summary;
  for (double p : kPs) {
    double min_abs = kInfinity, min_clamp = kInfinity, min_pl = kInfinity;
    int failures = 0, pl_unclaimed_violations = 0;
    for (int i = 0; i < scale.contraction_trials; ++i) {
      const RandomInstance inst = random_mixed_instance(rng, static_cast<std::size_t>(i), p);
      const Graph& g = inst.graph;
      const VertexFunction u = random_function(rng, g.size(), 0.2, 2.0);
      const VertexFunction phi = random_function(rng, g.size(), -3.0, 3.0);
      const ContractionReport a = contraction_monotonicity_check(g, u, phi, AbsoluteValue{});
      const ContractionReport c = contraction_monotonicity_check(g, u, phi, Clamp{unif(rng), unif(rng)});
      const ContractionReport l = contraction_monotonicity_check(g, u, phi, random_contraction(rng));
      min_abs = std::min(min_abs, a.slack);
      min_clamp = std::min(min_clamp, c.slack);
      min_pl = std::min(min_pl, l.slack);
      for (const auto* r : {&a, &c, &l})
        if (r->claimed && !r->holds) ++failures;
      if (!l.claimed && l.slack < -1e-12) ++pl_unclaimed_violations;
    }
    out.details[p_key(p)] = Json{{"min_slack_abs", json_number(min_abs)},
                                 {"min_slack_clamp", json_number(min_clamp)},
                                 {"min_slack_piecewise_linear", json_number(min_pl)},
                                 {"piecewise_linear_claimed", p >= 2},
                                 {"unclaimed_violations", pl_unclaimed_violations},
                                 {"failures", failures}};
    out.passed = out.passed && failures == 0;
    summary += p_key(p) + " min slack " + fmt(std::min({min_abs, min_clamp, p >= 2 ? min_pl : kInfinity})) + " ";
  }
  out.summary = summary;
  return out;
}

CriterionOutcome criterion_cutoff(std::uint64_t seed, const CorpusScale& scale) {
  CriterionOutcome out{4, "cutoff_energy", true, "", Json::object()};
  auto rng = criterion_rng(seed, out.id);
  std::string summary;
  for (double p : kPs) {
    const int trials = p == 2.0 ? scale.cutoff_trials : std::max(1, scale.cutoff_trials / 5);
    double worst = 0.0;
    int failures = 0;
    for (int i = 0; i < trials; ++i) {
      const RandomInstance inst = random_mixed_instance(rng, static_cast<std::size_t>(i), p);
      const VertexFunction phi = random_function(rng, inst.graph.size(), -1.0, 3.0);
      const CutoffReport r = cutoff_energy_check(inst.graph, inst.supersolution, phi);
      if (!std::isfinite(r.ratio) || (r.asserted && !r.holds)) ++failures;
      worst = std::max(worst, r.ratio);
    }
    out.details[p_key(p)] = Json{{"trials", trials}, {"max_ratio", json_number(worst)}, {"failures", failures}};
    out.passed = out.passed && failures == 0;
    summary += p_key(p) + " max ratio " + fmt(worst) + " ";
  }
  out.summary = summary;
  return out;
}

CriterionOutcome criterion_capacity_oracle(std::uint64_t seed, const CorpusScale& scale) {
  CriterionOutcome out{5, "capacity_oracle", true, "", Json::object()};
  auto rng = criterion_rng(seed, out.id);
  double worst = 0.0;
  for (int i = 0; i < scale.capacity_instances; ++i) {
    const RandomInstance inst = random_instance(rng, InstanceKind::subcritical_nonnegative, 2.0);
    const Graph& g = inst.graph;
    const VertexSet K = random_subset(rng, g.size());
    const double a = capacity(g, VertexFunction::Ones(g.size()), K, CapacityVariant::standard).value;
    const double b = capacity_oracle_p2(g, K).value;
    worst = std::max(worst, relative(a, b));
  }
  double series = 0.0;
  Json rows = Json::array();
  for (double p : kPs)
    for (long n : {2L, 4L, 8L}) {
      const Graph g = path_graph(n, true, false, p);
      const double v = capacity(g, VertexFunction::Ones(n), {n - 1}, CapacityVariant::standard).value;
      const double expect = std::pow(static_cast<double>(n), 1.0 - p);
      series = std::max(series, std::abs(v - expect));
      rows.push_back(Json{{"p", p}, {"n", n}, {"capacity", json_number(v)}, {"expected", json_number(expect)}});
    }
  out.passed = worst <= 1e-8 && series <= 1e-7;
  out.details["max_relative_deviation"] = json_number(worst);
  out.details["series_max_deviation"] = json_number(series);
  out.details["series"] = std::move(rows);
  out.summary = "oracle deviation " + fmt(worst) + " (tol 1e-8), series deviation " + fmt(series) + " (tol 1e-7)";
  return out;
}

CriterionOutcome criterion_capacity_equivalence(std::uint64_t seed, const CorpusScale& scale) {
  CriterionOutcome out{6, "capacity_equivalence", true, "", Json::object()};
  auto rng = criterion_rng(seed, out.id);
  std::uniform_real_distribution<double> tdist(0.5, 2.0);
  int ordering = 0, zero_sets = 0, zeros = 0;
  double worst_scaling = -kInfinity, max_scaling_rel = 0.0;
  for (int i = 0; i < scale.equivalence_instances; ++i) {
    const double p = kPs[i % 3];
    const RandomInstance inst = random_mixed_instance(rng, static_cast<std::size_t>(i / 3), p);
    const Graph& g = inst.graph;
    const VertexSet K = random_subset(rng, g.size());
    const EquivalenceReport e = equivalence_report(g, inst.supersolution, K);
    if (!e.ordering_holds) ++ordering;
    if (!e.zero_sets_agree) ++zero_sets;
    if (e.standard.value <= 1e-7) ++zeros;
    const double t = tdist(rng);
    const double scaled =
        capacity(g, VertexFunction(t * inst.supersolution), K, CapacityVariant::standard).value;
    const double expect = std::pow(t, p) * e.standard.value;
    // Q is evaluated with signed c; its round-off is relative to the positive part.
    const double floor = 1e-12 * std::max(1.0, std::pow(t, p) * energy(g, e.standard.minimizer).positive_part);
    worst_scaling = std::max(worst_scaling, std::abs(scaled - expect) - (1e-9 * std::abs(expect) + floor));
    if (e.standard.value > 1e-7) max_scaling_rel = std::max(max_scaling_rel, relative(scaled, expect));
  }
  out.passed = ordering == 0 && zero_sets == 0 && worst_scaling <= 0.0;
  out.details["instances"] = scale.equivalence_instances;
  out.details["ordering_failures"] = ordering;
  out.details["zero_set_failures"] = zero_sets;
  out.details["zero_capacities"] = zeros;
  out.details["scaling_max_relative_deviation"] = json_number(max_scaling_rel);
  out.summary = "ordering failures " + std::to_string(ordering) + ", zero-set failures " + std::to_string(zero_sets) +
                ", zero capacities " + std::to_string(zeros) + ", scaling deviation " + fmt(max_scaling_rel) + " (tol 1e-9)";
  return out;
}

CriterionOutcome criterion_mazya(std::uint64_t seed, const CorpusScale& scale) {
  CriterionOutcome out{7, "mazya_sandwich", true, "", Json::object()};
  auto rng = criterion_rng(seed, out.id);
  InstanceOptions io;
  io.max_vertices = 8;
  std::string summary;
  for (double p : kPs) {
    double max_ratio = 0.0, min_ratio = kInfinity;
    int failures = 0;
    for (int i = 0; i < scale.mazya_instances; ++i) {
      const InstanceKind kind = i % 2 == 0 ? InstanceKind::subcritical_nonnegative : InstanceKind::subcritical_signed;
      const RandomInstance inst = random_instance(rng, kind, p, io);
      const VertexFunction w = random_function(rng, inst.graph.size(), 0.5, 2.0);
      const MazyaSandwichReport r = mazya_sandwich_check(inst.graph, w, inst.supersolution, 8, 1e-8);
      if (!r.lower_holds || !r.ratio_holds) ++failures;
      max_ratio = std::max(max_ratio, r.ratio);
      min_ratio = std::min(min_ratio, r.ratio);
    }
    out.details[p_key(p)] =
        Json{{"min_ratio", json_number(min_ratio)}, {"max_ratio", json_number(max_ratio)}, {"failures", failures}};
    out.passed = out.passed && failures == 0;
    summary += p_key(p) + " ratio in [" + fmt(min_ratio) + ", " + fmt(max_ratio) + "] ";
  }
  out.summary = summary;
  return out;
}

CriterionOutcome criterion_hardy(std::uint64_t seed, const CorpusScale& scale) {
  CriterionOutcome out{8, "hardy_eigen_oracle", true, "", Json::object()};
  auto rng = criterion_rng(seed, out.id);
  const double pi = std::acos(-1.0);
  double eig = 0.0;
  for (long n : {1L, 3L, 7L, 15L}) {
    const Graph g = path_graph(n, true, true, 2.0);
    const double l = hardy_constant(g, VertexFunction::Ones(n)).lambda0;
    eig = std::max(eig, std::abs(l - 2.0 * (1.0 - std::cos(pi / static_cast<double>(n + 1)))));
  }
  double grad = 0.0;
  for (int i = 0; i < scale.gradient_trials; ++i) {
    const RandomInstance inst = random_mixed_instance(rng, static_cast<std::size_t>(i / 3), kPs[i % 3]);
    const Graph& g = inst.graph;
    const VertexFunction phi = random_function(rng, g.size(), -2.0, 2.0);
    const VertexFunction an = energy_gradient(g, phi);
    VertexFunction fd(g.size());
    const double h = 1e-6;
    for (Index x = 0; x < g.size(); ++x) {
      VertexFunction a = phi, b = phi;
      a(x) += h;
      b(x) -= h;
      fd(x) = (energy_value(g, a) - energy_value(g, b)) / (2 * h);
    }
    grad = std::max(grad, (an - fd).cwiseAbs().maxCoeff() / std::max(an.cwiseAbs().maxCoeff(), 1e-8));
  }
  out.passed = eig <= 1e-8 && grad <= 1e-5;
  out.details["eigenvalue_deviation"] = json_number(eig);
  out.details["gradient_relative_deviation"] = json_number(grad);
  out.summary = "eigenvalue deviation " + fmt(eig) + " (tol 1e-8), gradient deviation " + fmt(grad) + " (tol 1e-5)";
  return out;
}

CriterionOutcome criterion_criticality(std::uint64_t seed, const CorpusScale& scale) {
  CriterionOutcome out{9, "criticality_machinery", true, "", Json::object()};
  auto rng = criterion_rng(seed, out.id);
  double post = 0.0;
  for (int i = 0; i < scale.criticalize_instances; ++i) {
    const RandomInstance inst = random_mixed_instance(rng, static_cast<std::size_t>(i / 3), kPs[i % 3]);
    const Index x = std::uniform_int_distribution<Index>(0, inst.graph.size() - 1)(rng);
    post = std::max(post, std::abs(criticalize(inst.graph, x).post_check));
  }

  double nulls = 0.0;
  bool monotone = true;
  const long N = 8;
  for (double p : kPs) {
    const Graph g = path_graph(2 * N + 1, false, false, p);
    VertexSet Y;
    for (long k = 1; k < 2 * N; ++k) Y.push_back(k);
    std::vector<VertexSet> ks;
    for (long n = 0; n < N; ++n) {
      VertexSet K;
      for (long k = N - n; k <= N + n; ++k) K.push_back(k);
      ks.push_back(K);
    }
    const CriticalityReport r = null_sequence(g, VertexFunction::Ones(g.size()), ExhaustionPlan(ks), Y);
    monotone = monotone && r.monotone;
    for (long n = 0; n < N; ++n)
      nulls = std::max(nulls, std::abs(r.null_sequence_energies[static_cast<std::size_t>(n)] -
                                       2.0 * std::pow(static_cast<double>(N - n), 1.0 - p)));
  }

  const Graph path3 = path_graph(3, true, true, 2.0);
  const CriticalizeResult cr = criticalize(path3, 1);
  const VertexFunction psi = ground_state(cr.critical, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(energy_matrix(cr.critical));
  const Eigen::VectorXd v = es.eigenvectors().col(0).normalized();
  const Eigen::VectorXd s = psi.normalized();
  const double cosine = std::abs(s.dot(v));
  const double angle = std::atan2((s - s.dot(v) * v).norm(), cosine);

  out.passed = post <= 1e-7 && nulls <= 1e-9 && monotone && angle < 1e-6;
  out.details["max_post_check"] = json_number(post);
  out.details["null_sequence_deviation"] = json_number(nulls);
  out.details["null_sequence_monotone"] = monotone;
  out.details["ground_state_angle"] = json_number(angle);
  out.summary = "post-check " + fmt(post) + ", null-sequence deviation " + fmt(nulls) + ", angle " + fmt(angle);
  return out;
}

CriterionOutcome criterion_kp(std::uint64_t, const CorpusScale&) {
  CriterionOutcome out{10, "kp_necessary_condition", true, "", Json::object()};
  int failures = 0;
  double min_slack = kInfinity;
  for (double p : kPs)
    for (long n : {5L, 10L, 20L}) {
      const Graph g = path_graph(n, true, false, p);
      const VertexFunction u = green_function(g, n - 1);
      const KpReport r = kp_check(g, VertexFunction::Ones(n), u, n - 1, ExhaustionPlan::balls(g, n - 1));
      if (!r.holds) ++failures;
      for (const auto& st : r.stages) min_slack = std::min(min_slack, st.bound - st.partial_sum);
    }

  Json demo = Json::array();
  double bound20 = 0.0, last = 0.0;
  bool increasing = true;
  for (long N : {20L, 40L, 80L}) {
    const Graph g = path_graph(2 * N + 1, true, true, 2.0);
    const VertexFunction u = green_function(g, N);
    const KpReport r = kp_check(g, VertexFunction::Ones(g.size()), u, N, ExhaustionPlan::balls(g, N));
    const double sum = r.stages.back().partial_sum;
    if (N == 20) bound20 = r.stages.back().bound;
    increasing = increasing && sum > last;
    last = sum;
    demo.push_back(Json{{"N", N}, {"partial_sum", json_number(sum)}, {"bound", json_number(r.stages.back().bound)}});
  }
  const bool diverges = increasing && last > bound20;
  out.passed = failures == 0 && diverges;
  out.details["failures"] = failures;
  out.details["min_slack"] = json_number(min_slack);
  out.details["divergence"] = std::move(demo);
  out.details["bound_at_20"] = json_number(bound20);
  out.summary = "bound failures " + std::to_string(failures) + ", min slack " + fmt(min_slack) +
                ", partial sum at N=80 " + fmt(last) + " vs bound at N=20 " + fmt(bound20);
  return out;
}

CriterionOutcome criterion_cheeger(std::uint64_t, const CorpusScale&) {
  CriterionOutcome out{11, "cheeger_bounds", true, "", Json::object()};
  const Graph g = tree_graph(2, 3, true, 2.0);
  const Index n = g.size();
  bool in_range = true;
  std::string hs;
  for (int cap : {4, 8}) {
    CheegerOptions co;
    co.size_cap = cap;
    const CheegerResult r = cheeger_constant(g.weights(), g.measure(), g.potential().cwiseMax(0.0), co);
    in_range = in_range && r.h >= 1.0 && r.h <= 1.25;
    out.details["h_cap_" + std::to_string(cap)] = json_number(r.h);
    hs += "h(cap " + std::to_string(cap) + ") = " + fmt(r.h) + ", ";
  }
  const CheegerBoundsReport b = cheeger_bounds_report(g, VertexFunction::Ones(n), CheegerVariant::general_p);
  bool lower = false, upper = false;
  for (const auto& a : b.assertions) {
    if (a.name == "lower") lower = a.passed;
    if (a.name == "upper_degree") upper = a.passed;
  }

  RunConfig cfg;
  cfg.subcommand = "cheeger-bounds";
  cfg.variant = "general_p";
  const Report general = make_report(cfg, g);
  cfg.variant = "gst_p2";
  cfg.u = "ones";
  const Report gst = make_report(cfg, g);
  auto body = [](const Report& r) {
    Json j = r.to_json();
    j.erase("config");
    return dump_json(j);
  };
  const bool identical = body(general) == body(gst);

  out.passed = in_range && lower && upper && identical;
  out.details["norm_H"] = json_number(b.norm_H);
  out.details["lower_bound"] = json_number(b.lower_bound);
  out.details["upper_degree"] = json_number(b.upper_degree);
  out.details["lower_holds"] = lower;
  out.details["upper_holds"] = upper;
  out.details["gst_identical"] = identical;
  out.summary = hs + "1/h = " + fmt(b.lower_bound) + " <= norm_H = " + fmt(b.norm_H) + " <= " + fmt(b.upper_degree) +
                (identical ? ", gst report identical" : ", gst report differs");
  return out;
}

CriterionOutcome criterion_fractional(std::uint64_t, const CorpusScale&) {
  CriterionOutcome out{12, "fractional_weights", true, "", Json::object()};
  double eig = 0.0, quad = 0.0, min_off = kInfinity;
  for (double sigma : {0.25, 0.5, 0.75})
    for (long n : {2L, 5L, 10L}) {
      const FractionalCheck f = spectral_fractional_check(path_graph(n, false, false, 2.0), sigma);
      eig = std::max(eig, f.eigenvalue_deviation);
      quad = std::max(quad, f.quadrature_deviation);
      min_off = std::min(min_off, f.min_offdiagonal);
    }
  out.passed = eig <= 1e-6 && quad <= 1e-6 && min_off > 0;
  out.details["eigenvalue_deviation"] = json_number(eig);
  out.details["quadrature_deviation"] = json_number(quad);
  out.details["min_offdiagonal"] = json_number(min_off);
  out.summary = "eigenvalue deviation " + fmt(eig) + ", quadrature deviation " + fmt(quad) + ", min b_sigma " +
                fmt(min_off);
  return out;
}

std::vector<CriterionOutcome> run_criteria(std::uint64_t seed, const CorpusScale& scale) {
  using Runner = CriterionOutcome (*)(std::uint64_t, const CorpusScale&);
  static constexpr Runner runners[] = {criterion_gst_identity, criterion_sandwich,           criterion_contraction,
                                       criterion_cutoff,       criterion_capacity_oracle,    criterion_capacity_equivalence,
                                       criterion_mazya,        criterion_hardy,              criterion_criticality,
                                       criterion_kp,           criterion_cheeger,            criterion_fractional};
  std::vector<CriterionOutcome> out;
  for (Runner r : runners) out.push_back(r(seed, scale));
  return out;
}

Report corpus_report(std::uint64_t seed, const CorpusScale& scale) {
  Report r;
  r.subcommand = "corpus";
  r.config["seed"] = seed;
  r.results["seed"] = seed;
  Json criteria = Json::array();
  for (const auto& c : run_criteria(seed, scale)) {
    criteria.push_back(Json{{"instance", "criterion_" + std::to_string(c.id)},
                            {"id", c.id},
                            {"name", c.name},
                            {"passed", c.passed},
                            {"summary", c.summary},
                            {"details", c.details}});
    r.check(c.name, c.passed, c.passed ? 0.0 : 1.0, 0.0);
  }
  r.results["criteria"] = std::move(criteria);
  return r;
}

}  // namespace psch
