#include "psch/random_instances.hpp"

#include "psch/energy.hpp"

namespace psch {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform in (lo, hi].
double half_open_up(std::mt19937_64& rng, double lo, double hi) { return hi - (hi - lo) * uniform(rng, 0.0, 1.0); }

}  // namespace

const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::subcritical_nonnegative:
      return "subcritical_nonnegative";
    case InstanceKind::critical:
      return "critical";
    case InstanceKind::subcritical_signed:
      return "subcritical_signed";
  }
  return "?";
}

Graph random_connected_graph(std::mt19937_64& rng, Index n, double p, double edge_probability) {
  if (n < 1) throw InputError("random graph needs at least one vertex");
  EdgeTableD b;
  for (Index x = 1; x < n; ++x) {
    const Index parent = std::uniform_int_distribution<Index>(0, x - 1)(rng);
    b.set(parent, x, half_open_up(rng, 0.0, 2.0));
  }
  for (Index x = 0; x < n; ++x)
    for (Index y = x + 1; y < n; ++y)
      if (!b.contains(x, y) && uniform(rng, 0.0, 1.0) < edge_probability) b.set(x, y, half_open_up(rng, 0.0, 2.0));
  VertexFunction m(n);
  for (Index x = 0; x < n; ++x) m(x) = half_open_up(rng, 0.5, 2.0);
  std::vector<std::string> ids;
  for (Index x = 0; x < n; ++x) ids.push_back("v" + std::to_string(x));
  return Graph(std::move(ids), std::move(m), VertexFunction::Zero(n), std::move(b), p);
}

VertexFunction random_function(std::mt19937_64& rng, Index n, double lo, double hi) {
  VertexFunction f(n);
  for (Index x = 0; x < n; ++x) f(x) = uniform(rng, lo, hi);
  return f;
}

VertexFunction critical_potential(const Graph& g, const VertexFunction& u) {
  if (!(u.minCoeff() > 0)) throw PreconditionError("critical_potential needs u > 0");
  const VertexFunction lu = p_laplacian(g, u);
  VertexFunction c(g.size());
  for (Index x = 0; x < g.size(); ++x) c(x) = -g.measure()(x) * lu(x) / std::pow(u(x), g.p() - 1);
  return c;
}

RandomInstance random_instance(std::mt19937_64& rng, InstanceKind kind, double p, const InstanceOptions& opts) {
  const Index n = std::uniform_int_distribution<Index>(opts.min_vertices, opts.max_vertices)(rng);
  const Graph base = random_connected_graph(rng, n, p, opts.edge_probability);
  switch (kind) {
    case InstanceKind::subcritical_nonnegative: {
      VertexFunction c = random_function(rng, n, 0.0, 1.0);
      for (Index x = 0; x < n; ++x)
        if (uniform(rng, 0.0, 1.0) < 0.5) c(x) = 0.0;
      const Index hot = std::uniform_int_distribution<Index>(0, n - 1)(rng);
      c(hot) = half_open_up(rng, 0.0, 1.0);
      return {base.with_potential(c), kind, VertexFunction::Ones(n)};
    }
    case InstanceKind::critical: {
      const VertexFunction u = random_function(rng, n, 0.2, 2.0);
      return {base.with_potential(critical_potential(base, u)), kind, u};
    }
    case InstanceKind::subcritical_signed: {
      const VertexFunction u = random_function(rng, n, 0.2, 2.0);
      VertexFunction c = critical_potential(base, u);
      const Index hot = std::uniform_int_distribution<Index>(0, n - 1)(rng);
      c(hot) += uniform(rng, 0.5, 2.0);
      return {base.with_potential(c), kind, u};
    }
  }
  throw InputError("unknown instance kind");
}

RandomInstance random_mixed_instance(std::mt19937_64& rng, std::size_t index, double p, const InstanceOptions& opts) {
  static constexpr InstanceKind kinds[] = {InstanceKind::subcritical_nonnegative, InstanceKind::critical,
                                           InstanceKind::subcritical_signed};
  return random_instance(rng, kinds[index % 3], p, opts);
}

}  // namespace psch
