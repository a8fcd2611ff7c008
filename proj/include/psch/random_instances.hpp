// Seeded random instances for the property tests and the corpus.
#pragma once

#include "psch/graph.hpp"

#include <random>

namespace psch {

enum class InstanceKind { subcritical_nonnegative, critical, subcritical_signed };
const char* to_string(InstanceKind k);

struct InstanceOptions {
  Index min_vertices = 2;
  Index max_vertices = 12;
  double edge_probability = 0.3;  // extra edges on top of a random spanning tree
};

struct RandomInstance {
  Graph graph;
  InstanceKind kind;
  VertexFunction supersolution;  // positive; Q'[u] = 0 for critical instances
};

/// Connected graph with b in (0, 2], m in (0.5, 2] and c = 0.
Graph random_connected_graph(std::mt19937_64& rng, Index n, double p, double edge_probability = 0.3);

/// Uniform values in [lo, hi].
VertexFunction random_function(std::mt19937_64& rng, Index n, double lo, double hi);

/// c(x) = -m(x) L u(x) / u(x)^{p-1}, so that Q'[u] = 0.
VertexFunction critical_potential(const Graph& g, const VertexFunction& u);

/// subcritical_nonnegative: c >= 0, positive somewhere, u = 1.
/// critical: c from critical_potential of a random u in [0.2, 2].
/// subcritical_signed: the critical potential plus delta in [0.5, 2] at one vertex.
RandomInstance random_instance(std::mt19937_64& rng, InstanceKind kind, double p, const InstanceOptions& opts = {});

/// Cycles through the three kinds by index.
RandomInstance random_mixed_instance(std::mt19937_64& rng, std::size_t index, double p,
                                     const InstanceOptions& opts = {});

}  // namespace psch
