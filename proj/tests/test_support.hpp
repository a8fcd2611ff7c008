// Small builders shared by the unit tests.
#pragma once

#include "psch/graph.hpp"

#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

namespace psch::testing {

struct EdgeSpec {
  Index u;
  Index v;
  double b;
};

/// Graph on vertices "0", "1", ... with the listed data.
inline Graph make_graph(std::vector<double> m, std::vector<double> c, std::initializer_list<EdgeSpec> edges,
                        double p) {
  const Index n = static_cast<Index>(m.size());
  std::vector<std::string> ids;
  for (Index i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  EdgeTableD b;
  for (const auto& e : edges) b.set(e.u, e.v, e.b);
  return Graph(std::move(ids), Eigen::Map<Eigen::VectorXd>(m.data(), n), Eigen::Map<Eigen::VectorXd>(c.data(), n),
               std::move(b), p);
}

inline VertexFunction vec(std::initializer_list<double> values) {
  VertexFunction f(static_cast<Index>(values.size()));
  Index i = 0;
  for (double v : values) f(i++) = v;
  return f;
}

}  // namespace psch::testing
