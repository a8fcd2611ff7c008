// Graph files, report assembly and deterministic serialization.
#pragma once

#include "psch/cheeger.hpp"

#include <json.hpp>

#include <string>

namespace psch {

using Json = nlohmann::ordered_json;

/// Parses {"p", "vertices": [{"id", "m", "c"}], "edges": [{"u", "v", "b"}]}.
/// Throws InputError on malformed JSON or missing and mistyped fields.
GraphData parse_graph_data(const std::string& text);
GraphData load_graph_data(const std::string& path);

/// load_graph_data followed by build_graph.
Graph load_graph(const std::string& path);

Json graph_to_json(const Graph& g);
void save_graph(const std::string& path, const Graph& g);

/// Finite values as numbers; +-inf and nan as the strings "inf", "-inf", "nan".
Json json_number(double v);
Json json_vector(const Eigen::VectorXd& v);
/// {id: value} in vertex order.
Json json_vertex_map(const Graph& g, const VertexFunction& f);
Json json_vertex_set(const Graph& g, const VertexSet& set);
Json json_edges(const Graph& g, const EdgeTableD& table, const char* key = "b");

/// Indented JSON with 17 significant digits for every float.
std::string dump_json(const Json& j);

struct Report {
  std::string subcommand;
  Json config = Json::object();
  Json results = Json::object();
  std::vector<BoundAssertion> assertions;

  bool passed() const;
  void check(std::string name, bool passed, double lhs, double rhs);
  Json to_json() const;
  /// Columns instance, quantity, value; one row per numeric or textual leaf.
  std::string to_csv() const;
};

std::string format_double(double v);

}  // namespace psch
