#include "psch/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace psch {

namespace {

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

double require_number(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_number()) throw InputError(where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

std::string require_string(const Json& obj, const char* key, const std::string& where) {
  const Json& v = require(obj, key, where);
  if (!v.is_string()) throw InputError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump_into(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_into(it.value(), depth + 1, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_into(v, depth + 1, out);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : Json(json_number(v)).dump();
      return;
    }
    default:
      out += j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string leaf_text(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const Json& j, const std::string& instance, const std::string& path, std::string& out) {
  if (j.is_object()) {
    std::string inst = instance;
    if (j.contains("instance") && j.at("instance").is_string()) inst = j.at("instance").get<std::string>();
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "instance") continue;
      flatten(it.value(), inst, path.empty() ? it.key() : path + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], instance, path + "[" + std::to_string(i) + "]", out);
  } else {
    out += csv_field(instance) + "," + csv_field(path) + "," + csv_field(leaf_text(j)) + "\n";
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GraphData parse_graph_data(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("graph file must hold a JSON object");
  GraphData data;
  data.p = require_number(j, "p", "graph");
  const Json& vs = require(j, "vertices", "graph");
  const Json& es = require(j, "edges", "graph");
  if (!vs.is_array() || !es.is_array()) throw InputError("graph: 'vertices' and 'edges' must be arrays");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = "vertex " + std::to_string(i);
    data.vertices.push_back(
        {require_string(vs[i], "id", where), require_number(vs[i], "m", where), require_number(vs[i], "c", where)});
  }
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edge " + std::to_string(i);
    data.edges.push_back(
        {require_string(es[i], "u", where), require_string(es[i], "v", where), require_number(es[i], "b", where)});
  }
  return data;
}

GraphData load_graph_data(const std::string& path) { return parse_graph_data(read_file(path)); }

Graph load_graph(const std::string& path) { return build_graph(load_graph_data(path)); }

Json graph_to_json(const Graph& g) {
  const GraphData d = to_data(g);
  Json j = Json::object();
  j["p"] = d.p;
  j["vertices"] = Json::array();
  for (const auto& v : d.vertices) j["vertices"].push_back(Json{{"id", v.id}, {"m", v.m}, {"c", v.c}});
  j["edges"] = Json::array();
  for (const auto& e : d.edges) j["edges"].push_back(Json{{"u", e.u}, {"v", e.v}, {"b", e.b}});
  return j;
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << dump_json(graph_to_json(g)) << "\n";
}

Json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json json_vector(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(json_number(v(i)));
  return a;
}

Json json_vertex_map(const Graph& g, const VertexFunction& f) {
  Json o = Json::object();
  for (Index i = 0; i < g.size(); ++i) o[g.id(i)] = json_number(f(i));
  return o;
}

Json json_vertex_set(const Graph& g, const VertexSet& set) {
  Json a = Json::array();
  for (Index i : set) a.push_back(g.id(i));
  return a;
}

Json json_edges(const Graph& g, const EdgeTableD& table, const char* key) {
  Json a = Json::array();
  for (const auto& e : table.entries()) a.push_back(Json{{"u", g.id(e.u)}, {"v", g.id(e.v)}, {key, json_number(e.w)}});
  return a;
}

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(j, 0, out);
  return out;
}

bool Report::passed() const {
  for (const auto& a : assertions)
    if (!a.passed) return false;
  return true;
}

void Report::check(std::string name, bool ok, double lhs, double rhs) {
  BoundAssertion a;
  a.name = std::move(name);
  a.passed = ok;
  a.lhs = lhs;
  a.rhs = rhs;
  a.slack = rhs - lhs;
  assertions.push_back(std::move(a));
}

Json Report::to_json() const {
  Json j = Json::object();
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["results"] = results;
  j["assertions"] = Json::array();
  for (const auto& a : assertions)
    j["assertions"].push_back(Json{{"name", a.name},
                                   {"passed", a.passed},
                                   {"lhs", json_number(a.lhs)},
                                   {"rhs", json_number(a.rhs)},
                                   {"slack", json_number(a.slack)}});
  return j;
}

std::string Report::to_csv() const {
  std::string out = "instance,quantity,value\n";
  flatten(results, subcommand, "", out);
  for (const auto& a : assertions) {
    out += "assertions," + csv_field(a.name + ".passed") + "," + (a.passed ? "true" : "false") + "\n";
    out += "assertions," + csv_field(a.name + ".lhs") + "," + format_double(a.lhs) + "\n";
    out += "assertions," + csv_field(a.name + ".rhs") + "," + format_double(a.rhs) + "\n";
    out += "assertions," + csv_field(a.name + ".slack") + "," + format_double(a.slack) + "\n";
  }
  return out;
}

}  // namespace psch
