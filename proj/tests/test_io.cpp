#include "psch/cli.hpp"
#include "psch/random_instances.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace psch;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("psch_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

const char* kLine = R"({
  "p": 2,
  "vertices": [{"id": "a", "m": 1, "c": 1}, {"id": "b", "m": 1, "c": 0}, {"id": "c", "m": 1, "c": 1}],
  "edges": [{"u": "a", "v": "b", "b": 1}, {"u": "b", "v": "c", "b": 1}]
})";

int run_cli(std::vector<std::string> args, std::string& out_text) {
  std::vector<const char*> argv{"psch_cli"};
  for (const auto& a : args) argv.push_back(a.c_str());
  RunConfig config;
  std::ostringstream out, err;
  if (auto code = parse_command_line(static_cast<int>(argv.size()), argv.data(), config, out, err)) return *code;
  const int code = run(config, out, err);
  out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("graph files parse and round-trip") {
  const GraphData d = parse_graph_data(kLine);
  CHECK(d.vertices.size() == 3);
  CHECK(d.edges.size() == 2);
  const Graph g = build_graph(d);
  CHECK(g.potential()(0) == 1.0);

  std::mt19937_64 rng(71);
  for (int k = 0; k < 20; ++k) {
    const Graph r = random_mixed_instance(rng, static_cast<std::size_t>(k), 2.5).graph;
    const std::string path = temp_path("roundtrip.json");
    save_graph(path, r);
    CHECK(load_graph(path) == r);
  }
}

TEST_CASE("malformed graph files are input errors") {
  CHECK_THROWS_AS(parse_graph_data("{"), InputError);
  CHECK_THROWS_AS(parse_graph_data(R"({"vertices": [], "edges": []})"), InputError);
  CHECK_THROWS_AS(parse_graph_data(R"({"p": 2, "vertices": [{"id": 1, "m": 1, "c": 0}], "edges": []})"), InputError);
  CHECK_THROWS_AS(load_graph(temp_path("does_not_exist.json")), InputError);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(json_number(kInfinity) == "inf");
  CHECK(json_number(-kInfinity) == "-inf");
  CHECK(json_number(std::nan("")) == "nan");
  CHECK(dump_json(Json{{"x", 0.1}}) == "{\n  \"x\": 0.10000000000000001\n}");
}

TEST_CASE("reports") {
  Report r;
  r.subcommand = "demo";
  r.results["value"] = 1.5;
  r.check("bound", true, 1.0, 2.0);
  CHECK(r.passed());
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("instance,quantity,value\n", 0) == 0);
  CHECK(csv.find("demo,value,1.5") != std::string::npos);
  r.check("other", false, 3.0, 2.0);
  CHECK_FALSE(r.passed());
  CHECK(r.to_json()["assertions"].size() == 2);
}

TEST_CASE("command line") {
  const std::string path = temp_path("line.json");
  write_file(path, kLine);
  std::string out;

  CHECK(run_cli({"validate", "--graph", path}, out) == kExitPassed);
  CHECK(Json::parse(out)["results"]["valid"] == true);

  REQUIRE(run_cli({"hardy", "--graph", path}, out) == kExitPassed);
  const double lambda0 = Json::parse(out)["results"]["hardy"]["lambda0"].get<double>();
  CHECK(lambda0 == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));

  REQUIRE(run_cli({"capacity", "--graph", path, "--set", "b", "--output", "csv"}, out) == kExitPassed);
  CHECK(out.find("capacity.value,1") != std::string::npos);

  std::string again;
  run_cli({"hardy", "--graph", path, "--p", "3", "--seed", "5"}, out);
  run_cli({"hardy", "--graph", path, "--p", "3", "--seed", "5"}, again);
  CHECK(out == again);

  CHECK(run_cli({"no-such-command", "--graph", path}, out) == kExitInput);
  CHECK(run_cli({"hardy", "--graph", temp_path("missing.json")}, out) == kExitInput);
  CHECK(run_cli({"hardy", "--graph", path, "--bogus-flag"}, out) == kExitInput);
  CHECK(run_cli({"green", "--graph", path, "--p", "2", "--vertex", "zz"}, out) == kExitInput);

  const std::string critical = temp_path("free.json");
  save_graph(critical, path_graph(3, false, false, 2.0));
  CHECK(run_cli({"green", "--graph", critical}, out) == kExitInput);
}

TEST_CASE("every subcommand is listed once") {
  const auto& names = subcommands();
  CHECK(names.size() == 26);
  std::set<std::string> unique(names.begin(), names.end());
  CHECK(unique.size() == names.size());
}
