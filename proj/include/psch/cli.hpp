// Subcommand surface: configuration, dispatch and exit codes.
#pragma once

#include "psch/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace psch {

struct RunConfig {
  std::string subcommand;
  std::string graph_path;
  std::optional<double> p;
  double tol = 1e-8;               // value tolerance of the assertions
  double stationarity_tol = 1e-9;  // solver stop criterion
  double zero_threshold = 1e-7;
  int restarts = 8;
  std::uint64_t seed = 0;
  int subset_cap = 0;
  std::string exhaustion;  // "balls:<id>" or "prefix:<k1>,<k2>,..."; default balls around the vertex
  std::string output = "json";
  std::string out_file;

  std::string vertex;           // vertex id; default probe vertex
  std::string set;              // comma-separated ids
  std::string u = "ones";       // function spec
  std::string phi = "random";   // function spec
  std::string weight = "ones";  // function spec
  std::string variant;          // capacity or Cheeger variant
  double sigma = 0.5;
  std::optional<double> frac_p;
  std::string scale = "full";  // corpus size: full or reduced
};

enum ExitCode { kExitPassed = 0, kExitFailed = 1, kExitInput = 2 };

const std::vector<std::string>& subcommands();

/// Builds the report of one subcommand. graph overrides config.graph_path.
/// Throws InputError and PreconditionError.
Report make_report(const RunConfig& config, const std::optional<Graph>& graph = std::nullopt);

/// Runs and writes the report to config.out_file (or out). Errors go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into config; returns an exit code when the program should stop.
std::optional<int> parse_command_line(int argc, const char* const* argv, RunConfig& config, std::ostream& out,
                                      std::ostream& err);

/// Function specs: ones, random, indicator:<id>+<id>, values:<v0>,<v1>,...
/// green:<id>, groundstate. random draws from [lo, hi].
VertexFunction parse_function(const Graph& g, const std::string& spec, std::uint64_t seed, double lo, double hi);

ExhaustionPlan parse_exhaustion(const Graph& g, const std::string& spec, Index center);

}  // namespace psch
