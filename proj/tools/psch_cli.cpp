#include "psch/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  psch::RunConfig config;
  if (auto code = psch::parse_command_line(argc, argv, config, std::cout, std::cerr)) return *code;
  return psch::run(config, std::cout, std::cerr);
}
