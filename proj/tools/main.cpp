#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  noiselab::cli::RunConfig config;
  const int parsed = noiselab::cli::parse_args(argc, argv, config, std::cout, std::cerr);
  if (parsed >= 0) return parsed;
  return noiselab::cli::run(config, std::cout, std::cerr);
}
