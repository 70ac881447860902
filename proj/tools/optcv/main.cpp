#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"

int main(int argc, char** argv) {
  std::optional<std::string> env_seed;
  if (const char* value = std::getenv("OPTCV_SEED")) env_seed = value;
  return optcv::cli::run(argc, argv, std::cout, std::cerr, env_seed);
}
