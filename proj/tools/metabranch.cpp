#include <cstdlib>
#include <iostream>

#include "metabranch/cli.hpp"

int main(int argc, char** argv) {
  return metabranch::cli_main(argc, argv, std::cout, std::cerr, std::getenv(metabranch::kPrecisionEnv));
}
