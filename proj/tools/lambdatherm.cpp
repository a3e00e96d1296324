#include <iostream>
#include <string>
#include <vector>

#include "lambdatherm/cli.hpp"

int main(int argc, char** argv) {
  return lambdatherm::run_command(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
