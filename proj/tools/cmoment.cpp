#include <iostream>
#include <string>
#include <vector>

#include "cmoment/cli.hpp"

int main(int argc, char** argv) {
  return cmoment::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
