#include <iostream>

#include "qcm/cli.h"

int main(int argc, char** argv) {
  return qcm::RunCli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
