#include <string>
#include <vector>

#include "rainbow/cli.hpp"

int main(int argc, char** argv) {
  return rainbow::run_cli(std::vector<std::string>(argv, argv + argc));
}
