#include <string>
#include <vector>

#include "nlsim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nlsim::run_command(args);
}
