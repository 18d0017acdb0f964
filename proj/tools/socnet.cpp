#include <string>
#include <vector>

#include "socnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return socnet::cli::run(args);
}
