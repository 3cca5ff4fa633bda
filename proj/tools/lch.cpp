// Command-line entry point. The real driver lives in lch/cli.hpp; this
// translation unit stays thin so the library itself remains header-only.
#include <iostream>

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::cerr << "lch: command-line driver not wired up yet\n";
  return 2;
}
