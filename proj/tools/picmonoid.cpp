#include <iostream>

#include "picmonoid/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  picmonoid::CommandResult r = picmonoid::run(args);
  (r.ok ? std::cout : std::cerr) << picmonoid::render(r);
  for (const auto& d : r.diagnostics) std::cerr << "note: " << d << '\n';
  return r.exit_code;
}
