// Runs every acceptance criterion and prints one line per criterion.
#include <cstdlib>
#include <iostream>
#include <string>

#include "galcas/acceptance.hpp"

int main(int argc, char** argv) {
  galcas::acceptance::Options opt;
  if (argc > 1) opt.only = std::atoi(argv[1]);
  bool ok = true;
  int deviations = 0;
  galcas::acceptance::run_all(opt, [&](const galcas::acceptance::CriterionResult& r) {
    std::cout << galcas::acceptance::format_line(r) << std::endl;
    ok = ok && r.pass;
    deviations += !r.deviations.empty();
  });
  std::cout << (ok ? "all criteria pass" : "FAILURES");
  if (deviations) std::cout << " (" << deviations << " with misprints in the printed data)";
  std::cout << std::endl;
  return ok ? 0 : 1;
}
