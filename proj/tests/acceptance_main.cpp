#include <cstdlib>
#include <iostream>

#include "carnot/acceptance.hpp"

int main() {
  std::uint64_t seed = 20240601;
  if (const char* env = std::getenv("CARNOT_SEED")) seed = std::strtoull(env, nullptr, 10);
  std::cout << "acceptance seed " << seed << "\n";
  int failures = 0;
  carnot::run_acceptance(seed, [&](const carnot::CriterionResult& r) {
    std::cout << carnot::format_result(r) << std::endl;
    failures += !r.pass;
  });
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << "\n";
  return failures ? 1 : 0;
}
