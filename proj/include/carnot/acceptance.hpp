#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace carnot {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the 14 acceptance criteria on the catalog. Randomized criteria draw
/// from a generator seeded with seed.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// One line per criterion: "[PASS] 1 title: detail (0.12 s)".
std::string format_result(const CriterionResult& r);

}  // namespace carnot
