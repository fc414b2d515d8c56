#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carnot/frame.hpp"
#include "carnot/nilpotent.hpp"

namespace carnot {

struct CatalogEntry {
  std::string name;
  /// Present for group frames: the frame is then the left-invariant frame at 0.
  std::optional<StructureConstants> algebra;
  Frame frame;
};

/// abelian_<n>, heisenberg_3, heisenberg_5, engel_4, step3_filiform_5,
/// perturbed_heisenberg_3, perturbed_engel_4. Throws std::out_of_range for
/// unknown names.
CatalogEntry catalog(const std::string& name);

/// All fixed names plus abelian_2.
std::vector<std::string> catalog_names();
/// Names of the entries that carry an algebra.
std::vector<std::string> catalog_algebra_names();

}  // namespace carnot
