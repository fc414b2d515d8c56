#include "carnot/catalog.hpp"

#include <charconv>
#include <stdexcept>

namespace carnot {

namespace {

CatalogEntry group_entry(const std::string& name, StructureConstants l) {
  const std::size_t n = l.dim();
  Frame frame(l.weights(), zero_point(n), left_invariant_fields(l));
  return {name, std::move(l), std::move(frame)};
}

StructureConstants heisenberg(std::size_t m) {
  std::vector<int> w(2 * m + 1, 1);
  w.back() = 2;
  StructureConstants l{WeightVector(w)};
  for (std::size_t j = 0; j < m; ++j) l.set(j, m + j, 2 * m, 1);
  return l;
}

StructureConstants engel() {
  StructureConstants l{WeightVector({1, 1, 2, 3})};
  l.set(0, 1, 2, 1);
  l.set(0, 2, 3, 1);
  return l;
}

StructureConstants free_step3_rank2() {
  StructureConstants l{WeightVector({1, 1, 2, 3, 3})};
  l.set(0, 1, 2, 1);
  l.set(0, 2, 3, 1);
  l.set(1, 2, 4, 1);
  return l;
}

CatalogEntry perturb(const std::string& name, CatalogEntry base, const Poly& extra, std::size_t k) {
  std::vector<VectorField> fields = base.frame.fields();
  fields[0][k] += extra;
  return {name, std::nullopt, Frame(base.frame.weights(), base.frame.base_point(), std::move(fields))};
}

}  // namespace

CatalogEntry catalog(const std::string& name) {
  if (name.starts_with("abelian_")) {
    std::size_t n = 0;
    const char* first = name.data() + 8;
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc{} || ptr != last || n == 0 || n > 7) throw std::out_of_range("unknown catalog entry: " + name);
    return group_entry(name, StructureConstants(WeightVector(std::vector<int>(n, 1))));
  }
  if (name == "heisenberg_3") return group_entry(name, heisenberg(1));
  if (name == "heisenberg_5") return group_entry(name, heisenberg(2));
  if (name == "engel_4") return group_entry(name, engel());
  if (name == "step3_filiform_5") return group_entry(name, free_step3_rank2());
  if (name == "perturbed_heisenberg_3")
    return perturb(name, catalog("heisenberg_3"), Poly::monomial(3, MultiIndex(std::vector<int>{2, 0, 0})), 2);
  if (name == "perturbed_engel_4")
    return perturb(name, catalog("engel_4"), Poly::monomial(4, MultiIndex(std::vector<int>{2, 0, 0, 0})), 2);
  throw std::out_of_range("unknown catalog entry: " + name);
}

std::vector<std::string> catalog_names() {
  return {"abelian_2",  "heisenberg_3", "heisenberg_5", "engel_4", "step3_filiform_5", "perturbed_heisenberg_3",
          "perturbed_engel_4"};
}

std::vector<std::string> catalog_algebra_names() {
  return {"abelian_2", "heisenberg_3", "heisenberg_5", "engel_4", "step3_filiform_5"};
}

}  // namespace carnot
