#pragma once

#include <initializer_list>
#include <vector>

#include "carnot/poly.hpp"
#include "carnot/random.hpp"

namespace carnot::test {

inline Poly var(std::size_t n, std::size_t j) { return Poly::variable(n, j); }

inline Poly mono(std::size_t n, std::initializer_list<int> exps, const Rational& c = 1) {
  return Poly::monomial(n, MultiIndex(std::vector<int>(exps)), c);
}

inline Poly cst(std::size_t n, const Rational& c) { return Poly::constant(n, c); }

inline Rng rng(std::uint64_t seed = 7) { return Rng(seed); }

}  // namespace carnot::test
