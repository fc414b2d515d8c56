#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "carnot/frame.hpp"
#include "carnot/poly.hpp"

namespace carnot {

using Rng = std::mt19937_64;

/// p/q with |p| <= max_num, 1 <= q <= max_den.
Rational random_rational(Rng& rng, int max_num = 5, int max_den = 4);
Point random_point(Rng& rng, std::size_t n, int max_num = 5, int max_den = 4);
/// Random rational point of R^n with Euclidean norm close to 1 (denominator 1000).
Point random_unit_direction(Rng& rng, std::size_t n);

/// x_k + sparse random monomials of weight exactly w_k with |alpha| >= 2.
/// With force_nontrivial at least one coefficient is nonzero when such
/// monomials exist.
PolyMap random_homogeneous_unipotent(Rng& rng, const WeightVector& w, bool force_nontrivial = false);
/// Sparse random map with every monomial of component k of weight in
/// [w_k + m, w_k + m + extra].
PolyMap random_ow_perturbation(Rng& rng, const WeightVector& w, int m = 1, int extra = 1);
/// Unipotent triangular map with random monomials of weight <= w_k in lower
/// weight variables (class E).
PolyMap random_class_e(Rng& rng, const WeightVector& w);

/// Graded triangular fields: X_j = d_j + sum_k p_jk d_k with p_jk a random
/// polynomial in variables of weight < w_k, zero constant term.
std::vector<VectorField> random_triangular_fields(Rng& rng, const WeightVector& w, int max_degree = 3);

/// Linearly adapted frame at 0 with weights (1,..,1,2,..,2) and random
/// polynomial coefficients.
Frame random_adapted_step2_frame(Rng& rng, std::size_t n1, std::size_t n2);

/// All multi-indices in n variables with weight in [lo, hi] (w weighs them).
std::vector<MultiIndex> monomials_in_weight_range(const WeightVector& w, int lo, int hi);

}  // namespace carnot
