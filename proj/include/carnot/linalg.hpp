#pragma once

#include <stdexcept>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

/// Dense exact matrix, row major.
using Matrix = std::vector<std::vector<Rational>>;

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Matrix identity_matrix(std::size_t n);
Matrix zero_matrix(std::size_t rows, std::size_t cols);
Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
Point multiply(const Matrix& a, std::span<const Rational> x);
/// Gauss-Jordan inverse; throws SingularMatrix.
Matrix inverse(const Matrix& a);
/// Solves a x = b; throws SingularMatrix.
Point solve(const Matrix& a, std::span<const Rational> b);
bool is_square(const Matrix& a);

}  // namespace carnot
