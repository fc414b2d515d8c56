#pragma once

#include <gmpxx.h>

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace carnot {

using Rational = mpq_class;
using Point = std::vector<Rational>;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input that does not follow one of the JSON/CLI schemas.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A map or field that violates a structural shape constraint
/// (triangular class, graded-triangular fields, homogeneity, ...).
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q", "p" or "-p/q" (no decimals, no exponents). The result is
/// canonicalized. Throws SchemaError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);

/// Comma separated rationals, e.g. "1,2,-1/3".
Point parse_point(std::string_view csv);

std::vector<double> to_double(std::span<const Rational> p);

/// q^e for any integer e; e < 0 requires q != 0.
Rational power(const Rational& q, int e);

Rational factorial(int k);

inline Point zero_point(std::size_t n) { return Point(n, Rational(0)); }

}  // namespace carnot
