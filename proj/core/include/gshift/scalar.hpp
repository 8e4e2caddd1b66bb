#ifndef GSHIFT_SCALAR_HPP
#define GSHIFT_SCALAR_HPP

#include <gshift/quadratic.hpp>
#include <gshift/rational.hpp>

#include <cmath>
#include <string>

namespace gshift {

/// Arithmetic mode of operator-level computations.
enum class ArithmeticMode { Rational, Float };

std::string to_string(ArithmeticMode mode);
ArithmeticMode parse_arithmetic_mode(const std::string& text);

/// Per-scalar policy for zero tests and conversions.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<QuadraticNumber> {
  static constexpr bool exact = true;
  static bool is_zero(const QuadraticNumber& x, double /*scale*/ = 1.0) { return x.is_zero(); }
  static double magnitude(const QuadraticNumber& x) { return std::fabs(x.to_double()); }
  static double to_double(const QuadraticNumber& x) { return x.to_double(); }
  static std::string to_string(const QuadraticNumber& x) { return x.to_string(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  /// Default relative tolerance of float mode.
  static constexpr double tolerance = 1e-10;
  static bool is_zero(double x, double scale = 1.0) { return std::fabs(x) <= tolerance * scale; }
  static double magnitude(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static std::string to_string(double x);
};

}  // namespace gshift

#endif
