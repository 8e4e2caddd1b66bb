#ifndef GSHIFT_RATIONAL_HPP
#define GSHIFT_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gshift {

/// Exact rational number (always kept in canonical form).
using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown for malformed numeric text, bad configs and violated preconditions
/// that the caller could have checked.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q", "-7", "0.183", "1e-3" or "1.5e2" into an exact rational.
/// Decimal notation is read exactly (0.1 is 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Binomial coefficient C(n, k) as an exact integer.
Integer binomial(unsigned long n, unsigned long k);

/// Exact square root if q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

/// Formats a double with 15 significant digits.
std::string format_double(double x);

}  // namespace gshift

#endif
