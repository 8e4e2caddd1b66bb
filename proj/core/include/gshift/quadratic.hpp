#ifndef GSHIFT_QUADRATIC_HPP
#define GSHIFT_QUADRATIC_HPP

#include <gshift/rational.hpp>

#include <memory>
#include <string>

namespace gshift {

/// Exact element a + b*sqrt(c) of the quadratic field Q(sqrt(c)).
///
/// The radicand c is a positive rational that is not a perfect square, so
/// a + b*sqrt(c) == 0 iff a == b == 0. Numbers with b == 0 are plain
/// rationals and mix freely with any field; two irrational operands must
/// share the same radicand.
class QuadraticNumber {
public:
  QuadraticNumber() = default;
  QuadraticNumber(const Rational& a);  // NOLINT(google-explicit-constructor)
  QuadraticNumber(long a) : QuadraticNumber(Rational(a)) {}  // NOLINT
  QuadraticNumber(int a) : QuadraticNumber(Rational(a)) {}   // NOLINT

  /// sqrt(q) for q >= 0; rational when q is a perfect square.
  static QuadraticNumber sqrt_of(const Rational& q);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  /// Radicand, or nullptr for a rational value.
  const Rational* radicand() const { return b_ == 0 ? nullptr : radicand_.get(); }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  /// Exact sign (-1, 0, 1).
  int sign() const;

  QuadraticNumber conjugate() const;
  /// a^2 - c b^2, always rational.
  Rational norm() const;

  QuadraticNumber& operator+=(const QuadraticNumber& o);
  QuadraticNumber& operator-=(const QuadraticNumber& o);
  QuadraticNumber& operator*=(const QuadraticNumber& o);
  QuadraticNumber& operator/=(const QuadraticNumber& o);

  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }
  QuadraticNumber operator-() const;

  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).is_zero(); }
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() < 0; }
  friend bool operator<=(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() <= 0; }
  friend bool operator>(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() > 0; }
  friend bool operator>=(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign() >= 0; }

  double to_double() const;
  /// "a + b*sqrt(c)" or the rational alone.
  std::string to_string() const;

private:
  QuadraticNumber(Rational a, Rational b, std::shared_ptr<const Rational> c);
  void adopt_radicand(const QuadraticNumber& o);
  void normalize();

  Rational a_{0};
  Rational b_{0};
  std::shared_ptr<const Rational> radicand_;
};

inline double to_double(const QuadraticNumber& x) { return x.to_double(); }

}  // namespace gshift

#endif
