#ifndef GSHIFT_POLYNOMIAL_HPP
#define GSHIFT_POLYNOMIAL_HPP

#include <gshift/rational.hpp>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace gshift {

/// Univariate polynomial with exact rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients and degree -1.
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> coeffs);
  explicit Polynomial(std::vector<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  /// a*x + b
  static Polynomial linear(const Rational& a, const Rational& b);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;

  /// p(a*x + b)
  Polynomial compose_linear(const Rational& a, const Rational& b) const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Remainder of Euclidean division by a nonzero divisor.
  Polynomial remainder(const Polynomial& divisor) const;

  /// Number of distinct real roots in (x, +inf). Requires p(x) != 0.
  int count_roots_above(const Rational& x) const;

  std::string to_string() const;

private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Smallest integer M >= start such that p(m) > 0 at M and p has no real root
/// in (M, +inf); such an M certifies p(m) > 0 for every integer m >= M.
/// Returns nullopt when p is not eventually positive. The answer may exceed
/// the true threshold when p has real roots strictly between integers.
std::optional<long long> eventually_positive_from(const Polynomial& p, long long start);

/// As above for p(m) >= 0: the zero polynomial qualifies at `start`.
std::optional<long long> eventually_nonnegative_from(const Polynomial& p, long long start);

}  // namespace gshift

#endif
