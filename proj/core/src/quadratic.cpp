#include <gshift/quadratic.hpp>

#include <cmath>
#include <stdexcept>

namespace gshift {

QuadraticNumber::QuadraticNumber(const Rational& a) : a_(a) {}

QuadraticNumber::QuadraticNumber(Rational a, Rational b, std::shared_ptr<const Rational> c)
    : a_(std::move(a)), b_(std::move(b)), radicand_(std::move(c)) {
  normalize();
}

QuadraticNumber QuadraticNumber::sqrt_of(const Rational& q) {
  if (q < 0) throw std::domain_error("square root of a negative rational");
  if (auto r = exact_sqrt(q)) return QuadraticNumber(*r);
  return QuadraticNumber(Rational(0), Rational(1), std::make_shared<const Rational>(q));
}

void QuadraticNumber::normalize() {
  if (b_ == 0) radicand_.reset();
}

void QuadraticNumber::adopt_radicand(const QuadraticNumber& o) {
  if (o.b_ == 0) return;
  if (b_ == 0) {
    radicand_ = o.radicand_;
    return;
  }
  if (radicand_ != o.radicand_ && *radicand_ != *o.radicand_)
    throw std::domain_error("mixing numbers from different quadratic fields");
}

int QuadraticNumber::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 against c b^2.
  const Rational lhs = a_ * a_;
  const Rational rhs = *radicand_ * b_ * b_;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;  // unreachable for a non-square radicand
}

QuadraticNumber QuadraticNumber::conjugate() const { return QuadraticNumber(a_, -b_, radicand_); }

Rational QuadraticNumber::norm() const {
  if (b_ == 0) return a_ * a_;
  return a_ * a_ - *radicand_ * b_ * b_;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& o) {
  adopt_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& o) {
  adopt_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& o) {
  if (b_ == 0 && o.b_ == 0) {
    a_ *= o.a_;
    return *this;
  }
  adopt_radicand(o);
  const Rational& c = *radicand_;
  Rational a = a_ * o.a_ + c * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  normalize();
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (o.b_ == 0) {
    a_ /= o.a_;
    b_ /= o.a_;
    normalize();
    return *this;
  }
  const Rational n = o.norm();
  *this *= o.conjugate();
  a_ /= n;
  b_ /= n;
  normalize();
  return *this;
}

QuadraticNumber QuadraticNumber::operator-() const { return QuadraticNumber(-a_, -b_, radicand_); }

double QuadraticNumber::to_double() const {
  if (b_ == 0) return a_.get_d();
  return a_.get_d() + b_.get_d() * std::sqrt(radicand_->get_d());
}

std::string QuadraticNumber::to_string() const {
  if (b_ == 0) return a_.get_str();
  std::string s;
  if (a_ != 0) s = a_.get_str() + (b_ > 0 ? " + " : " - ");
  else if (b_ < 0) s = "-";
  s += Rational(abs(b_)).get_str() + "*sqrt(" + radicand_->get_str() + ")";
  return s;
}

}  // namespace gshift
