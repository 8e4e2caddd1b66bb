#include <gshift/polynomial.hpp>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace gshift {

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::linear(const Rational& a, const Rational& b) { return Polynomial({b, a}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::compose_linear(const Rational& a, const Rational& b) const {
  Polynomial inner = linear(a, b);
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + constant(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::remainder(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  Polynomial r = *this;
  const int dd = divisor.degree();
  const Rational lead = divisor.leading();
  while (!r.is_zero() && r.degree() >= dd) {
    const int shift = r.degree() - dd;
    const Rational factor = r.leading() / lead;
    for (int i = 0; i <= dd; ++i) r.coeffs_[static_cast<std::size_t>(i + shift)] -= factor * divisor.coeffs_[static_cast<std::size_t>(i)];
    r.trim();
  }
  return r;
}

namespace {

int sign_of(const Rational& x) { return sgn(x); }

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial r = chain[chain.size() - 2].remainder(chain.back());
    chain.push_back(r * Rational(-1));
  }
  chain.pop_back();
  return chain;
}

}  // namespace

int Polynomial::count_roots_above(const Rational& x) const {
  if (is_zero()) throw std::domain_error("root count of the zero polynomial");
  if ((*this)(x) == 0) throw std::domain_error("root count requires p(x) != 0");
  if (degree() == 0) return 0;
  const auto chain = sturm_chain(*this);
  std::vector<int> at_x, at_inf;
  for (const auto& q : chain) {
    at_x.push_back(sign_of(q(x)));
    at_inf.push_back(sign_of(q.leading()));
  }
  return sign_changes(at_x) - sign_changes(at_inf);
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    os << Rational(abs(c)).get_str();
    if (i >= 1) os << "*x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::optional<long long> eventually_positive_from(const Polynomial& p, long long start) {
  if (p.is_zero() || p.leading() < 0) return std::nullopt;

  auto good = [&p](long long m) {
    const Rational x(static_cast<long>(m));
    if (p(x) <= 0) return false;
    return p.count_roots_above(x) == 0;
  };

  if (good(start)) return start;

  // Cauchy bound: every real root r satisfies |r| < 1 + max |a_i / a_n|.
  Rational bound = 0;
  for (const auto& c : p.coefficients()) bound = std::max(bound, Rational(abs(c / p.leading())));
  bound += 1;
  Integer ceil_bound;
  mpz_cdiv_q(ceil_bound.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  if (!ceil_bound.fits_slong_p() || ceil_bound.get_si() > std::numeric_limits<long long>::max() / 4)
    throw std::overflow_error("polynomial root bound exceeds the supported index range");
  long long hi = std::max<long long>(start, ceil_bound.get_si() + 1);
  while (!good(hi)) hi *= 2;  // guards against p(hi) == 0 exactly at the bound

  long long lo = start;  // good(lo) is false
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (good(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

std::optional<long long> eventually_nonnegative_from(const Polynomial& p, long long start) {
  if (p.is_zero()) return start;
  auto from = eventually_positive_from(p, start);
  // Every integer >= *from is already covered, so step down over integer zeros.
  for (int step = 0; from && step < 64 && *from > start && p(Rational(static_cast<long>(*from - 1))) >= 0; ++step) --*from;
  return from;
}

}  // namespace gshift
