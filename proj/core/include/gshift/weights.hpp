#ifndef GSHIFT_WEIGHTS_HPP
#define GSHIFT_WEIGHTS_HPP

#include <gshift/graph.hpp>
#include <gshift/polynomial.hpp>
#include <gshift/rational.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace gshift {

/// Squared weights of tree vertices at depth d >= from_depth follow the
/// rational function numerator(d) / denominator(d), with denominator(d) > 0.
struct TailLaw {
  std::size_t from_depth = 1;
  Polynomial numerator;
  Polynomial denominator;

  Rational operator()(std::size_t depth) const;

  /// Certified bounds of the law over integer depths >= from_depth, if finite.
  std::optional<Rational> certified_infimum() const;
  std::optional<Rational> certified_supremum() const;
};

/// Positive squared weights lambda_w^2 on the vertices of a one-circuit graph.
/// Only squares are stored: every quantity computed from a weight system is a
/// rational function of them.
class WeightSystem {
public:
  using SquaredWeightFn = std::function<Rational(const VertexId&)>;

  WeightSystem(std::string family, SquaredWeightFn sq_weight, std::optional<Rational> positivity_floor,
               std::optional<TailLaw> tail = std::nullopt);

  /// Explicit squared weights with a default for every other vertex.
  static WeightSystem table(std::map<VertexId, Rational> entries, Rational default_sq);
  static WeightSystem constant(const Rational& sq);

  /// lambda_v^2; throws if the family produced a non-positive value.
  Rational sq_weight(const VertexId& v) const;
  double weight(const VertexId& v) const;

  const std::string& family() const { return family_; }
  /// Lower bound on every squared weight (inf lambda > 0), when known.
  const std::optional<Rational>& positivity_floor() const { return floor_; }
  const std::optional<TailLaw>& tail() const { return tail_; }

private:
  std::string family_;
  SquaredWeightFn sq_;
  std::optional<Rational> floor_;
  std::optional<TailLaw> tail_;
};

/// (lambda^(k)(v))^2 = product of sq_weight(par^j v) for j = 0..k-1.
Rational lambda_k_sq(const OneCircuitGraph& g, const WeightSystem& w, const VertexId& v, std::size_t k);

/// Sum of squared weights over Chi(v), i.e. ||S e_v||^2.
Rational child_sq_sum(const OneCircuitGraph& g, const WeightSystem& w, const VertexId& v);

/// Weights of the Cauchy dual S' = S (S*S)^{-1}, itself a weighted shift on g:
/// sq'(u) = sq(u) / (sum of sq over Chi(par u))^2.
WeightSystem cauchy_dual(const OneCircuitGraph& g, const WeightSystem& w);

/// Parameters (a, b, epsilon) of the analytic 3-isometry family on the path
/// graph with a loop at its root.
struct Example31Params {
  Rational a;
  Rational b;
  Rational epsilon;
};

/// K = eps^2 - eps (a + b) + 2 b.
Rational k_epsilon(const Example31Params& p);
/// eps + b (2/eps - 1) > a.
bool epsilon0_feasible(const Rational& a, const Rational& b, const Rational& epsilon);
/// Empty if admissible, otherwise a diagnostic naming the violated condition.
std::optional<std::string> example31_violation(const Example31Params& p);

/// p_{a,b}(n) = 1 + a n + b n^2.
Rational p_ab(const Example31Params& p, const Rational& n);

/// The graph the family lives on: path tree, circuit length 0.
OneCircuitGraph example31_graph();

/// sq(0) = 1 - eps, sq(1) = eps^3 / K, sq(n) = p(n-1)/p(n-2) for n >= 2.
/// Throws InputError for inadmissible parameters.
WeightSystem example31_weights(const Example31Params& p);

}  // namespace gshift

#endif
