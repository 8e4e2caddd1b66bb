#include <gshift/weights.hpp>

#include <algorithm>
#include <cmath>

namespace gshift {

namespace {

constexpr std::size_t kBoundSamples = 64;
constexpr long long kMaxExplicitChecks = 100000;

/// poly(d) >= 0 for every integer d >= from.
bool nonnegative_on_integers_from(const Polynomial& poly, long long from) {
  const auto threshold = eventually_nonnegative_from(poly, from);
  if (!threshold) return false;
  if (*threshold - from > kMaxExplicitChecks) return false;
  for (long long d = from; d < *threshold; ++d)
    if (poly(Rational(static_cast<long>(d))) < 0) return false;
  return true;
}

std::optional<Rational> law_limit(const TailLaw& law) {
  const int dp = law.numerator.degree();
  const int dq = law.denominator.degree();
  if (dp > dq) return std::nullopt;
  if (dp < dq) return Rational(0);
  return law.numerator.leading() / law.denominator.leading();
}

}  // namespace

// ------------------------------------------------------------------ TailLaw

Rational TailLaw::operator()(std::size_t depth) const {
  const Rational d(static_cast<unsigned long>(depth));
  return numerator(d) / denominator(d);
}

std::optional<Rational> TailLaw::certified_infimum() const {
  const auto limit = law_limit(*this);
  if (limit && *limit == 0) return std::nullopt;
  Rational candidate = (*this)(from_depth);
  for (std::size_t d = from_depth; d < from_depth + kBoundSamples; ++d) candidate = std::min(candidate, (*this)(d));
  if (limit) candidate = std::min(candidate, *limit);
  const auto from = static_cast<long long>(from_depth);
  for (int attempt = 0; attempt < 64 && candidate > 0; ++attempt) {
    if (nonnegative_on_integers_from(numerator - denominator * candidate, from)) return candidate;
    candidate /= 2;
  }
  return std::nullopt;
}

std::optional<Rational> TailLaw::certified_supremum() const {
  const auto limit = law_limit(*this);
  if (!limit) return std::nullopt;
  Rational candidate = std::max(*limit, (*this)(from_depth));
  for (std::size_t d = from_depth; d < from_depth + kBoundSamples; ++d) candidate = std::max(candidate, (*this)(d));
  const auto from = static_cast<long long>(from_depth);
  for (int attempt = 0; attempt < 64; ++attempt) {
    if (nonnegative_on_integers_from(denominator * candidate - numerator, from)) return candidate;
    candidate *= 2;
  }
  return std::nullopt;
}

// ------------------------------------------------------------ WeightSystem

WeightSystem::WeightSystem(std::string family, SquaredWeightFn sq_weight, std::optional<Rational> positivity_floor,
                           std::optional<TailLaw> tail)
    : family_(std::move(family)), sq_(std::move(sq_weight)), floor_(std::move(positivity_floor)), tail_(std::move(tail)) {
  if (floor_ && *floor_ <= 0) throw InputError("positivity floor must be positive");
}

WeightSystem WeightSystem::table(std::map<VertexId, Rational> entries, Rational default_sq) {
  if (default_sq <= 0) throw InputError("default squared weight must be positive");
  Rational floor = default_sq;
  std::size_t deepest = 0;
  for (const auto& [v, sq] : entries) {
    if (sq <= 0) throw InputError("squared weight of " + v.to_string() + " must be positive");
    floor = std::min(floor, sq);
    if (v.is_tree()) deepest = std::max(deepest, v.tree_depth());
  }
  TailLaw tail{deepest + 1, Polynomial::constant(default_sq), Polynomial::constant(1)};
  auto shared = std::make_shared<const std::map<VertexId, Rational>>(std::move(entries));
  auto fn = [shared, default_sq](const VertexId& v) -> Rational {
    if (auto it = shared->find(v); it != shared->end()) return it->second;
    return default_sq;
  };
  return WeightSystem("table", std::move(fn), floor, std::move(tail));
}

WeightSystem WeightSystem::constant(const Rational& sq) { return table({}, sq); }

Rational WeightSystem::sq_weight(const VertexId& v) const {
  Rational s = sq_(v);
  if (s <= 0) throw InputError("weight family '" + family_ + "' produced a non-positive weight at " + v.to_string());
  return s;
}

double WeightSystem::weight(const VertexId& v) const { return std::sqrt(sq_weight(v).get_d()); }

// -------------------------------------------------------------- operations

Rational lambda_k_sq(const OneCircuitGraph& g, const WeightSystem& w, const VertexId& v, std::size_t k) {
  g.require(v);
  Rational acc = 1;
  VertexId u = v;
  for (std::size_t j = 0; j < k; ++j) {
    acc *= w.sq_weight(u);
    u = g.parent(u);
  }
  return acc;
}

Rational child_sq_sum(const OneCircuitGraph& g, const WeightSystem& w, const VertexId& v) {
  Rational s = 0;
  for (const auto& c : g.children(v)) s += w.sq_weight(c);
  return s;
}

WeightSystem cauchy_dual(const OneCircuitGraph& g, const WeightSystem& w) {
  if (!w.positivity_floor())
    throw InputError("Cauchy dual needs a weight system bounded below (left-invertible shift)");

  auto fn = [g, w](const VertexId& u) -> Rational {
    const Rational s = child_sq_sum(g, w, g.parent(u));
    return w.sq_weight(u) / (s * s);
  };

  std::optional<TailLaw> dual_tail;
  std::optional<Rational> floor;
  const auto [uniform_depth, b] = g.tree().uniform_branching();
  if (w.tail() && b > 0) {
    const TailLaw& t = *w.tail();
    // Parents must be past the root (whose children include the circuit) and inside the uniform part.
    const std::size_t from = std::max({t.from_depth, uniform_depth + 1, std::size_t{2}});
    const Rational b2(static_cast<unsigned long>(b) * b);
    dual_tail = TailLaw{from, t.denominator, t.numerator * b2};

    // Head: root, circuit and shallow tree vertices are finitely many.
    std::optional<Rational> head_min;
    auto consider = [&](const VertexId& v) {
      const Rational s = fn(v);
      if (!head_min || s < *head_min) head_min = s;
    };
    consider(VertexId::root());
    for (std::size_t j = 1; j <= g.circuit_length(); ++j) consider(VertexId::circuit(static_cast<std::uint32_t>(j)));
    for (std::size_t d = 1; d < from; ++d)
      for (const auto& v : g.tree_layer(d)) consider(v);
    if (auto sup = t.certified_supremum(); sup && head_min) {
      // On the tail sq' = 1 / (b^2 R(d)) >= 1 / (b^2 sup R).
      floor = std::min(*head_min, Rational(1 / (b2 * *sup)));
    }
  }
  return WeightSystem("cauchy_dual(" + w.family() + ")", std::move(fn), floor, std::move(dual_tail));
}

Rational k_epsilon(const Example31Params& p) {
  return p.epsilon * p.epsilon - p.epsilon * (p.a + p.b) + 2 * p.b;
}

bool epsilon0_feasible(const Rational& a, const Rational& b, const Rational& epsilon) {
  if (epsilon <= 0) return false;
  return epsilon + b * (2 / epsilon - 1) > a;
}

std::optional<std::string> example31_violation(const Example31Params& p) {
  if (p.a <= 0) return "a must be positive";
  if (p.b <= 0) return "b must be positive";
  if (p.epsilon <= 0 || p.epsilon >= 1) return "epsilon must lie in (0, 1)";
  if (k_epsilon(p) <= 0) return "K_eps = eps^2 - eps(a+b) + 2b must be positive (got " + to_string(k_epsilon(p)) + ")";
  if (!epsilon0_feasible(p.a, p.b, p.epsilon)) return "eps + b(2/eps - 1) > a fails";
  return std::nullopt;
}

Rational p_ab(const Example31Params& p, const Rational& n) { return 1 + p.a * n + p.b * n * n; }

OneCircuitGraph example31_graph() { return OneCircuitGraph(TreeGenerator::path(), 0); }

WeightSystem example31_weights(const Example31Params& p) {
  if (auto why = example31_violation(p)) throw InputError("inadmissible example31 parameters: " + *why);
  const Rational sq0 = 1 - p.epsilon;
  const Rational sq1 = p.epsilon * p.epsilon * p.epsilon / k_epsilon(p);
  const Polynomial poly{Rational(1), p.a, p.b};
  TailLaw tail{2, poly.compose_linear(1, -1), poly.compose_linear(1, -2)};
  auto fn = [sq0, sq1, tail](const VertexId& v) -> Rational {
    if (v.is_root()) return sq0;
    if (!v.is_tree()) throw InputError("example31 weights live on the loop-rooted path graph");
    const std::size_t n = v.tree_depth();
    if (n == 1) return sq1;
    return tail(n);
  };
  const Rational floor = std::min({sq0, sq1, Rational(1)});
  return WeightSystem("example31", std::move(fn), floor, std::move(tail));
}

}  // namespace gshift
