#ifndef GSHIFT_TESTS_ORACLES_HPP
#define GSHIFT_TESTS_ORACLES_HPP

// Brute-force references used by the unit and acceptance tests. Nothing here
// calls into the shift-operator or series code; only the graph's parent and
// children functions are shared.

#include <gshift/graph.hpp>
#include <gshift/rational.hpp>
#include <gshift/shift.hpp>
#include <gshift/weights.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace gshift::oracle {

/// Random one-circuit graph with rational (not merely rational-square) weights,
/// so natural coordinates stay rational.
struct RandomInstance {
  OneCircuitGraph graph;
  WeightSystem weights;
  std::map<VertexId, Rational> lambda;
  Rational default_lambda;
  std::size_t tree_depth = 0;

  Rational weight(const VertexId& v) const {
    auto it = lambda.find(v);
    return it == lambda.end() ? default_lambda : it->second;
  }
};

/// p/q with q <= 6, inside [1/2, 2].
inline Rational random_weight(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> qd(1, 6);
  const long q = qd(rng);
  std::uniform_int_distribution<long> pd((q + 1) / 2, 2 * q);
  Rational r(pd(rng));
  r /= q;
  return r;
}

inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_depth = 6,
                                      std::uint32_t max_branching = 3, std::size_t max_l = 3) {
  const std::size_t l = std::uniform_int_distribution<std::size_t>(0, max_l)(rng);
  const std::size_t depth = std::uniform_int_distribution<std::size_t>(1, max_depth)(rng);
  std::uniform_int_distribution<std::uint32_t> bd(1, max_branching);

  std::map<VertexId, std::int64_t> children;
  std::vector<VertexId> layer{VertexId::root()};
  std::size_t width = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<VertexId> next;
    for (const auto& v : layer) {
      // Keep random trees small enough for exact checks on every pair.
      const std::uint32_t b = width > 60 ? 1 : bd(rng);
      children[v] = b;
      for (std::uint32_t i = 0; i < b; ++i) next.push_back(v.tree_child(i));
    }
    layer = std::move(next);
    width = layer.size();
  }
  OneCircuitGraph g(TreeGenerator::table(children, 1), l);

  std::map<VertexId, Rational> lambda;
  std::map<VertexId, Rational> sq;
  for (const auto& v : g.truncation(depth + l + 4)) {
    const Rational x = random_weight(rng);
    lambda[v] = x;
    sq[v] = x * x;
  }
  const Rational dflt = random_weight(rng);
  WeightSystem w = WeightSystem::table(sq, dflt * dflt);
  return RandomInstance{std::move(g), std::move(w), std::move(lambda), dflt, depth};
}

using NaturalVector = std::map<VertexId, Rational>;

inline void accumulate(NaturalVector& f, const VertexId& v, const Rational& x) {
  auto& slot = f[v];
  slot += x;
  if (slot == 0) f.erase(v);
}

/// (Sf)(v) = lambda_v f(par v), straight from the definition.
inline NaturalVector natural_shift(const RandomInstance& inst, const NaturalVector& f) {
  NaturalVector out;
  for (const auto& [u, x] : f)
    for (const auto& c : inst.graph.children(u)) accumulate(out, c, inst.weight(c) * x);
  return out;
}

inline NaturalVector natural_adjoint(const RandomInstance& inst, const NaturalVector& f) {
  NaturalVector out;
  for (const auto& [u, x] : f) accumulate(out, inst.graph.parent(u), inst.weight(u) * x);
  return out;
}

inline Rational natural_inner(const NaturalVector& f, const NaturalVector& h) {
  Rational acc = 0;
  for (const auto& [v, x] : f)
    if (auto it = h.find(v); it != h.end()) acc += x * it->second;
  return acc;
}

/// Product of weights from the root down to v (1 at the root).
inline Rational gauge(const RandomInstance& inst, const VertexId& v) {
  Rational r = 1;
  for (VertexId u = v; !u.is_root(); u = inst.graph.parent(u)) r *= inst.weight(u);
  return r;
}

inline ExactVector to_model(const RandomInstance& inst, const NaturalVector& f) {
  ExactVector out;
  for (const auto& [v, x] : f) out.set(v, QuadraticNumber(Rational(x / gauge(inst, v))));
  return out;
}

inline NaturalVector from_model(const RandomInstance& inst, const ExactVector& x) {
  NaturalVector out;
  for (const auto& [v, q] : x) {
    if (!q.is_rational()) throw std::logic_error("irrational coordinate for rational weights");
    accumulate(out, v, q.rational_part() * gauge(inst, v));
  }
  return out;
}

inline FloatVector to_float(const NaturalVector& f) {
  FloatVector out;
  for (const auto& [v, x] : f) out.set(v, x.get_d());
  return out;
}

/// Random vector with 1..max_terms entries on the given vertices.
inline NaturalVector random_vector(std::mt19937_64& rng, const std::vector<VertexId>& pool, std::size_t max_terms = 4) {
  NaturalVector f;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_terms)(rng);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  for (std::size_t i = 0; i < n; ++i) {
    Rational x(num(rng));
    x /= den(rng);
    accumulate(f, pool[pick(rng)], x);
  }
  if (f.empty()) f[pool.front()] = 1;
  return f;
}

/// Least-squares membership test for f in ran S^k. A preimage can only live
/// on par^k(supp f), so the dense system S^k x = f is assembled over those
/// columns and every row they reach; f is in the range iff the relative
/// residual is below the threshold.
inline bool least_squares_in_range(const RandomInstance& inst, const NaturalVector& f, std::size_t k,
                                   double threshold = 1e-8) {
  if (k == 0 || f.empty()) return true;
  const auto& g = inst.graph;
  std::set<VertexId> anchors;
  for (const auto& [u, x] : f) anchors.insert(g.ancestor(u, k));
  std::vector<VertexId> cols(anchors.begin(), anchors.end());

  std::map<VertexId, std::size_t> row_of;
  std::vector<std::tuple<std::size_t, std::size_t, double>> entries;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::map<VertexId, double> layer{{cols[j], 1.0}};
    for (std::size_t step = 0; step < k; ++step) {
      std::map<VertexId, double> next;
      for (const auto& [u, a] : layer)
        for (const auto& c : g.children(u)) next[c] += inst.weight(c).get_d() * a;
      layer = std::move(next);
    }
    for (const auto& [u, a] : layer) {
      const auto [it, fresh] = row_of.try_emplace(u, row_of.size());
      entries.emplace_back(it->second, j, a);
    }
  }
  for (const auto& [u, x] : f) row_of.try_emplace(u, row_of.size());

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(row_of.size()), static_cast<Eigen::Index>(cols.size()));
  for (const auto& [r, c, a] : entries) A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += a;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(A.rows());
  for (const auto& [u, x] : f) b(static_cast<Eigen::Index>(row_of.at(u))) = x.get_d();

  const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
  return (A * sol - b).norm() <= threshold * b.norm();
}

/// Iterated children sets Chi^n({root}) for n = 0..depth, by plain expansion.
inline std::vector<VertexSet> reach_sets(const OneCircuitGraph& g, std::size_t depth) {
  std::vector<VertexSet> reach{{VertexId::root()}};
  for (std::size_t n = 1; n <= depth; ++n) {
    VertexSet next;
    for (const auto& v : reach.back())
      for (const auto& c : g.children(v)) next.insert(c);
    reach.push_back(std::move(next));
  }
  return reach;
}

/// First generation n >= 1 at which each vertex is reached from the root (BFS).
inline std::map<VertexId, std::size_t> bfs_first_generation(const OneCircuitGraph& g, std::size_t depth) {
  std::map<VertexId, std::size_t> first;
  const auto reach = reach_sets(g, depth);
  for (std::size_t n = 1; n < reach.size(); ++n)
    for (const auto& v : reach[n]) first.try_emplace(v, n);
  return first;
}

}  // namespace gshift::oracle

#endif
