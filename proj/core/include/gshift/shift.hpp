#ifndef GSHIFT_SHIFT_HPP
#define GSHIFT_SHIFT_HPP

#include <gshift/graph.hpp>
#include <gshift/quadratic.hpp>
#include <gshift/rational.hpp>
#include <gshift/scalar.hpp>
#include <gshift/weights.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

namespace gshift {

// ------------------------------------------------------------ FiniteVector

/// Finitely supported vector over the vertices, in the coordinates of a
/// ShiftModel. Exact zeros are never stored.
template <class Scalar>
class FiniteVector {
public:
  using Map = std::map<VertexId, Scalar>;

  FiniteVector() = default;
  static FiniteVector basis(const VertexId& v) {
    FiniteVector f;
    f.entries_.emplace(v, Scalar(1));
    return f;
  }

  void add(const VertexId& v, const Scalar& x) {
    auto [it, inserted] = entries_.try_emplace(v, x);
    if (!inserted) it->second += x;
    if (exact_zero(it->second)) entries_.erase(it);
  }
  void set(const VertexId& v, const Scalar& x) {
    if (exact_zero(x)) entries_.erase(v);
    else entries_[v] = x;
  }
  Scalar at(const VertexId& v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? Scalar(0) : it->second;
  }
  void erase(const VertexId& v) { entries_.erase(v); }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const Map& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  /// Largest vertex of the support (the vector must be nonzero).
  const VertexId& leading() const { return entries_.rbegin()->first; }

  FiniteVector& operator*=(const Scalar& c) {
    if (exact_zero(c)) entries_.clear();
    for (auto& [v, x] : entries_) x *= c;
    return *this;
  }
  /// this += c * other
  void axpy(const Scalar& c, const FiniteVector& other) {
    for (const auto& [v, x] : other.entries_) add(v, c * x);
  }

  VertexSet support() const {
    VertexSet s;
    for (const auto& [v, x] : entries_) s.insert(v);
    return s;
  }

  double max_magnitude() const {
    double m = 0;
    for (const auto& [v, x] : entries_) m = std::max(m, ScalarTraits<Scalar>::magnitude(x));
    return m;
  }

  friend bool operator==(const FiniteVector& a, const FiniteVector& b) { return a.entries_ == b.entries_; }

private:
  static bool exact_zero(const Scalar& x) {
    if constexpr (ScalarTraits<Scalar>::exact) return x.is_zero();
    else return x == 0.0;
  }
  Map entries_;
};

// -------------------------------------------------------------- ShiftModel

/// Coordinates in which the weighted shift S is computed.
///
/// Float mode (double) uses the natural basis e_v. Exact mode
/// (QuadraticNumber) uses the rescaled basis rho(v) e_v with
/// rho(root) = 1 and rho(v) = lambda_v rho(par v) along tree and circuit
/// edges; there S has coefficients in Q(sqrt(c)), c being the product of the
/// squared circuit weights, and the metric rho(v)^2 is rational.
///
/// In both cases (S f)(v) = forward(v) f(par v),
/// (S* f)(u) = sum over v in Chi(u) of backward(v) f(v), and
/// <f, h> = sum f(v) h(v) metric(v).
template <class Scalar>
class ShiftModel {
public:
  ShiftModel(OneCircuitGraph graph, WeightSystem weights, double tolerance = default_tolerance())
      : graph_(std::move(graph)), weights_(std::move(weights)), tolerance_(tolerance),
        cache_(std::make_shared<Cache>()) {
    if constexpr (ScalarTraits<Scalar>::exact) {
      circuit_sq_ = lambda_k_sq(graph_, weights_, VertexId::root(), graph_.cycle_length());
      circuit_root_ = QuadraticNumber::sqrt_of(circuit_sq_);
    }
  }

  static constexpr double default_tolerance() {
    if constexpr (ScalarTraits<Scalar>::exact) return 0.0;
    else return ScalarTraits<double>::tolerance;
  }

  const OneCircuitGraph& graph() const { return graph_; }
  const WeightSystem& weights() const { return weights_; }
  double tolerance() const { return tolerance_; }

  bool is_zero(const Scalar& x, double scale = 1.0) const {
    if constexpr (ScalarTraits<Scalar>::exact) return x.is_zero();
    else return std::fabs(x) <= tolerance_ * scale;
  }

  Scalar forward(const VertexId& v) const {
    if constexpr (ScalarTraits<Scalar>::exact) return v.is_root() ? circuit_root_ : QuadraticNumber(1);
    else return weights_.weight(v);
  }

  Scalar backward(const VertexId& v) const {
    if constexpr (ScalarTraits<Scalar>::exact) {
      const QuadraticNumber sq(weights_.sq_weight(v));
      return v.is_root() ? sq / circuit_root_ : sq;
    } else {
      return weights_.weight(v);
    }
  }

  Scalar metric(const VertexId& v) const {
    if constexpr (ScalarTraits<Scalar>::exact) return QuadraticNumber(gauge_sq(v));
    else return 1.0;
  }

  /// Factor converting a model coordinate at v into the natural coordinate.
  double natural_scale(const VertexId& v) const {
    if constexpr (ScalarTraits<Scalar>::exact) return std::sqrt(gauge_sq(v).get_d());
    else return 1.0;
  }

  /// rho(v)^2 (exact mode); 1 in float mode.
  Rational gauge_sq(const VertexId& v) const {
    if constexpr (!ScalarTraits<Scalar>::exact) return Rational(1);
    if (v.is_root()) return Rational(1);
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->gauge.find(v); it != cache_->gauge.end()) return it->second;
    }
    // Walk towards the root until a cached value (or the root) is reached.
    std::vector<VertexId> chain{v};
    Rational base = 1;
    while (true) {
      VertexId p = graph_.parent(chain.back());
      if (p.is_root()) break;
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->gauge.find(p); it != cache_->gauge.end()) {
        base = it->second;
        break;
      }
      chain.push_back(std::move(p));
    }
    std::lock_guard lock(cache_->mutex);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      base *= weights_.sq_weight(*it);
      cache_->gauge.emplace(*it, base);
    }
    return base;
  }

  /// Product of squared circuit weights, c (exact mode).
  const Rational& circuit_sq() const { return circuit_sq_; }

private:
  struct Cache {
    std::mutex mutex;
    std::unordered_map<VertexId, Rational, VertexIdHash> gauge;
  };

  OneCircuitGraph graph_;
  WeightSystem weights_;
  double tolerance_;
  Rational circuit_sq_{1};
  QuadraticNumber circuit_root_{1};
  std::shared_ptr<Cache> cache_;
};

using ExactModel = ShiftModel<QuadraticNumber>;
using FloatModel = ShiftModel<double>;
using ExactVector = FiniteVector<QuadraticNumber>;
using FloatVector = FiniteVector<double>;

// ------------------------------------------------------- basic operations

template <class Scalar>
FiniteVector<Scalar> apply_shift(const ShiftModel<Scalar>& model, const FiniteVector<Scalar>& f) {
  FiniteVector<Scalar> out;
  for (const auto& [u, x] : f)
    for (const auto& c : model.graph().children(u)) out.add(c, model.forward(c) * x);
  return out;
}

template <class Scalar>
FiniteVector<Scalar> apply_adjoint(const ShiftModel<Scalar>& model, const FiniteVector<Scalar>& f) {
  FiniteVector<Scalar> out;
  for (const auto& [u, x] : f) out.add(model.graph().parent(u), model.backward(u) * x);
  return out;
}

template <class Scalar>
FiniteVector<Scalar> apply_shift_power(const ShiftModel<Scalar>& model, FiniteVector<Scalar> f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) f = apply_shift(model, f);
  return f;
}

template <class Scalar>
Scalar inner(const ShiftModel<Scalar>& model, const FiniteVector<Scalar>& f, const FiniteVector<Scalar>& h) {
  Scalar acc(0);
  const auto& small = f.size() <= h.size() ? f : h;
  const auto& large = f.size() <= h.size() ? h : f;
  for (const auto& [v, x] : small) {
    auto it = large.entries().find(v);
    if (it != large.entries().end()) acc += x * it->second * model.metric(v);
  }
  return acc;
}

template <class Scalar>
Scalar norm_sq(const ShiftModel<Scalar>& model, const FiniteVector<Scalar>& f) {
  return inner(model, f, f);
}

/// Natural coordinates f(v) as doubles.
template <class Scalar>
FloatVector to_natural(const ShiftModel<Scalar>& model, const FiniteVector<Scalar>& f) {
  FloatVector out;
  for (const auto& [v, x] : f) out.set(v, ScalarTraits<Scalar>::to_double(x) * model.natural_scale(v));
  return out;
}

// ----------------------------------------------------------- EchelonBasis

/// Span of finitely supported vectors kept in echelon form: every stored
/// row has a distinct leading (largest) vertex and is supported on vertices
/// not larger than it. Exact mode eliminates fraction-free.
template <class Scalar>
class EchelonBasis {
public:
  explicit EchelonBasis(const ShiftModel<Scalar>& model) : model_(&model) {}

  /// Adds v to the span; returns false when v was already in it.
  bool insert(FiniteVector<Scalar> v) {
    const double scale = v.max_magnitude();
    prune(v, scale);
    while (!v.empty()) {
      const VertexId lead = v.leading();
      auto it = rows_.find(lead);
      if (it == rows_.end()) {
        rows_.emplace(lead, std::move(v));
        return true;
      }
      const FiniteVector<Scalar>& pivot = it->second;
      const Scalar pivot_lead = pivot.entries().rbegin()->second;
      const Scalar v_lead = v.entries().rbegin()->second;
      if constexpr (ScalarTraits<Scalar>::exact) {
        v *= pivot_lead;
        v.axpy(-v_lead, pivot);
      } else {
        v.axpy(-(v_lead / pivot_lead), pivot);
        v.erase(lead);
        prune(v, scale);
      }
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }
  const std::map<VertexId, FiniteVector<Scalar>>& rows() const { return rows_; }

  bool orthogonal_to_span(const FiniteVector<Scalar>& f) const {
    const double fscale = std::max(f.max_magnitude(), 1e-300);
    for (const auto& [lead, row] : rows_) {
      const Scalar ip = inner(*model_, f, row);
      double scale = 1.0;
      if constexpr (!ScalarTraits<Scalar>::exact) scale = fscale * row.max_magnitude() * static_cast<double>(row.size());
      if (!model_->is_zero(ip, scale)) return false;
    }
    return true;
  }

  /// Basis of the orthogonal complement of the span inside span{e_v : v in coords}.
  /// Every stored row must be supported inside coords. One vector per
  /// coordinate that leads no row, solved by forward substitution.
  std::vector<FiniteVector<Scalar>> orthogonal_complement(const std::vector<VertexId>& coords) const {
    std::vector<FiniteVector<Scalar>> out;
    for (const auto& free : coords) {
      if (rows_.count(free)) continue;
      FiniteVector<Scalar> x = FiniteVector<Scalar>::basis(free);
      for (const auto& [lead, row] : rows_) {
        Scalar acc(0);
        Scalar lead_coeff(0);
        for (const auto& [u, r] : row) {
          if (u == lead) {
            lead_coeff = r * model_->metric(u);
            continue;
          }
          auto it = x.entries().find(u);
          if (it != x.entries().end()) acc += it->second * r * model_->metric(u);
        }
        x.set(lead, -(acc / lead_coeff));
      }
      out.push_back(std::move(x));
    }
    return out;
  }

private:
  void prune(FiniteVector<Scalar>& v, double scale) const {
    if constexpr (!ScalarTraits<Scalar>::exact) {
      std::vector<VertexId> tiny;
      for (const auto& [u, x] : v)
        if (model_->is_zero(x, scale)) tiny.push_back(u);
      for (const auto& u : tiny) v.erase(u);
    }
  }

  const ShiftModel<Scalar>* model_;
  std::map<VertexId, FiniteVector<Scalar>> rows_;
};

// ---------------------------------------------------- defects (rational)

/// ||S^k e_v||^2 = sum over u in Chi^k(v) of (lambda^(k)(u))^2.
Rational iterate_norm_sq(const OneCircuitGraph& g, const WeightSystem& w, const VertexId& v, std::size_t k);

/// ||S^k e_v||^2 for k = 0..kmax in one sweep.
std::vector<Rational> iterate_norms_sq(const OneCircuitGraph& g, const WeightSystem& w, const VertexId& v,
                                       std::size_t kmax);

/// Diagonal entry D_m(v) = <B_m(S) e_v, e_v> = sum (-1)^k C(m,k) ||S^k e_v||^2.
/// B_m(S) is diagonal in the vertex basis since par is a function.
Rational defect(const OneCircuitGraph& g, const WeightSystem& w, std::size_t m, const VertexId& v);

struct DefectReport {
  std::size_t m = 0;
  std::size_t depth = 0;
  std::vector<std::pair<VertexId, Rational>> per_vertex;
};

struct Classification {
  DefectReport report;
  bool is_m_isometry = false;
  bool is_m_concave = false;
  /// Vertices with D_1(v) > 0, i.e. ||S e_v|| < 1.
  std::vector<VertexId> expansive_violations;
};

Classification classify(const OneCircuitGraph& g, const WeightSystem& w, std::size_t m, std::size_t depth);

/// One CSV row of the defect table.
struct DefectRow {
  VertexId vertex;
  Rational d1, d2, d3;
  bool expansive = true;  ///< D_1(v) <= 0
};
std::vector<DefectRow> defect_table(const OneCircuitGraph& g, const WeightSystem& w, std::size_t depth);

// ------------------------------------------------------------- kernel S*

/// Parents in the depth truncation whose children leave it.
std::vector<VertexId> boundary_parents(const OneCircuitGraph& g, std::size_t depth);

/// Basis of ker S* restricted to sibling families inside the depth
/// truncation: for each v with children c_0 < ... < c_{d-1}, d >= 2, the
/// vectors backward(c_0) e_{c_i} - backward(c_i) e_{c_0}, i = 1..d-1.
template <class Scalar>
std::vector<FiniteVector<Scalar>> kernel_adjoint_basis(const ShiftModel<Scalar>& model, std::size_t depth) {
  const auto& g = model.graph();
  std::vector<FiniteVector<Scalar>> basis;
  for (const auto& v : g.truncation(depth)) {
    const auto kids = g.children(v);
    if (kids.size() < 2) continue;
    if (std::any_of(kids.begin(), kids.end(), [&](const VertexId& c) { return g.generation(c) > depth; })) continue;
    const Scalar b0 = model.backward(kids.front());
    for (std::size_t i = 1; i < kids.size(); ++i) {
      FiniteVector<Scalar> h;
      h.set(kids[i], b0);
      h.set(kids.front(), -model.backward(kids[i]));
      basis.push_back(std::move(h));
    }
  }
  return basis;
}

// --------------------------------------------------------- range of S^k

/// Chi^k(v) together with the forward-coefficient products
/// A_k(u) = forward(u) forward(par u) ... forward(par^{k-1} u).
template <class Scalar>
std::map<VertexId, Scalar> descendants_with_products(const ShiftModel<Scalar>& model, const VertexId& v,
                                                     std::size_t k) {
  std::map<VertexId, Scalar> layer{{v, Scalar(1)}};
  for (std::size_t j = 0; j < k; ++j) {
    std::map<VertexId, Scalar> next;
    for (const auto& [u, a] : layer)
      for (const auto& c : model.graph().children(u)) next.emplace(c, model.forward(c) * a);
    layer = std::move(next);
  }
  return layer;
}

/// f lies in the range of S^k iff f / lambda^(k) is constant on Chi^k(v) for
/// every vertex v. With `window`, groups Chi^k(v) reaching beyond that
/// generation are skipped (truncated vectors).
template <class Scalar>
bool range_predicate(const ShiftModel<Scalar>& model, const FiniteVector<Scalar>& f, std::size_t k,
                     std::optional<std::size_t> window = std::nullopt) {
  if (k == 0 || f.empty()) return true;
  const auto& g = model.graph();
  VertexSet anchors;
  for (const auto& [u, x] : f) anchors.insert(g.ancestor(u, k));
  const double fscale = f.max_magnitude();
  for (const auto& v : anchors) {
    const auto group = descendants_with_products(model, v, k);
    if (window && std::any_of(group.begin(), group.end(),
                              [&](const auto& e) { return g.generation(e.first) > *window; }))
      continue;
    if constexpr (ScalarTraits<Scalar>::exact) {
      std::optional<Scalar> ratio;
      for (const auto& [u, a] : group) {
        const Scalar r = f.at(u) / a;
        if (!ratio) ratio = r;
        else if (!(*ratio == r)) return false;
      }
    } else {
      // Least-squares constant, then a residual check relative to |f|.
      double num = 0, den = 0;
      for (const auto& [u, a] : group) {
        num += f.at(u) * a;
        den += a * a;
      }
      const double c = num / den;
      for (const auto& [u, a] : group)
        if (std::fabs(f.at(u) - c * a) > model.tolerance() * std::max(fscale, 1e-300)) return false;
    }
  }
  return true;
}

// -------------------------------------------------------------- cyclicity

/// dim span{S^n e_v : 0 <= n <= N}.
template <class Scalar>
std::size_t cyclicity_check(const ShiftModel<Scalar>& model, const VertexId& v, std::size_t n_max) {
  model.graph().require(v);
  EchelonBasis<Scalar> span(model);
  FiniteVector<Scalar> it = FiniteVector<Scalar>::basis(v);
  for (std::size_t n = 0; n <= n_max; ++n) {
    span.insert(it);
    if (n < n_max) it = apply_shift(model, it);
  }
  return span.rank();
}

// ----------------------------------------------------- wandering closure

template <class Scalar>
struct WanderingClosure {
  std::size_t truncation_depth = 0;
  std::size_t dim = 0;
  std::size_t ambient_dim = 0;
  std::size_t generators = 0;
  std::vector<FiniteVector<Scalar>> complement_basis;
  /// Parents whose sibling family leaves the truncation.
  std::vector<VertexId> excluded;
  EchelonBasis<Scalar> span;

  std::size_t codim() const { return ambient_dim - dim; }
};

/// Finite section of [ker S*]_S: span of S^n h for kernel vectors h and
/// 0 <= n <= N whose support stays inside the depth-(N+1) truncation.
template <class Scalar>
WanderingClosure<Scalar> wandering_closure(const ShiftModel<Scalar>& model, std::size_t n_max) {
  const auto& g = model.graph();
  const std::size_t depth = n_max + 1;
  const auto coords = g.truncation(depth);
  WanderingClosure<Scalar> out{depth, 0, coords.size(), 0, {}, boundary_parents(g, depth), EchelonBasis<Scalar>(model)};
  for (auto h : kernel_adjoint_basis(model, depth)) {
    for (std::size_t n = 0; n <= n_max; ++n) {
      const bool inside = std::all_of(h.begin(), h.end(), [&](const auto& e) { return g.generation(e.first) <= depth; });
      if (!inside) break;
      ++out.generators;
      out.span.insert(h);
      if (n < n_max) h = apply_shift(model, h);
    }
  }
  out.dim = out.span.rank();
  out.complement_basis = out.span.orthogonal_complement(coords);
  return out;
}

/// Mode-independent view of a WanderingClosure.
struct WanderingClosureSummary {
  std::size_t truncation_depth = 0;
  std::size_t dim = 0;
  std::size_t ambient_dim = 0;
  std::size_t generators = 0;
  std::vector<VertexId> excluded;
  /// Complement basis in natural coordinates.
  std::vector<FloatVector> complement_natural;

  std::size_t codim() const { return ambient_dim - dim; }
};

template <class Scalar>
WanderingClosureSummary summarize(const ShiftModel<Scalar>& model, const WanderingClosure<Scalar>& c) {
  WanderingClosureSummary out{c.truncation_depth, c.dim, c.ambient_dim, c.generators, c.excluded, {}};
  for (const auto& v : c.complement_basis) out.complement_natural.push_back(to_natural(model, v));
  return out;
}

// ------------------------------------------------------- Shimorin check

struct ShimorinReport {
  std::size_t depth = 0;
  /// Exact verdict for the negative semidefiniteness of the section.
  bool satisfied = false;
  double max_eigenvalue = 0.0;
  /// <(S*^2 S^2 - 3 S*S + 3 I - S'*S') e_u, e_u> for every section vertex
  /// (the projection onto ker S* is not included here).
  std::vector<std::pair<VertexId, Rational>> diagonal;
  /// Parents whose sibling family leaves the truncation (excluded blocks).
  std::vector<VertexId> excluded;
};

/// Finite section of S*^2 S^2 - 3 S*S + 3 I - S'*S' - P_{ker S*} over the
/// sibling families Chi(v) lying inside the depth truncation. The operator is
/// block diagonal over these families.
ShimorinReport shimorin_inequality_check(const OneCircuitGraph& g, const WeightSystem& w, std::size_t depth);

}  // namespace gshift

#endif
