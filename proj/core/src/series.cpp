#include <gshift/series.hpp>

#include <algorithm>
#include <limits>

namespace gshift {

std::string to_string(SeriesStatus s) {
  switch (s) {
    case SeriesStatus::Diverges: return "Diverges";
    case SeriesStatus::Converges: return "Converges";
    case SeriesStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::TermFloor: return "TermFloor";
    case CertificateKind::RatioAbove: return "RatioAbove";
    case CertificateKind::RatioBelow: return "RatioBelow";
    case CertificateKind::PartialSumsOnly: return "PartialSumsOnly";
  }
  return "?";
}

std::string to_string(AnalyticStatus s) {
  switch (s) {
    case AnalyticStatus::Analytic: return "Analytic";
    case AnalyticStatus::NotAnalytic: return "NotAnalytic";
    case AnalyticStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(WspStatus s) {
  switch (s) {
    case WspStatus::Holds: return "Holds";
    case WspStatus::Fails: return "Fails";
    case WspStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

constexpr long long kMaxDescent = 1000000;

Rational power(const Rational& x, std::size_t e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

Rational at(const Polynomial& p, std::size_t m) { return p(Rational(static_cast<unsigned long>(m))); }

/// Smallest M >= start with p(m) >= 0 for every integer m >= M.
std::optional<std::size_t> certified_from(const Polynomial& p, std::size_t start) {
  const auto threshold = eventually_nonnegative_from(p, static_cast<long long>(start));
  if (!threshold) return std::nullopt;
  long long m = *threshold;
  const long long lo = static_cast<long long>(start);
  for (long long steps = 0; m > lo && steps < kMaxDescent; ++steps) {
    if (p(Rational(static_cast<long>(m - 1))) < 0) break;
    --m;
  }
  // Below the descent limit the threshold itself is still sound.
  return static_cast<std::size_t>(m);
}

/// Inspected prefix of a term stream.
class Prefix {
public:
  Prefix(const TermSource& source, std::size_t m_max) : source_(source), m_max_(m_max) {}

  const Rational* get(std::size_t m) {
    while (terms_.size() <= m) {
      if (terms_.size() >= m_max_ || exhausted_) return nullptr;
      auto t = source_(terms_.size());
      if (!t) {
        exhausted_ = true;
        return nullptr;
      }
      if (*t < 0) throw InputError("series terms must be non-negative");
      terms_.push_back(std::move(*t));
    }
    return &terms_[m];
  }
  /// Fetches terms up to `last` (clipped to what is available); returns the
  /// number of terms held.
  std::size_t fill(std::size_t last) {
    get(last);
    return terms_.size();
  }
  const std::vector<Rational>& terms() const { return terms_; }
  Rational sum(std::size_t count) const {
    Rational s = 0;
    for (std::size_t i = 0; i < count && i < terms_.size(); ++i) s += terms_[i];
    return s;
  }

private:
  const TermSource& source_;
  std::size_t m_max_;
  std::vector<Rational> terms_;
  bool exhausted_ = false;
};

struct Limit {
  bool infinite = false;
  Rational value;
};

Limit ratio_limit(const RatioGuarantee& g) {
  const int dn = g.numerator.degree();
  const int dd = g.denominator.degree();
  if (g.numerator.is_zero() || dn < dd) return {false, Rational(0)};
  if (dn > dd) return {true, Rational(0)};
  return {false, g.numerator.leading() / g.denominator.leading()};
}

/// Guarantee consistency on the inspected prefix: t_{m+1} D(m) = t_m N(m).
bool consistent(const RatioGuarantee& g, const std::vector<Rational>& t, std::size_t from, std::size_t count) {
  for (std::size_t m = std::max(from, g.from_index); m + 1 < count; ++m)
    if (t[m + 1] * at(g.denominator, m) != t[m] * at(g.numerator, m)) return false;
  return true;
}

std::optional<SeriesVerdict> certify(const TermSource& source, const RatioGuarantee& g, const SeriesPolicy& policy) {
  if (g.denominator.is_zero() || !eventually_positive_from(g.denominator, static_cast<long long>(g.from_index)))
    return std::nullopt;
  // Explicit positivity of the denominator below its certified threshold.
  {
    const auto thr = *eventually_positive_from(g.denominator, static_cast<long long>(g.from_index));
    for (long long m = static_cast<long long>(g.from_index); m < thr; ++m)
      if (g.denominator(Rational(static_cast<long>(m))) <= 0) return std::nullopt;
  }

  Prefix prefix(source, policy.m_max);
  const Limit lim = ratio_limit(g);

  // Fetches terms up to m0 + window and checks them against the guarantee.
  auto inspect = [&](std::size_t m0) -> std::optional<std::size_t> {
    if (m0 >= policy.m_max) return std::nullopt;
    const std::size_t count = prefix.fill(std::min(m0 + policy.window, policy.m_max - 1));
    if (count <= m0) return std::nullopt;
    if (!consistent(g, prefix.terms(), 0, count)) return std::nullopt;
    return count;
  };

  auto make = [&](SeriesStatus status, CertificateKind kind, const Rational& bound, std::size_t m0,
                  std::size_t count) {
    SeriesVerdict v;
    v.status = status;
    v.terms_inspected = count;
    v.certificate.kind = kind;
    v.certificate.bound = bound;
    v.certificate.from_index = m0;
    v.certificate.ratio_limit_infinite = lim.infinite;
    if (!lim.infinite) v.certificate.ratio_limit = lim.value;
    v.certificate.partial_sum = prefix.sum(count);
    return v;
  };

  // Terms vanish after from_index.
  if (g.numerator.is_zero()) {
    const std::size_t m0 = g.from_index;
    const auto count = inspect(m0);
    if (!count) return std::nullopt;
    auto v = make(SeriesStatus::Converges, CertificateKind::RatioBelow, Rational(0), m0, *count);
    v.certificate.tail_bound = 0.0;
    return v;
  }

  // Divergence with M0 beyond the inspected prefix is still certified when
  // the terms provably stay positive from from_index on: t_from > 0 and
  // numerator(m) > 0 for every m >= from_index.
  auto positive_tail = [&]() -> std::optional<std::size_t> {
    const auto count = inspect(g.from_index);
    if (!count || prefix.terms()[g.from_index] <= 0) return std::nullopt;
    const auto thr = eventually_positive_from(g.numerator, static_cast<long long>(g.from_index));
    if (!thr || *thr - static_cast<long long>(g.from_index) > kMaxDescent) return std::nullopt;
    for (long long m = static_cast<long long>(g.from_index); m < *thr; ++m)
      if (g.numerator(Rational(static_cast<long>(m))) <= 0) return std::nullopt;
    return count;
  };

  auto diverges = [&](CertificateKind kind, const Rational& bound, std::size_t m0) -> std::optional<SeriesVerdict> {
    if (m0 + 1 < policy.m_max) {
      const auto count = inspect(m0);
      if (!count || prefix.terms()[m0] <= 0) return std::nullopt;
      if (kind == CertificateKind::TermFloor) {
        // Non-decreasing positive terms: the first inspected index reaching
        // delta gives the floor, otherwise t_M0 itself does.
        const auto& t = prefix.terms();
        for (std::size_t m = m0; m < *count; ++m)
          if (t[m] >= policy.delta) return make(SeriesStatus::Diverges, kind, policy.delta, m, *count);
        return make(SeriesStatus::Diverges, kind, t[m0], m0, *count);
      }
      return make(SeriesStatus::Diverges, kind, bound, m0, *count);
    }
    const auto count = positive_tail();
    if (!count) return std::nullopt;
    auto v = make(SeriesStatus::Diverges, CertificateKind::RatioAbove, Rational(1), m0, *count);
    v.certificate.beyond_inspection = true;
    return v;
  };

  if (lim.infinite || lim.value > 1) {
    std::vector<Rational> candidates;
    if (!lim.infinite) candidates.push_back(lim.value);
    candidates.push_back(std::max(policy.r, Rational(1)));
    for (const auto& r : candidates) {
      const auto m0 = certified_from(g.numerator - g.denominator * r, g.from_index);
      if (!m0 || (*m0 + 1 >= policy.m_max && r != candidates.back())) continue;
      if (auto v = diverges(CertificateKind::RatioAbove, r, *m0)) return v;
    }
    return std::nullopt;
  }

  if (lim.value == 1) {
    const auto m0 = certified_from(g.numerator - g.denominator, g.from_index);
    if (!m0) return std::nullopt;
    return diverges(CertificateKind::TermFloor, Rational(0), *m0);
  }

  if (lim.value < 1) {
    std::vector<Rational> candidates;
    if (policy.q && *policy.q < 1 && *policy.q > 0) candidates.push_back(*policy.q);
    if (lim.value > 0) candidates.push_back(lim.value);
    candidates.push_back((lim.value + 1) / 2);
    for (const auto& q : candidates) {
      const auto m0 = certified_from(g.denominator * q - g.numerator, g.from_index);
      if (!m0 || *m0 + 1 >= policy.m_max) continue;
      const auto count = inspect(*m0);
      if (!count) return std::nullopt;
      auto v = make(SeriesStatus::Converges, CertificateKind::RatioBelow, q, *m0, *count);
      const Rational& last = prefix.terms()[*count - 1];
      v.certificate.tail_bound = Rational(last * q / (1 - q)).get_d();
      return v;
    }
  }
  return std::nullopt;
}

}  // namespace

SeriesVerdict series_verdict(const TermSource& term, const std::optional<RatioGuarantee>& guarantee,
                             const SeriesPolicy& policy) {
  if (policy.m_max < 2) throw InputError("series policy needs m_max >= 2");
  if (guarantee)
    if (auto v = certify(term, *guarantee, policy)) return *v;

  Prefix prefix(term, policy.m_max);
  const std::size_t count = prefix.fill(policy.m_max - 1);
  if (count == 0) throw InputError("empty term stream");
  SeriesVerdict v;
  v.status = SeriesStatus::Inconclusive;
  v.terms_inspected = count;
  v.certificate.kind = CertificateKind::PartialSumsOnly;
  v.certificate.from_index = count;
  v.certificate.partial_sum = prefix.sum(count);
  v.certificate.bound = v.certificate.partial_sum;
  return v;
}

SeriesVerdict series_verdict(const std::vector<Rational>& terms, const std::optional<RatioGuarantee>& guarantee,
                             const SeriesPolicy& policy) {
  if (terms.empty()) throw InputError("empty term stream");
  TermSource source = [&terms](std::size_t m) -> std::optional<Rational> {
    if (m >= terms.size()) return std::nullopt;
    return terms[m];
  };
  return series_verdict(source, guarantee, policy);
}

bool validate_certificate(const std::vector<Rational>& terms, const SeriesVerdict& verdict) {
  const std::size_t n = verdict.terms_inspected;
  if (n == 0 || n > terms.size()) return false;
  const auto& c = verdict.certificate;
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) total += terms[i];
  if (total != c.partial_sum) return false;

  const std::size_t m0 = c.from_index;
  switch (c.kind) {
    case CertificateKind::PartialSumsOnly:
      return verdict.status == SeriesStatus::Inconclusive;
    case CertificateKind::TermFloor: {
      if (verdict.status != SeriesStatus::Diverges || c.bound <= 0 || m0 >= n) return false;
      Rational running = 0;
      for (std::size_t i = m0; i < n; ++i) {
        if (terms[i] < c.bound) return false;
        running += terms[i];
        if (running < c.bound * static_cast<unsigned long>(i - m0 + 1)) return false;
      }
      return true;
    }
    case CertificateKind::RatioAbove: {
      if (c.beyond_inspection) {
        // Nothing past M0 was inspected; only positivity can be re-checked.
        if (verdict.status != SeriesStatus::Diverges || m0 < n) return false;
        return std::all_of(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(n),
                           [](const Rational& t) { return t >= 0; });
      }
      if (verdict.status != SeriesStatus::Diverges || c.bound < 1 || m0 >= n || terms[m0] <= 0) return false;
      Rational running = 0;
      for (std::size_t i = m0; i < n; ++i) {
        if (i + 1 < n && terms[i + 1] < c.bound * terms[i]) return false;
        running += terms[i];
        if (running < terms[m0] * static_cast<unsigned long>(i - m0 + 1)) return false;
      }
      return true;
    }
    case CertificateKind::RatioBelow: {
      if (verdict.status != SeriesStatus::Converges || c.bound < 0 || c.bound >= 1 || m0 >= n) return false;
      const Rational cap = terms[m0] * c.bound / (1 - c.bound);
      Rational running = 0;
      for (std::size_t i = m0; i + 1 < n; ++i) {
        if (terms[i + 1] > c.bound * terms[i]) return false;
        running += terms[i + 1];
        if (running > cap) return false;
      }
      return true;
    }
  }
  return false;
}

// ------------------------------------------------------------ BranchSeries

BranchSeries::BranchSeries(OneCircuitGraph g, WeightSystem w, std::size_t k)
    : g_(std::move(g)), w_(std::move(w)), k_(k) {
  const std::size_t cycle = g_.cycle_length();
  if (k < 1 || k > cycle) throw InputError("branch index must lie in 1..l+1");
  circuit_sq_ = lambda_k_sq(g_, w_, VertexId::root(), cycle);
  branch_sq_ = lambda_k_sq(g_, w_, g_.circuit_vertex(k), k);
  layer_sums_.push_back(Rational(1));
  frontier_.emplace_back(VertexId::root(), Rational(1));

  const auto [d0, b] = g_.tree().uniform_branching();
  std::size_t explicit_to = std::max<std::size_t>(d0, 1);
  if (w_.tail()) {
    recurrence_ = true;
    b_ = b;
    recurrence_from_ = std::max({d0, w_.tail()->from_depth > 0 ? w_.tail()->from_depth - 1 : 0, std::size_t{1}});
    explicit_to = recurrence_from_;
  }
  while (layer_sums_.size() <= explicit_to && !empty_from_ && !frontier_capped_) extend_explicit();

  const std::size_t l1 = cycle;
  if (empty_from_) {
    // Finite tree: t_{m+1} = 0 as soon as layer (l+1)(m+1)+k is empty.
    std::size_t m = 0;
    while (l1 * (m + 1) + k < *empty_from_) ++m;
    guarantee_ = RatioGuarantee{m, Polynomial(), Polynomial::constant(1)};
  } else if (recurrence_ && !frontier_capped_) {
    std::size_t m = 1;
    while (l1 * m + k < recurrence_from_) ++m;
    const auto& tail = *w_.tail();
    Polynomial num = Polynomial::constant(1);
    Polynomial den = Polynomial::constant(circuit_sq_);
    for (std::size_t j = 1; j <= l1; ++j) {
      const Rational shift(static_cast<unsigned long>(k + j));
      num = num * tail.numerator.compose_linear(Rational(static_cast<unsigned long>(l1)), shift) *
            Rational(static_cast<unsigned long>(b_));
      den = den * tail.denominator.compose_linear(Rational(static_cast<unsigned long>(l1)), shift);
    }
    guarantee_ = RatioGuarantee{m, std::move(num), std::move(den)};
  }
}

bool BranchSeries::extend_explicit() {
  if (empty_from_ || frontier_capped_) return false;
  std::vector<std::pair<VertexId, Rational>> next;
  for (const auto& [u, sq] : frontier_) {
    const std::uint32_t b = g_.tree().branching(u);
    if (b == 0 && u.is_tree()) throw LeafError("tree vertex " + u.to_string() + " is a leaf");
    for (std::uint32_t i = 0; i < b; ++i) {
      VertexId c = u.tree_child(i);
      Rational s = sq * w_.sq_weight(c);
      next.emplace_back(std::move(c), std::move(s));
    }
    if (next.size() > kLayerCap) {
      frontier_capped_ = true;
      return false;
    }
  }
  Rational total = 0;
  for (const auto& [v, s] : next) total += s;
  if (next.empty()) empty_from_ = layer_sums_.size();
  layer_sums_.push_back(total);
  frontier_ = std::move(next);
  return true;
}

std::optional<Rational> BranchSeries::layer_sum(std::size_t n) {
  if (empty_from_ && n >= *empty_from_) return Rational(0);
  while (layer_sums_.size() <= n) {
    const std::size_t depth = layer_sums_.size();
    if (recurrence_ && depth > recurrence_from_) {
      layer_sums_.push_back(layer_sums_.back() * Rational(static_cast<unsigned long>(b_)) * (*w_.tail())(depth));
      continue;
    }
    if (!extend_explicit()) {
      if (empty_from_ && n >= *empty_from_) return Rational(0);
      return std::nullopt;
    }
  }
  return layer_sums_[n];
}

std::optional<Rational> BranchSeries::term(std::size_t m) {
  const std::size_t n = g_.cycle_length() * m + k_;
  auto layer = layer_sum(n);
  if (!layer) return std::nullopt;
  if (m == 0) return 1 + *layer / branch_sq_;
  return *layer / (power(circuit_sq_, m) * branch_sq_);
}

std::vector<Rational> BranchSeries::terms(std::size_t count) {
  std::vector<Rational> out;
  for (std::size_t m = 0; m < count; ++m) {
    auto t = term(m);
    if (!t) break;
    out.push_back(std::move(*t));
  }
  return out;
}

std::vector<Rational> series_terms(const OneCircuitGraph& g, const WeightSystem& w, std::size_t k, std::size_t m_max) {
  BranchSeries series(g, w, k);
  return series.terms(m_max);
}

// ------------------------------------------------------------ analyticity

AnalyticityReport analyticity(const OneCircuitGraph& g, const WeightSystem& w, const SeriesPolicy& policy) {
  if (!w.positivity_floor()) throw InputError("analyticity test needs a weight system bounded below");
  AnalyticityReport report;
  bool all_diverge = true;
  bool some_converge = false;
  for (std::size_t k = 1; k <= g.cycle_length(); ++k) {
    BranchSeries series(g, w, k);
    TermSource source = [&series](std::size_t m) { return series.term(m); };
    SeriesVerdict v = series_verdict(source, series.guarantee(), policy);
    all_diverge = all_diverge && v.status == SeriesStatus::Diverges;
    some_converge = some_converge || v.status == SeriesStatus::Converges;
    report.per_branch.emplace(k, std::move(v));
  }
  report.overall = all_diverge     ? AnalyticStatus::Analytic
                   : some_converge ? AnalyticStatus::NotAnalytic
                                   : AnalyticStatus::Inconclusive;
  return report;
}

WspVerdict wsp_verdict(const OneCircuitGraph& g, const WeightSystem& w, const SeriesPolicy& policy) {
  WspVerdict out;
  out.dual_report = analyticity(g, cauchy_dual(g, w), policy);
  switch (out.dual_report.overall) {
    case AnalyticStatus::Analytic: out.status = WspStatus::Holds; break;
    case AnalyticStatus::NotAnalytic: out.status = WspStatus::Fails; break;
    case AnalyticStatus::Inconclusive: out.status = WspStatus::Inconclusive; break;
  }
  return out;
}

// ------------------------------------------------------------- hyper-range

namespace {

/// Vertices of g_k inside the depth truncation, grouped by m (m = 0 holds
/// w_k together with tree layer k).
std::vector<std::pair<std::size_t, std::vector<VertexId>>> hyper_range_support(const OneCircuitGraph& g,
                                                                               std::size_t k, std::size_t depth) {
  std::vector<std::pair<std::size_t, std::vector<VertexId>>> out;
  const std::size_t cycle = g.cycle_length();
  for (std::size_t m = 0;; ++m) {
    const std::size_t n = cycle * m + k;
    if (n > depth) break;
    std::vector<VertexId> layer = g.tree_layer(n);
    if (m == 0) layer.insert(layer.begin(), g.circuit_vertex(k));
    out.emplace_back(m, std::move(layer));
  }
  if (out.empty() && k == cycle) out.emplace_back(0, std::vector<VertexId>{VertexId::root()});
  return out;
}

}  // namespace

ExactVector formal_hyper_range_vector(const ExactModel& model, const WeightSystem& other, std::size_t k,
                                      std::size_t depth) {
  const auto& g = model.graph();
  const Rational c_other = lambda_k_sq(g, other, VertexId::root(), g.cycle_length());
  const auto ratio = exact_sqrt(c_other / model.circuit_sq());
  if (!ratio) throw InputError("weight systems have incompatible circuit products");
  const QuadraticNumber root_c = QuadraticNumber::sqrt_of(model.circuit_sq()) * QuadraticNumber(*ratio);
  const QuadraticNumber inv_root_c = QuadraticNumber(1) / root_c;
  const bool same = &other == &model.weights();

  ExactVector vec;
  QuadraticNumber scale(1);
  std::size_t last_m = 0;
  const std::size_t cycle = g.cycle_length();
  for (const auto& [m, layer] : hyper_range_support(g, k, depth)) {
    while (last_m < m) {
      scale *= inv_root_c;
      ++last_m;
    }
    for (const auto& v : layer) {
      if (v.is_root()) {
        vec.set(v, root_c);
        continue;
      }
      Rational r = 1;
      if (!same) {
        const std::size_t n = v.is_tree() ? cycle * m + k : k;
        const auto gauge_ratio = exact_sqrt(lambda_k_sq(g, other, v, n) / model.gauge_sq(v));
        if (!gauge_ratio) throw InputError("weight systems have incompatible gauges at " + v.to_string());
        r = *gauge_ratio;
      }
      vec.set(v, scale * QuadraticNumber(r));
    }
  }
  return vec;
}

HyperRangeBasis hyper_range_basis(const ExactModel& model, std::size_t depth, const AnalyticityReport& report) {
  HyperRangeBasis out;
  for (const auto& [k, verdict] : report.per_branch) {
    if (verdict.status == SeriesStatus::Inconclusive) out.inconclusive.push_back(k);
    if (verdict.status != SeriesStatus::Converges) continue;
    out.vectors.push_back({k, formal_hyper_range_vector(model, model.weights(), k, depth)});
  }
  return out;
}

FloatVector formal_hyper_range_natural(const OneCircuitGraph& g, const WeightSystem& w, std::size_t k,
                                       std::size_t depth) {
  FloatVector vec;
  const std::size_t cycle = g.cycle_length();
  const VertexId wk = g.circuit_vertex(k);
  for (const auto& [m, layer] : hyper_range_support(g, k, depth)) {
    const std::size_t n = cycle * m + k;
    const Rational denom = lambda_k_sq(g, w, wk, n);
    for (const auto& v : layer) vec.set(v, std::sqrt(Rational(lambda_k_sq(g, w, v, n) / denom).get_d()));
  }
  return vec;
}

std::vector<std::pair<std::size_t, FloatVector>> hyper_range_natural(const OneCircuitGraph& g, const WeightSystem& w,
                                                                     std::size_t depth,
                                                                     const AnalyticityReport& report) {
  std::vector<std::pair<std::size_t, FloatVector>> out;
  for (const auto& [k, verdict] : report.per_branch)
    if (verdict.status == SeriesStatus::Converges) out.emplace_back(k, formal_hyper_range_natural(g, w, k, depth));
  return out;
}

}  // namespace gshift
