#include <gshift/lab.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace gshift {

double wsp_bound(const Rational& epsilon) {
  const double e = epsilon.get_d();
  const double s = std::sqrt(1.0 - e);
  return e * e * e / (s * (1.0 - s));
}

bool wsp_closed_form(const Example31Params& p) {
  if (auto why = example31_violation(p)) throw InputError("inadmissible example31 parameters: " + *why);
  // K s (1 - s) < eps^3 with s = sqrt(1 - eps) in (0, 1); s^2 = 1 - eps.
  const Rational k = k_epsilon(p);
  const Rational e3 = p.epsilon * p.epsilon * p.epsilon;
  const QuadraticNumber s = QuadraticNumber::sqrt_of(1 - p.epsilon);
  const QuadraticNumber lhs = QuadraticNumber(k) * s - QuadraticNumber(Rational(k * (1 - p.epsilon) + e3));
  return lhs.sign() < 0;
}

bool norm_increasing_closed_form(const Example31Params& p) {
  if (auto why = example31_violation(p)) throw InputError("inadmissible example31 parameters: " + *why);
  return k_epsilon(p) <= p.epsilon * p.epsilon;
}

Rational norm_Se0_sq(const Example31Params& p) {
  if (auto why = example31_violation(p)) throw InputError("inadmissible example31 parameters: " + *why);
  return 1 - p.epsilon + p.epsilon * p.epsilon * p.epsilon / k_epsilon(p);
}

bool identity_3iso_check(const Example31Params& p) {
  if (auto why = example31_violation(p)) throw InputError("inadmissible example31 parameters: " + *why);
  const Rational l0 = 1 - p.epsilon;
  const Rational l1 = p.epsilon * p.epsilon * p.epsilon / k_epsilon(p);
  const Rational l2 = p_ab(p, 1) / p_ab(p, 0);
  const Rational l3 = p_ab(p, 2) / p_ab(p, 1);
  const Rational lhs = 1 - 3 * l1 + 3 * l1 * l2 - l1 * l2 * l3;
  const Rational rhs = l0 * (3 - 3 * l0 - 3 * l1 + l0 * l0 + l0 * l1 + l1 * l2);

  const Polynomial poly{Rational(1), p.a, p.b};
  const Polynomial third = poly.compose_linear(1, -1) - poly * Rational(3) + poly.compose_linear(1, 1) * Rational(3) -
                           poly.compose_linear(1, 2);
  return lhs == rhs && third.is_zero();
}

// ------------------------------------------------------------ crossover

namespace {

WspStatus series_wsp(const Example31Params& p, const SeriesPolicy& policy) {
  return wsp_verdict(example31_graph(), example31_weights(p), policy).status;
}

WspStatus as_status(bool holds) { return holds ? WspStatus::Holds : WspStatus::Fails; }

}  // namespace

CrossoverResult epsilon1_crossover(const Rational& a, const Rational& b, const Rational& lo, const Rational& hi,
                                   const Rational& tol, const SeriesPolicy& policy) {
  if (tol <= 0) throw InputError("crossover tolerance must be positive");
  if (!(lo < hi)) throw InputError("crossover bracket must satisfy lo < hi");
  CrossoverResult out;
  out.lo = lo;
  out.hi = hi;
  out.closed_form_lo = wsp_closed_form({a, b, lo});
  out.closed_form_hi = wsp_closed_form({a, b, hi});
  if (out.closed_form_lo == out.closed_form_hi)
    throw InputError("bracket [" + to_string(lo) + ", " + to_string(hi) + "] does not straddle the WSP crossover");
  while (out.hi - out.lo > tol) {
    const Rational mid = (out.lo + out.hi) / 2;
    if (wsp_closed_form({a, b, mid}) == out.closed_form_lo) out.lo = mid;
    else out.hi = mid;
  }
  out.series_lo = series_wsp({a, b, out.lo}, policy);
  out.series_hi = series_wsp({a, b, out.hi}, policy);
  out.routes_agree =
      out.series_lo == as_status(out.closed_form_lo) && out.series_hi == as_status(out.closed_form_hi);
  return out;
}

// ---------------------------------------------------------------- sweep

SweepRow sweep_row(const Rational& a, const Rational& b, const Rational& epsilon, const SweepOptions& options) {
  SweepRow row;
  row.epsilon = epsilon;
  const Example31Params p{a, b, epsilon};
  row.K = k_epsilon(p);
  if (auto why = example31_violation(p)) {
    row.admissible = false;
    row.violation = *why;
    return row;
  }
  const auto g = example31_graph();
  const auto w = example31_weights(p);
  row.wsp_bound = wsp_bound(epsilon);
  row.norm_Se0_sq = norm_Se0_sq(p);
  row.norm_increasing = norm_increasing_closed_form(p);
  row.wsp_closed_form = wsp_closed_form(p);
  row.wsp_series = wsp_verdict(g, w, options.policy).status;
  row.analytic = analyticity(g, w, options.policy).overall;
  const auto cls = classify(g, w, 3, options.depth);
  row.d3_max_abs = 0;
  for (const auto& [v, d] : cls.report.per_vertex) row.d3_max_abs = std::max(row.d3_max_abs, Rational(abs(d)));
  return row;
}

std::vector<SweepRow> sweep(const Rational& a, const Rational& b, std::vector<Rational> grid,
                            const SweepOptions& options) {
  std::sort(grid.begin(), grid.end());
  std::vector<SweepRow> rows(grid.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(grid.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = sweep_row(a, b, grid[i], options);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = sweep_row(a, b, grid[i], options);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::vector<std::pair<Rational, Rational>> wsp_flips(const std::vector<SweepRow>& rows) {
  std::vector<std::pair<Rational, Rational>> out;
  const SweepRow* prev = nullptr;
  for (const auto& row : rows) {
    if (!row.admissible) continue;
    if (prev && prev->wsp_closed_form != row.wsp_closed_form) out.emplace_back(prev->epsilon, row.epsilon);
    prev = &row;
  }
  return out;
}

// -------------------------------------------------------- dichotomy probe

namespace {

template <class Scalar>
ProbeRow probe_row(const ShiftModel<Scalar>& model, const WeightSystem& dual, const AnalyticityReport& dual_report,
                   std::size_t depth) {
  const auto closure = wandering_closure(model, depth - 1);
  ProbeRow row;
  row.depth = depth;
  row.ambient_dim = closure.ambient_dim;
  row.closure_dim = closure.dim;
  row.raw_codim = closure.codim();
  for (const auto& [k, verdict] : dual_report.per_branch) {
    if (verdict.status != SeriesStatus::Diverges) continue;
    FiniteVector<Scalar> g_k;
    if constexpr (ScalarTraits<Scalar>::exact) g_k = formal_hyper_range_vector(model, dual, k, depth);
    else g_k = formal_hyper_range_natural(model.graph(), dual, k, depth);
    if (!g_k.empty() && closure.span.orthogonal_to_span(g_k)) ++row.discounted;
  }
  row.discounted = std::min(row.discounted, row.raw_codim);
  row.codim = row.raw_codim - row.discounted;
  return row;
}

}  // namespace

/// Wandering closures are dense eliminations, so probe truncations stay small.
constexpr std::size_t kProbeLimit = 4096;

ProbeReport dichotomy_probe(const OneCircuitGraph& g, const WeightSystem& w, std::size_t m,
                            const std::vector<std::size_t>& depths, ArithmeticMode mode, const SeriesPolicy& policy) {
  if (depths.empty()) throw InputError("probe needs at least one depth");
  if (!w.positivity_floor()) throw InputError("probe needs a weight system bounded below");
  ProbeReport report;
  report.m = m;
  report.analytic = analyticity(g, w, policy).overall;
  const std::size_t max_depth = *std::max_element(depths.begin(), depths.end());
  if (g.truncation_size(max_depth, kProbeLimit) > kProbeLimit)
    throw InputError("probe depth " + std::to_string(max_depth) + " truncates to more than " +
                     std::to_string(kProbeLimit) + " vertices");
  report.norm_increasing = classify(g, w, 1, max_depth).expansive_violations.empty();
  report.m_concave = classify(g, w, m, max_depth).is_m_concave;

  const WeightSystem dual = cauchy_dual(g, w);
  const AnalyticityReport dual_report = analyticity(g, dual, policy);
  const ExactModel exact(g, w);
  const FloatModel floating(g, w);
  for (const std::size_t depth : depths) {
    if (depth < 2) throw InputError("probe depths must be at least 2");
    report.rows.push_back(mode == ArithmeticMode::Rational ? probe_row(exact, dual, dual_report, depth)
                                                           : probe_row(floating, dual, dual_report, depth));
  }

  std::vector<std::string> missing;
  if (report.analytic != AnalyticStatus::Analytic) missing.push_back("not analytic");
  if (!report.norm_increasing) missing.push_back("not norm-increasing");
  if (!report.m_concave) missing.push_back("not " + std::to_string(m) + "-concave");
  if (!missing.empty()) {
    report.annotation = "outside the dichotomy hypotheses:";
    for (std::size_t i = 0; i < missing.size(); ++i) report.annotation += (i ? ", " : " ") + missing[i];
    return report;
  }
  const bool all_zero = std::all_of(report.rows.begin(), report.rows.end(), [](const ProbeRow& r) { return r.codim == 0; });
  bool growing = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) growing = growing && report.rows[i].codim > report.rows[i - 1].codim;
  report.consistent = all_zero || growing;
  report.annotation = all_zero ? "codim 0 at every depth" : growing ? "codim grows with depth" : "codim neither 0 nor growing";
  return report;
}

// -------------------------------------------------- circuit-only remark

Remark32Result remark32_check(const std::vector<Rational>& circuit_sq, const Rational& tree_sq) {
  if (circuit_sq.empty()) throw InputError("need the squared weights of w_1..w_{l+1}");
  for (const auto& s : circuit_sq)
    if (s <= 0) throw InputError("squared weights must be positive");
  if (tree_sq <= 0) throw InputError("squared weights must be positive");
  Remark32Result out;
  Rational prod = 1;
  for (std::size_t j = 1; j < circuit_sq.size(); ++j) {
    if (circuit_sq[j] < 1) {
      out.violated = "lambda_w" + std::to_string(j + 1) + " >= 1";
      return out;
    }
    prod *= circuit_sq[j];
  }
  const Rational sigma = circuit_sq[0] + tree_sq;
  if (sigma < 1) {
    out.violated = "lambda_w1^2 + lambda_1^2 >= 1";
    return out;
  }
  // lambda_w1 / sigma > prod lambda_wj, squared (both sides positive).
  if (!(circuit_sq[0] / (sigma * sigma) > prod)) {
    out.violated = "lambda_w1 / (lambda_w1^2 + lambda_1^2) > prod lambda_wj";
    return out;
  }
  out.feasible = true;
  return out;
}

Remark32Search remark32_search(std::size_t l, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Weights k / 1000 with k in 1..3000; half the circuit draws start at 1 so
  // the first two inequalities are met often.
  std::uniform_int_distribution<long> any(1, 3000);
  std::uniform_int_distribution<long> at_least_one(1000, 3000);
  std::bernoulli_distribution coin(0.5);
  auto sq = [](long k) -> Rational { return Rational(k * k) / 1000000; };
  Remark32Search out;
  out.l = l;
  out.samples = samples;
  std::vector<Rational> circuit(l + 1);
  for (std::size_t i = 0; i < samples; ++i) {
    circuit[0] = sq(any(rng));
    for (std::size_t j = 1; j <= l; ++j) circuit[j] = sq(coin(rng) ? at_least_one(rng) : any(rng));
    const Rational tree = sq(any(rng));
    const auto r = remark32_check(circuit, tree);
    if (r.feasible) ++out.feasible;
    if (r.feasible || r.violated.rfind("lambda_w1 /", 0) == 0) ++out.first_two_hold;
  }
  return out;
}

}  // namespace gshift
