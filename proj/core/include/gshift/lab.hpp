#ifndef GSHIFT_LAB_HPP
#define GSHIFT_LAB_HPP

#include <gshift/rational.hpp>
#include <gshift/scalar.hpp>
#include <gshift/series.hpp>
#include <gshift/shift.hpp>
#include <gshift/weights.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gshift {

// ------------------------------------------------- closed-form criteria

/// eps^3 / (sqrt(1 - eps) (1 - sqrt(1 - eps))), evaluated in double.
double wsp_bound(const Rational& epsilon);

/// K_eps < eps^3 / (sqrt(1 - eps) (1 - sqrt(1 - eps))), decided exactly with
/// sqrt(1 - eps) as an element of Q(sqrt(1 - eps)).
bool wsp_closed_form(const Example31Params& p);

/// K_eps <= eps^2.
bool norm_increasing_closed_form(const Example31Params& p);

/// ||S e_0||^2 = 1 - eps + eps^3 / K_eps.
Rational norm_Se0_sq(const Example31Params& p);

/// Both 3-isometry identities of the family, in exact arithmetic:
/// 1 - 3 l1 + 3 l1 l2 - l1 l2 l3 = l0 (3 - 3 l0 - 3 l1 + l0^2 + l0 l1 + l1 l2)
/// with lk the squared weights (this is D_3(e_0) = 0), and the vanishing of
/// the third difference p(x-1) - 3 p(x) + 3 p(x+1) - p(x+2) (D_3(e_n) = 0, n >= 1).
bool identity_3iso_check(const Example31Params& p);

// ------------------------------------------------------------ crossover

struct CrossoverResult {
  Rational lo;
  Rational hi;
  bool closed_form_lo = false;
  bool closed_form_hi = false;
  WspStatus series_lo = WspStatus::Inconclusive;
  WspStatus series_hi = WspStatus::Inconclusive;
  /// Closed form and series route agree at both endpoints.
  bool routes_agree = false;
};

/// Bisection on eps for the sign change of K_eps - bound(eps) inside the
/// bracket; the returned interval has width <= tol.
CrossoverResult epsilon1_crossover(const Rational& a, const Rational& b, const Rational& lo, const Rational& hi,
                                   const Rational& tol, const SeriesPolicy& policy = {});

// ---------------------------------------------------------------- sweep

struct SweepRow {
  Rational epsilon;
  bool admissible = true;
  std::string violation;
  Rational K;
  double wsp_bound = 0.0;
  Rational norm_Se0_sq;
  bool norm_increasing = false;
  bool wsp_closed_form = false;
  WspStatus wsp_series = WspStatus::Inconclusive;
  AnalyticStatus analytic = AnalyticStatus::Inconclusive;
  Rational d3_max_abs;
};

struct SweepOptions {
  std::size_t depth = 50;
  SeriesPolicy policy;
  /// Worker threads; rows are returned in grid order regardless.
  unsigned threads = 1;
};

SweepRow sweep_row(const Rational& a, const Rational& b, const Rational& epsilon, const SweepOptions& options = {});
std::vector<SweepRow> sweep(const Rational& a, const Rational& b, std::vector<Rational> grid,
                            const SweepOptions& options = {});

/// Brackets [eps_i, eps_{i+1}] of consecutive admissible rows whose closed-form verdicts differ.
std::vector<std::pair<Rational, Rational>> wsp_flips(const std::vector<SweepRow>& rows);

// -------------------------------------------------------- dichotomy probe

struct ProbeRow {
  std::size_t depth = 0;
  std::size_t ambient_dim = 0;
  std::size_t closure_dim = 0;
  /// ambient_dim - closure_dim.
  std::size_t raw_codim = 0;
  /// Complement directions spanned by truncated dual vectors g'_k of
  /// branches whose dual series diverges (these have no l^2 limit).
  std::size_t discounted = 0;
  std::size_t codim = 0;
};

struct ProbeReport {
  std::size_t m = 3;
  AnalyticStatus analytic = AnalyticStatus::Inconclusive;
  bool norm_increasing = false;
  bool m_concave = false;
  std::vector<ProbeRow> rows;
  /// For norm-increasing m-concave analytic instances: codim stays 0 or
  /// strictly increases across depths. Always true outside those hypotheses.
  bool consistent = true;
  std::string annotation;
};

/// Wandering-closure codimensions across truncation depths, plus the
/// hypotheses of the dichotomy for the instance.
ProbeReport dichotomy_probe(const OneCircuitGraph& g, const WeightSystem& w, std::size_t m,
                            const std::vector<std::size_t>& depths, ArithmeticMode mode = ArithmeticMode::Rational,
                            const SeriesPolicy& policy = {});

// -------------------------------------------------- circuit-only remark

struct Remark32Result {
  bool feasible = false;
  /// Name of the first violated inequality (empty when feasible).
  std::string violated;
};

/// Squared weights of the circuit w_1..w_{l+1} (w_{l+1} the root) and of the
/// first tree vertex. Evaluates lambda_{w_j} >= 1 (j >= 2),
/// lambda_{w_1}^2 + lambda_1^2 >= 1 and
/// lambda_{w_1} / (lambda_{w_1}^2 + lambda_1^2) > prod_{j>=2} lambda_{w_j}.
Remark32Result remark32_check(const std::vector<Rational>& circuit_sq, const Rational& tree_sq);

struct Remark32Search {
  std::size_t l = 0;
  std::size_t samples = 0;
  std::size_t feasible = 0;
  std::size_t first_two_hold = 0;  ///< samples passing the first two inequalities
};

/// Randomized search over rational candidates; deterministic for a seed.
Remark32Search remark32_search(std::size_t l, std::size_t samples, std::uint64_t seed);

}  // namespace gshift

#endif
