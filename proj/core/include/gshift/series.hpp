#ifndef GSHIFT_SERIES_HPP
#define GSHIFT_SERIES_HPP

#include <gshift/graph.hpp>
#include <gshift/polynomial.hpp>
#include <gshift/rational.hpp>
#include <gshift/shift.hpp>
#include <gshift/weights.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gshift {

enum class SeriesStatus { Diverges, Converges, Inconclusive };
enum class CertificateKind { TermFloor, RatioAbove, RatioBelow, PartialSumsOnly };

std::string to_string(SeriesStatus s);
std::string to_string(CertificateKind k);

/// Evidence behind a SeriesVerdict. `bound` is delta (TermFloor), r
/// (RatioAbove) or q (RatioBelow); `from_index` is M0.
struct Certificate {
  CertificateKind kind = CertificateKind::PartialSumsOnly;
  Rational bound;
  std::size_t from_index = 0;
  /// Limit of the term ratio, when known symbolically (nullopt if infinite).
  std::optional<Rational> ratio_limit;
  bool ratio_limit_infinite = false;
  /// Sum of the inspected terms.
  Rational partial_sum;
  /// M0 lies past the inspected prefix; the premises then follow from the
  /// family guarantee alone (positive terms and ratio >= 1 from M0 on).
  bool beyond_inspection = false;
  /// RatioBelow only: the sum of all terms after the last inspected one is
  /// at most this value.
  std::optional<double> tail_bound;
};

struct SeriesVerdict {
  SeriesStatus status = SeriesStatus::Inconclusive;
  Certificate certificate;
  std::size_t terms_inspected = 0;
};

/// Symbolic term ratio supplied by a weight family: for every m >= from_index,
/// t_{m+1} * denominator(m) = t_m * numerator(m), with denominator(m) > 0.
/// A zero numerator states that the terms vanish after from_index.
struct RatioGuarantee {
  std::size_t from_index = 0;
  Polynomial numerator;
  Polynomial denominator;
};

struct SeriesPolicy {
  std::size_t m_max = 10000;
  Rational delta = 1;
  Rational r = 1;
  /// Preferred q for RatioBelow; the ratio limit and (limit + 1) / 2 are tried next.
  std::optional<Rational> q;
  /// Terms inspected past M0 when a guarantee certifies the tail.
  std::size_t window = 32;
};

/// Source of series terms; nullopt when term m cannot be produced.
using TermSource = std::function<std::optional<Rational>(std::size_t)>;

/// Decides divergence of a non-negative series from its terms and an
/// optional family guarantee. Without a guarantee the answer is Inconclusive
/// with the partial sum of the first m_max (or all available) terms.
SeriesVerdict series_verdict(const TermSource& term, const std::optional<RatioGuarantee>& guarantee,
                             const SeriesPolicy& policy = {});
SeriesVerdict series_verdict(const std::vector<Rational>& terms, const std::optional<RatioGuarantee>& guarantee,
                             const SeriesPolicy& policy = {});

/// Independent re-check of a verdict against the inspected terms: premises of
/// the certificate and a partial-sum bound (TermFloor/RatioAbove: partial sums
/// grow at least linearly; RatioBelow: partial sums stay under the geometric
/// bound). Inconclusive verdicts validate when their partial sum matches.
bool validate_certificate(const std::vector<Rational>& terms, const SeriesVerdict& verdict);

/// Terms of the divergence series of branch k (1 <= k <= l+1):
/// t_0 sums over Chi_G^k(root), t_m over Chi_T^{(l+1)m+k}(root), each term
/// (lambda^(n)(v) / lambda^(n)(w_k))^2.
class BranchSeries {
public:
  BranchSeries(OneCircuitGraph g, WeightSystem w, std::size_t k);

  std::size_t branch() const { return k_; }
  /// Term t_m, or nullopt when the tree layer it needs is too large to
  /// enumerate and no layer recurrence is known.
  std::optional<Rational> term(std::size_t m);
  /// Up to `count` leading terms.
  std::vector<Rational> terms(std::size_t count);
  const std::optional<RatioGuarantee>& guarantee() const { return guarantee_; }

  /// Sum over tree vertices v of depth n of (lambda^(n)(v))^2.
  std::optional<Rational> layer_sum(std::size_t n);

  /// Tree layers above this size are not enumerated.
  static constexpr std::size_t kLayerCap = std::size_t{1} << 18;

private:
  bool extend_explicit();

  OneCircuitGraph g_;
  WeightSystem w_;
  std::size_t k_;
  Rational circuit_sq_;   // c = (lambda^(l+1)(root))^2
  Rational branch_sq_;    // (lambda^(k)(w_k))^2
  std::size_t recurrence_from_ = 0;  // layer sums beyond this depth follow b R(n)
  bool recurrence_ = false;
  std::uint32_t b_ = 0;
  std::vector<Rational> layer_sums_;
  std::vector<std::pair<VertexId, Rational>> frontier_;
  bool frontier_capped_ = false;
  std::optional<std::size_t> empty_from_;  // first depth with no tree vertex
  std::optional<RatioGuarantee> guarantee_;
};

std::vector<Rational> series_terms(const OneCircuitGraph& g, const WeightSystem& w, std::size_t k, std::size_t m_max);

enum class AnalyticStatus { Analytic, NotAnalytic, Inconclusive };
std::string to_string(AnalyticStatus s);

struct AnalyticityReport {
  std::map<std::size_t, SeriesVerdict> per_branch;
  AnalyticStatus overall = AnalyticStatus::Inconclusive;
};

/// Analyticity through the per-branch divergence test. Requires a positivity floor.
AnalyticityReport analyticity(const OneCircuitGraph& g, const WeightSystem& w, const SeriesPolicy& policy = {});

enum class WspStatus { Holds, Fails, Inconclusive };
std::string to_string(WspStatus s);

struct WspVerdict {
  WspStatus status = WspStatus::Inconclusive;
  AnalyticityReport dual_report;
};

/// The shift has the wandering subspace property iff its Cauchy dual is analytic.
WspVerdict wsp_verdict(const OneCircuitGraph& g, const WeightSystem& w, const SeriesPolicy& policy = {});

struct HyperRangeVector {
  std::size_t branch = 0;
  ExactVector vector;  ///< lambda^(k)(w_k) g_k, truncated, in ExactModel coordinates
};

struct HyperRangeBasis {
  std::vector<HyperRangeVector> vectors;
  /// Branches whose verdict is Inconclusive.
  std::vector<std::size_t> inconclusive;
};

/// Depth truncation of the vectors g_k for every branch whose series
/// converges (positive multiples lambda^(k)(w_k) g_k). Divergent branches
/// contribute nothing.
HyperRangeBasis hyper_range_basis(const ExactModel& model, std::size_t depth, const AnalyticityReport& report);

/// Depth truncation of the formal vector g_k built from the weights `other`
/// (for instance the Cauchy dual), expressed in the coordinates of `model`,
/// up to a positive factor. Requires the ratio of the two gauges to be
/// rational, which holds for the Cauchy dual of model.weights().
ExactVector formal_hyper_range_vector(const ExactModel& model, const WeightSystem& other, std::size_t k,
                                      std::size_t depth);

/// Same vectors in natural coordinates, normalized to 1 at w_k.
std::vector<std::pair<std::size_t, FloatVector>> hyper_range_natural(const OneCircuitGraph& g, const WeightSystem& w,
                                                                     std::size_t depth,
                                                                     const AnalyticityReport& report);

/// Truncated g_k in natural coordinates, normalized to 1 at w_k, whatever
/// the verdict of branch k.
FloatVector formal_hyper_range_natural(const OneCircuitGraph& g, const WeightSystem& w, std::size_t k,
                                       std::size_t depth);

}  // namespace gshift

#endif
