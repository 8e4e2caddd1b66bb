#ifndef GSHIFT_REPORT_HPP
#define GSHIFT_REPORT_HPP

#include <gshift/lab.hpp>
#include <gshift/scalar.hpp>
#include <gshift/series.hpp>
#include <gshift/shift.hpp>

#include <string>
#include <vector>

namespace gshift {

struct HyperRangeSummary {
  std::size_t branch = 0;
  std::size_t support = 0;
  /// ||g_k||^2 over the truncation (g_k normalized to 1 at w_k).
  double norm_sq = 0.0;
};

/// Everything `gshift check` reports about one instance.
struct CheckReport {
  std::string family;
  /// Depth actually used; below requested_depth when the truncation would be too large.
  std::size_t depth = 0;
  std::size_t requested_depth = 0;
  ArithmeticMode mode = ArithmeticMode::Rational;
  /// m = 1, 2, 3.
  std::vector<Classification> classes;
  std::vector<std::string> expansive_violations;
  AnalyticityReport analytic;
  WspVerdict wsp;
  std::vector<HyperRangeSummary> hyper_range;
  std::vector<std::size_t> hyper_range_inconclusive;
  std::optional<WanderingClosureSummary> closure;
  std::optional<ShimorinReport> shimorin;

  bool norm_increasing() const { return expansive_violations.empty(); }
  bool any_inconclusive() const;
};

CheckReport run_check(const OneCircuitGraph& g, const WeightSystem& w, std::size_t depth, ArithmeticMode mode,
                      const SeriesPolicy& policy = {});

std::string check_summary_line(const CheckReport& r);
std::string check_text(const OneCircuitGraph& g, const CheckReport& r);
std::string check_json(const OneCircuitGraph& g, const CheckReport& r);

std::string analyticity_json(const AnalyticityReport& r);
std::string defect_json(const OneCircuitGraph& g, const Classification& c);
/// Columns vertex,D_1,D_2,D_3,expansive_flag.
std::string defect_csv(const OneCircuitGraph& g, const std::vector<DefectRow>& rows);
std::string closure_json(const OneCircuitGraph& g, const WanderingClosureSummary& c);

/// Header epsilon,K,wsp_bound,norm_Se0_sq,norm_increasing,wsp_closed_form,wsp_series,analytic,d3_max_abs.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string probe_json(const ProbeReport& r);
std::string probe_text(const ProbeReport& r);

}  // namespace gshift

#endif
