#include <gshift/report.hpp>

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace gshift {

namespace {

using nlohmann::json;

/// Truncations larger than this skip the wandering closure and Shimorin section.
constexpr std::size_t kSectionLimit = 4096;
/// Defect tables and truncated hyper-range vectors stop growing past this many vertices.
constexpr std::size_t kCheckLimit = std::size_t{1} << 16;

/// Largest d <= depth whose truncation has at most kCheckLimit vertices.
std::size_t affordable_depth(const OneCircuitGraph& g, std::size_t depth) {
  std::size_t d = depth;
  while (d > 1 && g.truncation_size(d, kCheckLimit) > kCheckLimit) --d;
  return d;
}

json number(double x) { return std::stod(format_double(x)); }

json certificate_json(const SeriesVerdict& v) {
  const auto& c = v.certificate;
  json j;
  j["status"] = to_string(v.status);
  j["certificate"] = to_string(c.kind);
  j["bound"] = to_string(c.bound);
  j["from_index"] = c.from_index;
  j["terms_inspected"] = v.terms_inspected;
  j["partial_sum"] = format_double(c.partial_sum.get_d());
  if (c.ratio_limit) j["ratio_limit"] = to_string(*c.ratio_limit);
  if (c.ratio_limit_infinite) j["ratio_limit"] = "inf";
  if (c.beyond_inspection) j["beyond_inspection"] = true;
  if (c.tail_bound) j["tail_bound"] = number(*c.tail_bound);
  return j;
}

json analyticity_j(const AnalyticityReport& r) {
  json j;
  j["overall"] = to_string(r.overall);
  json branches = json::array();
  for (const auto& [k, v] : r.per_branch) {
    json b = certificate_json(v);
    b["branch"] = k;
    branches.push_back(std::move(b));
  }
  j["branches"] = std::move(branches);
  return j;
}

json vector_json(const OneCircuitGraph& g, const FloatVector& f) {
  json j = json::object();
  for (const auto& [v, x] : f) j[g.label(v)] = number(x);
  return j;
}

json closure_j(const OneCircuitGraph& g, const WanderingClosureSummary& c) {
  json j;
  j["truncation_depth"] = c.truncation_depth;
  j["dim"] = c.dim;
  j["ambient_dim"] = c.ambient_dim;
  j["codim"] = c.codim();
  j["generators"] = c.generators;
  json ex = json::array();
  for (const auto& v : c.excluded) ex.push_back(g.label(v));
  j["excluded_parents"] = std::move(ex);
  json basis = json::array();
  for (const auto& f : c.complement_natural) basis.push_back(vector_json(g, f));
  j["complement_basis"] = std::move(basis);
  return j;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string wsp_word(WspStatus s) {
  switch (s) {
    case WspStatus::Holds: return "holds";
    case WspStatus::Fails: return "FAILS";
    case WspStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string analytic_word(AnalyticStatus s) {
  switch (s) {
    case AnalyticStatus::Analytic: return "yes";
    case AnalyticStatus::NotAnalytic: return "no";
    case AnalyticStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

template <class Scalar>
WanderingClosureSummary closure_for(const OneCircuitGraph& g, const WeightSystem& w, std::size_t depth) {
  const ShiftModel<Scalar> model(g, w);
  return summarize(model, wandering_closure(model, depth - 1));
}

}  // namespace

bool CheckReport::any_inconclusive() const {
  return analytic.overall == AnalyticStatus::Inconclusive || wsp.status == WspStatus::Inconclusive ||
         !hyper_range_inconclusive.empty();
}

CheckReport run_check(const OneCircuitGraph& g, const WeightSystem& w, std::size_t depth, ArithmeticMode mode,
                      const SeriesPolicy& policy) {
  if (depth < 1) throw InputError("depth must be at least 1");
  CheckReport r;
  r.family = w.family();
  r.requested_depth = depth;
  depth = affordable_depth(g, depth);
  r.depth = depth;
  r.mode = mode;
  for (std::size_t m = 1; m <= 3; ++m) r.classes.push_back(classify(g, w, m, depth));
  for (const auto& v : r.classes.front().expansive_violations) r.expansive_violations.push_back(g.label(v));

  if (!w.positivity_floor()) throw InputError("weight system has no positive lower bound");
  r.analytic = analyticity(g, w, policy);
  r.wsp = wsp_verdict(g, w, policy);
  for (const auto& [k, v] : r.analytic.per_branch) {
    if (v.status == SeriesStatus::Inconclusive) r.hyper_range_inconclusive.push_back(k);
    if (v.status != SeriesStatus::Converges) continue;
    const FloatVector gk = formal_hyper_range_natural(g, w, k, depth);
    double n2 = 0;
    for (const auto& [u, x] : gk) n2 += x * x;
    r.hyper_range.push_back({k, gk.size(), n2});
  }

  if (depth >= 2 && g.truncation_size(depth, kSectionLimit) <= kSectionLimit) {
    r.closure = mode == ArithmeticMode::Rational ? closure_for<QuadraticNumber>(g, w, depth)
                                                 : closure_for<double>(g, w, depth);
    r.shimorin = shimorin_inequality_check(g, w, depth);
  }
  return r;
}

std::string check_summary_line(const CheckReport& r) {
  std::ostringstream os;
  for (const auto& c : r.classes) os << c.report.m << "-isometry: " << yes_no(c.is_m_isometry) << "; ";
  os << "norm-increasing: " << yes_no(r.norm_increasing()) << "; analytic: " << analytic_word(r.analytic.overall)
     << "; WSP: " << wsp_word(r.wsp.status);
  return os.str();
}

std::string check_text(const OneCircuitGraph& g, const CheckReport& r) {
  std::ostringstream os;
  os << "family " << r.family << ", circuit length " << g.circuit_length() << ", depth " << r.depth << ", mode "
     << to_string(r.mode) << "\n";
  if (r.depth < r.requested_depth)
    os << "  (depth capped from " << r.requested_depth << ": truncations are limited to " << kCheckLimit << " vertices)\n";
  os << check_summary_line(r) << "\n";
  for (const auto& c : r.classes)
    os << "  m=" << c.report.m << ": isometry " << yes_no(c.is_m_isometry) << ", concave " << yes_no(c.is_m_concave)
       << "\n";
  os << "  expansivity violations:";
  if (r.expansive_violations.empty()) os << " none";
  for (const auto& v : r.expansive_violations) os << " " << v;
  os << "\n";
  auto branches = [&](const char* title, const AnalyticityReport& a) {
    os << title << " " << to_string(a.overall) << "\n";
    for (const auto& [k, v] : a.per_branch) {
      os << "    branch " << k << ": " << to_string(v.status) << " via " << to_string(v.certificate.kind) << "("
         << to_string(v.certificate.bound) << ", M0=" << v.certificate.from_index << ")";
      if (v.certificate.ratio_limit) os << ", ratio limit " << to_string(*v.certificate.ratio_limit);
      os << ", " << v.terms_inspected << " terms\n";
    }
  };
  branches("  analyticity:", r.analytic);
  branches("  dual analyticity:", r.wsp.dual_report);
  os << "  WSP: " << to_string(r.wsp.status) << "\n";
  os << "  hyper-range:";
  if (r.hyper_range.empty()) os << " {0}";
  for (const auto& h : r.hyper_range)
    os << " g_" << h.branch << " (support " << h.support << ", truncated norm^2 " << format_double(h.norm_sq) << ")";
  os << "\n";
  if (r.closure)
    os << "  wandering closure: dim " << r.closure->dim << " of " << r.closure->ambient_dim << " (codim "
       << r.closure->codim() << ")\n";
  if (r.shimorin)
    os << "  Shimorin inequality on the section: " << (r.shimorin->satisfied ? "satisfied" : "violated")
       << " (max eigenvalue " << format_double(r.shimorin->max_eigenvalue) << ")\n";
  return os.str();
}

std::string check_json(const OneCircuitGraph& g, const CheckReport& r) {
  json j;
  j["family"] = r.family;
  j["circuit_length"] = g.circuit_length();
  j["depth"] = r.depth;
  j["requested_depth"] = r.requested_depth;
  j["mode"] = to_string(r.mode);
  json iso = json::object();
  for (const auto& c : r.classes) {
    json e;
    e["isometry"] = c.is_m_isometry;
    e["concave"] = c.is_m_concave;
    iso[std::to_string(c.report.m)] = std::move(e);
  }
  j["m"] = std::move(iso);
  j["norm_increasing"] = r.norm_increasing();
  j["expansive_violations"] = r.expansive_violations;
  j["analyticity"] = analyticity_j(r.analytic);
  j["wsp"] = {{"status", to_string(r.wsp.status)}, {"dual_analyticity", analyticity_j(r.wsp.dual_report)}};
  json hr = json::array();
  for (const auto& h : r.hyper_range)
    hr.push_back({{"branch", h.branch}, {"support", h.support}, {"norm_sq", number(h.norm_sq)}});
  j["hyper_range"] = std::move(hr);
  j["hyper_range_inconclusive"] = r.hyper_range_inconclusive;
  if (r.closure) {
    json c = closure_j(g, *r.closure);
    c.erase("complement_basis");
    j["wandering_closure"] = std::move(c);
  }
  if (r.shimorin) {
    json ex = json::array();
    for (const auto& v : r.shimorin->excluded) ex.push_back(g.label(v));
    j["shimorin"] = {{"satisfied", r.shimorin->satisfied},
                     {"max_eigenvalue", number(r.shimorin->max_eigenvalue)},
                     {"excluded_parents", std::move(ex)}};
  }
  j["summary"] = check_summary_line(r);
  return j.dump(2) + "\n";
}

std::string analyticity_json(const AnalyticityReport& r) { return analyticity_j(r).dump(2) + "\n"; }

std::string defect_json(const OneCircuitGraph& g, const Classification& c) {
  json j;
  j["m"] = c.report.m;
  j["depth"] = c.report.depth;
  j["is_m_isometry"] = c.is_m_isometry;
  j["is_m_concave"] = c.is_m_concave;
  json per = json::object();
  for (const auto& [v, d] : c.report.per_vertex) per[g.label(v)] = to_string(d);
  j["per_vertex"] = std::move(per);
  json ex = json::array();
  for (const auto& v : c.expansive_violations) ex.push_back(g.label(v));
  j["expansive_violations"] = std::move(ex);
  return j.dump(2) + "\n";
}

std::string defect_csv(const OneCircuitGraph& g, const std::vector<DefectRow>& rows) {
  std::ostringstream os;
  os << "vertex,D_1,D_2,D_3,expansive_flag\n";
  for (const auto& r : rows)
    os << g.label(r.vertex) << "," << to_string(r.d1) << "," << to_string(r.d2) << "," << to_string(r.d3) << ","
       << (r.expansive ? "true" : "false") << "\n";
  return os.str();
}

std::string closure_json(const OneCircuitGraph& g, const WanderingClosureSummary& c) {
  return closure_j(g, c).dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "epsilon,K,wsp_bound,norm_Se0_sq,norm_increasing,wsp_closed_form,wsp_series,analytic,d3_max_abs\n";
  for (const auto& r : rows) {
    if (!r.admissible) {
      os << to_string(r.epsilon) << "," << to_string(r.K) << ",inadmissible,inadmissible,inadmissible,inadmissible,"
         << "inadmissible,inadmissible,inadmissible\n";
      continue;
    }
    os << to_string(r.epsilon) << "," << to_string(r.K) << "," << format_double(r.wsp_bound) << ","
       << to_string(r.norm_Se0_sq) << "," << (r.norm_increasing ? "true" : "false") << ","
       << (r.wsp_closed_form ? "true" : "false") << "," << to_string(r.wsp_series) << "," << to_string(r.analytic)
       << "," << to_string(r.d3_max_abs) << "\n";
  }
  return os.str();
}

std::string probe_json(const ProbeReport& r) {
  json j;
  j["m"] = r.m;
  j["analytic"] = to_string(r.analytic);
  j["norm_increasing"] = r.norm_increasing;
  j["m_concave"] = r.m_concave;
  j["consistent"] = r.consistent;
  j["annotation"] = r.annotation;
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"depth", row.depth},
                    {"ambient_dim", row.ambient_dim},
                    {"closure_dim", row.closure_dim},
                    {"raw_codim", row.raw_codim},
                    {"discounted", row.discounted},
                    {"codim", row.codim}});
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string probe_text(const ProbeReport& r) {
  std::ostringstream os;
  os << "analytic: " << to_string(r.analytic) << "; norm-increasing: " << yes_no(r.norm_increasing) << "; "
     << r.m << "-concave: " << yes_no(r.m_concave) << "\n";
  os << "depth,ambient_dim,closure_dim,raw_codim,discounted,codim\n";
  for (const auto& row : r.rows)
    os << row.depth << "," << row.ambient_dim << "," << row.closure_dim << "," << row.raw_codim << ","
       << row.discounted << "," << row.codim << "\n";
  os << r.annotation << (r.consistent ? "" : " (inconsistent with the dichotomy)") << "\n";
  return os.str();
}

}  // namespace gshift
