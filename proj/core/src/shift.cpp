#include <gshift/shift.hpp>

#include <Eigen/Dense>

#include <limits>

namespace gshift {

std::string to_string(ArithmeticMode mode) { return mode == ArithmeticMode::Rational ? "rational" : "float"; }

ArithmeticMode parse_arithmetic_mode(const std::string& text) {
  if (text == "rational" || text == "exact") return ArithmeticMode::Rational;
  if (text == "float") return ArithmeticMode::Float;
  throw InputError("unknown arithmetic mode '" + text + "' (expected rational or float)");
}

std::string ScalarTraits<double>::to_string(double x) { return format_double(x); }

// ------------------------------------------------------------------ defects

std::vector<Rational> iterate_norms_sq(const OneCircuitGraph& g, const WeightSystem& w, const VertexId& v,
                                       std::size_t kmax) {
  g.require(v);
  std::vector<Rational> out{Rational(1)};
  std::map<VertexId, Rational> layer{{v, Rational(1)}};
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::map<VertexId, Rational> next;
    Rational total = 0;
    for (const auto& [u, prod] : layer)
      for (const auto& c : g.children(u)) {
        Rational x = prod * w.sq_weight(c);
        total += x;
        next.emplace(c, std::move(x));
      }
    out.push_back(total);
    layer = std::move(next);
  }
  return out;
}

Rational iterate_norm_sq(const OneCircuitGraph& g, const WeightSystem& w, const VertexId& v, std::size_t k) {
  return iterate_norms_sq(g, w, v, k).back();
}

Rational defect(const OneCircuitGraph& g, const WeightSystem& w, std::size_t m, const VertexId& v) {
  const auto norms = iterate_norms_sq(g, w, v, m);
  Rational acc = 0;
  for (std::size_t k = 0; k <= m; ++k) {
    const Rational term = Rational(binomial(m, k)) * norms[k];
    if (k % 2 == 0) acc += term;
    else acc -= term;
  }
  return acc;
}

Classification classify(const OneCircuitGraph& g, const WeightSystem& w, std::size_t m, std::size_t depth) {
  if (m < 1) throw InputError("defect order m must be at least 1");
  Classification out;
  out.report.m = m;
  out.report.depth = depth;
  out.is_m_isometry = true;
  out.is_m_concave = true;
  const int concave_sign = m % 2 == 0 ? 1 : -1;
  for (const auto& v : g.truncation(depth)) {
    const auto norms = iterate_norms_sq(g, w, v, m);
    Rational dm = 0;
    for (std::size_t k = 0; k <= m; ++k) {
      const Rational term = Rational(binomial(m, k)) * norms[k];
      if (k % 2 == 0) dm += term;
      else dm -= term;
    }
    if (dm != 0) out.is_m_isometry = false;
    if (concave_sign * sgn(dm) > 0) out.is_m_concave = false;
    if (norms[1] < 1) out.expansive_violations.push_back(v);
    out.report.per_vertex.emplace_back(v, std::move(dm));
  }
  return out;
}

std::vector<DefectRow> defect_table(const OneCircuitGraph& g, const WeightSystem& w, std::size_t depth) {
  std::vector<DefectRow> rows;
  for (const auto& v : g.truncation(depth)) {
    const auto n = iterate_norms_sq(g, w, v, 3);
    DefectRow row{v, 1 - n[1], 1 - 2 * n[1] + n[2], 1 - 3 * n[1] + 3 * n[2] - n[3], n[1] >= 1};
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<VertexId> boundary_parents(const OneCircuitGraph& g, std::size_t depth) {
  std::vector<VertexId> out;
  for (const auto& v : g.truncation(depth)) {
    const auto kids = g.children(v);
    if (std::any_of(kids.begin(), kids.end(), [&](const VertexId& c) { return g.generation(c) > depth; }))
      out.push_back(v);
  }
  return out;
}

// ------------------------------------------------------------- Shimorin

ShimorinReport shimorin_inequality_check(const OneCircuitGraph& g, const WeightSystem& w, std::size_t depth) {
  if (depth < 2) throw InputError("Shimorin check needs depth >= 2");
  if (!w.positivity_floor()) throw InputError("Shimorin check needs a weight system bounded below");
  ShimorinReport out;
  out.depth = depth;
  out.satisfied = true;
  out.excluded = boundary_parents(g, depth);
  out.max_eigenvalue = -std::numeric_limits<double>::infinity();

  const VertexSet excluded(out.excluded.begin(), out.excluded.end());
  for (const auto& v : g.truncation(depth)) {
    if (excluded.count(v)) continue;
    const auto family = g.children(v);
    const Rational s = child_sq_sum(g, w, v);
    const std::size_t n = family.size();

    // Diagonal part: ||S^2 e_u||^2 - 3 ||S e_u||^2 + 3 - ||S' e_u||^2, with
    // ||S' e_u||^2 = 1 / (child sum at u).
    std::vector<Rational> d(n), sq(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto norms = iterate_norms_sq(g, w, family[i], 2);
      d[i] = norms[2] - 3 * norms[1] + 3 - 1 / norms[1];
      sq[i] = w.sq_weight(family[i]);
      out.diagonal.emplace_back(family[i], d[i]);
    }

    // Block of -P_{ker S*} on Chi(v): -(I - lambda lambda^T / s), zero for a
    // single child. The block is diag(delta) + lambda lambda^T / s.
    Eigen::MatrixXd block(n, n);
    if (n == 1) {
      block(0, 0) = d[0].get_d();
      if (d[0] > 0) out.satisfied = false;
    } else {
      bool block_ok = true;
      Rational quad = 0;  // sum of (lambda_u^2 / s) / (-delta_u)
      for (std::size_t i = 0; i < n; ++i) {
        const Rational delta = d[i] - 1;
        if (delta >= 0) {
          block_ok = false;
          break;
        }
        quad += sq[i] / s / (-delta);
      }
      if (!block_ok || quad > 1) out.satisfied = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double r = std::sqrt(sq[i].get_d() * sq[j].get_d()) / s.get_d();
          block(i, j) = r + (i == j ? d[i].get_d() - 1.0 : 0.0);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(block, Eigen::EigenvaluesOnly);
    out.max_eigenvalue = std::max(out.max_eigenvalue, eig.eigenvalues().maxCoeff());
  }
  return out;
}

}  // namespace gshift
