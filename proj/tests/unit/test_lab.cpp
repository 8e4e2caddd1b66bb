#include <gshift/lab.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gshift;

namespace {

Rational q(const char* text) { return parse_rational(text); }

const OneCircuitGraph& loop_path() {
  static const OneCircuitGraph g = example31_graph();
  return g;
}

VertexId node(int n) { return loop_path().parse_label(std::to_string(n)); }

/// Admissible parameters drawn from small rationals.
std::vector<Example31Params> sampled_params(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> ab(1, 40);
  std::uniform_int_distribution<long> e(1, 199);
  std::vector<Example31Params> out;
  while (out.size() < count) {
    const Example31Params p{Rational(ab(rng)) / 4, Rational(ab(rng)) / 8, Rational(e(rng)) / 200};
    if (!example31_violation(p)) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Lab, ClosedFormExamples) {
  EXPECT_FALSE(wsp_closed_form({1, 1, q("1/2")}));
  EXPECT_TRUE(wsp_closed_form({1, 1, q("9/10")}));
  EXPECT_NEAR(wsp_bound(q("1/2")), 0.603553390593274, 1e-12);
  EXPECT_NEAR(wsp_bound(q("9/10")), 3.37141, 1e-4);
  for (const char* eps : {"1/10", "1/100", "1/1000", "1e-6"}) EXPECT_FALSE(wsp_closed_form({1, 1, q(eps)})) << eps;
}

TEST(Lab, NormIncreasingClosedForm) {
  for (int i = 1; i < 100; ++i) EXPECT_FALSE(norm_increasing_closed_form({1, 1, Rational(i) / 100}));
  EXPECT_TRUE(norm_increasing_closed_form({10, 1, q("0.183")}));
  EXPECT_EQ(q("0.183") * q("0.183"), q("33489/1000000"));
}

TEST(Lab, NormOfShiftedRoot) {
  EXPECT_EQ(norm_Se0_sq({1, 1, q("1/2")}), q("3/5"));
  EXPECT_EQ(norm_Se0_sq({1, 1, q("1/10")}), q("9/10") + q("1/1810"));
  Rational previous = 0;
  for (const char* eps : {"1/10", "1/100", "1/1000", "1/10000"}) {
    const Rational v = norm_Se0_sq({1, 1, q(eps)});
    EXPECT_GT(v, previous);
    EXPECT_LT(v, 1);
    previous = v;
  }
  EXPECT_GT(previous, q("0.999"));
}

TEST(Lab, ThreeIsometryIdentity) {
  EXPECT_TRUE(identity_3iso_check({1, 1, q("1/2")}));
  EXPECT_TRUE(identity_3iso_check({2, 3, q("1/4")}));
  EXPECT_EQ(k_epsilon({2, 3, q("1/4")}), q("1/16") - q("5/4") + 6);
}

TEST(LabProperties, IdentityMatchesOperatorDefects) {
  for (const auto& p : sampled_params(60, 41)) {
    const auto w = example31_weights(p);
    const bool operator_route = defect(loop_path(), w, 3, node(0)) == 0 && defect(loop_path(), w, 3, node(1)) == 0;
    EXPECT_EQ(identity_3iso_check(p), operator_route);
    EXPECT_TRUE(operator_route);
  }
}

TEST(LabProperties, ClosedFormsMatchOperatorRoutes) {
  for (const auto& p : sampled_params(60, 42)) {
    const auto w = example31_weights(p);
    const bool wsp = wsp_closed_form(p);
    EXPECT_EQ(wsp_verdict(loop_path(), w).status, wsp ? WspStatus::Holds : WspStatus::Fails)
        << to_string(p.a) << " " << to_string(p.b) << " " << to_string(p.epsilon);
    const bool ni = norm_increasing_closed_form(p);
    EXPECT_EQ(ni, classify(loop_path(), w, 1, 30).expansive_violations.empty());
    if (ni) EXPECT_TRUE(wsp);
    EXPECT_EQ(norm_Se0_sq(p), iterate_norm_sq(loop_path(), w, node(0), 1));
  }
}

TEST(Lab, CrossoverBracket) {
  const auto c = epsilon1_crossover(1, 1, q("1/2"), q("9/10"), q("1e-10"));
  EXPECT_LE(c.hi - c.lo, q("1e-10"));
  EXPECT_LT(c.lo, c.hi);
  EXPECT_FALSE(c.closed_form_lo);
  EXPECT_TRUE(c.closed_form_hi);
  EXPECT_EQ(c.series_lo, WspStatus::Fails);
  EXPECT_EQ(c.series_hi, WspStatus::Holds);
  EXPECT_TRUE(c.routes_agree);
  EXPECT_THROW(epsilon1_crossover(1, 1, q("1/10"), q("1/2"), q("1e-6")), InputError);
}

TEST(Lab, SweepOverTheUnitGrid) {
  std::vector<Rational> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(Rational(i) / 10);
  SweepOptions opt;
  opt.depth = 40;
  const auto rows = sweep(1, 1, grid, opt);
  ASSERT_EQ(rows.size(), 9u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.admissible);
    EXPECT_EQ(r.d3_max_abs, 0);
    EXPECT_EQ(r.analytic, AnalyticStatus::Analytic);
    EXPECT_EQ(r.wsp_closed_form, r.wsp_series == WspStatus::Holds);
  }
  const auto flips = wsp_flips(rows);
  ASSERT_EQ(flips.size(), 1u);
  EXPECT_EQ(flips[0].first, q("3/5"));
  EXPECT_EQ(flips[0].second, q("7/10"));
}

TEST(Lab, SweepFlagsInadmissibleRows) {
  const auto rows = sweep(10, 1, {q("1/2"), q("0.183")});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].epsilon, q("0.183"));
  EXPECT_TRUE(rows[0].admissible);
  EXPECT_FALSE(rows[1].admissible);
  EXPECT_FALSE(rows[1].violation.empty());
}

TEST(Lab, SweepIsIndependentOfThreadCount) {
  std::vector<Rational> grid;
  for (int i = 1; i < 20; ++i) grid.push_back(Rational(i) / 20);
  SweepOptions one, many;
  one.depth = many.depth = 20;
  many.threads = 4;
  const auto a = sweep(1, 1, grid, one);
  const auto b = sweep(1, 1, grid, many);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].epsilon, b[i].epsilon);
    EXPECT_EQ(a[i].wsp_series, b[i].wsp_series);
    EXPECT_EQ(a[i].K, b[i].K);
  }
}

TEST(Lab, ProbeOfTheExample) {
  const auto r = dichotomy_probe(loop_path(), example31_weights({1, 1, q("1/2")}), 3, {10, 20, 40});
  EXPECT_FALSE(r.norm_increasing);
  EXPECT_TRUE(r.m_concave);
  EXPECT_EQ(r.analytic, AnalyticStatus::Analytic);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.codim, 1u);
    EXPECT_EQ(row.discounted, 0u);
  }
  EXPECT_TRUE(r.consistent);
}

TEST(Lab, ProbeOfAnIsometry) {
  const auto w = WeightSystem::table({{node(0), q("1/2")}, {node(1), q("1/2")}}, 1);
  for (auto mode : {ArithmeticMode::Rational, ArithmeticMode::Float}) {
    const auto r = dichotomy_probe(loop_path(), w, 3, {8, 16, 32}, mode);
    EXPECT_TRUE(r.norm_increasing);
    EXPECT_EQ(r.analytic, AnalyticStatus::Analytic);
    for (const auto& row : r.rows) {
      EXPECT_EQ(row.codim, 0u);
      EXPECT_EQ(row.raw_codim, 1u);
    }
    EXPECT_TRUE(r.consistent);
  }
}

TEST(Lab, RemarkInequalities) {
  const auto r = remark32_check({Rational(4)}, Rational(1));
  EXPECT_FALSE(r.feasible);
  EXPECT_FALSE(r.violated.empty());
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> d(1, 3000);
  for (int i = 0; i < 5000; ++i) {
    const Rational root = Rational(d(rng)) / 1000;
    const Rational tree = Rational(d(rng)) / 1000;
    EXPECT_FALSE(remark32_check({root * root}, tree * tree).feasible);
  }
}

TEST(Lab, RemarkSearchFindsNothing) {
  for (std::size_t l = 0; l <= 4; ++l) {
    const auto s = remark32_search(l, 20000, 7 + l);
    EXPECT_EQ(s.samples, 20000u);
    EXPECT_EQ(s.feasible, 0u);
    EXPECT_GT(s.first_two_hold, 0u);
  }
  const auto a = remark32_search(2, 1000, 9);
  const auto b = remark32_search(2, 1000, 9);
  EXPECT_EQ(a.first_two_hold, b.first_two_hold);
}
