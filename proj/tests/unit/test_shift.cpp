#include <gshift/shift.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gshift;

namespace {

Rational q(const char* text) { return parse_rational(text); }

const OneCircuitGraph& loop_path() {
  static const OneCircuitGraph g = example31_graph();
  return g;
}

VertexId node(int n) { return loop_path().parse_label(std::to_string(n)); }

WeightSystem half_weights() { return example31_weights({1, 1, q("1/2")}); }

/// Squared natural coordinate of an exact model entry.
Rational natural_sq(const ExactModel& m, const ExactVector& f, const VertexId& v) {
  const QuadraticNumber x = f.at(v);
  const QuadraticNumber x2 = x * x;
  EXPECT_TRUE(x2.is_rational());
  return x2.rational_part() * m.gauge_sq(v);
}

}  // namespace

TEST(Shift, ShiftOfBasisVectorsOnTheExample) {
  const ExactModel m(loop_path(), half_weights());
  const auto s0 = apply_shift(m, ExactVector::basis(node(0)));
  EXPECT_EQ(s0.size(), 2u);
  EXPECT_EQ(natural_sq(m, s0, node(0)), q("1/2"));
  EXPECT_EQ(natural_sq(m, s0, node(1)), q("1/10"));
  EXPECT_GT(s0.at(node(0)), QuadraticNumber(0));

  const auto s1 = apply_shift(m, ExactVector::basis(node(1)));
  EXPECT_EQ(s1.support(), VertexSet{node(2)});
  EXPECT_EQ(natural_sq(m, s1, node(2)) / m.gauge_sq(node(1)), q("3"));

  EXPECT_TRUE(apply_shift(m, ExactVector{}).empty());
}

TEST(Shift, AdjointOfBasisVectorsOnTheExample) {
  const ExactModel m(loop_path(), half_weights());
  const auto a1 = apply_adjoint(m, ExactVector::basis(node(1)));
  EXPECT_EQ(a1.support(), VertexSet{node(0)});
  // e_1 has natural norm^2 gauge(1) = 1/10 in these coordinates.
  EXPECT_EQ(natural_sq(m, a1, node(0)), q("1/10") * m.gauge_sq(node(1)));
  const auto a0 = apply_adjoint(m, ExactVector::basis(node(0)));
  EXPECT_EQ(natural_sq(m, a0, node(0)), q("1/2"));
}

TEST(Shift, FloatShiftMatchesDefinition) {
  const FloatModel m(loop_path(), half_weights());
  const auto s0 = apply_shift(m, FloatVector::basis(node(0)));
  EXPECT_NEAR(s0.at(node(0)), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(s0.at(node(1)), std::sqrt(0.1), 1e-15);
}

TEST(ShiftProperties, AdjointIdentityAndNaturalOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = oracle::random_instance(rng);
    const ExactModel m(inst.graph, inst.weights);
    const FloatModel fm(inst.graph, inst.weights);
    const auto pool = inst.graph.truncation(inst.tree_depth + 1);
    for (int rep = 0; rep < 10; ++rep) {
      const auto f = oracle::random_vector(rng, pool);
      const auto h = oracle::random_vector(rng, pool);
      const auto fx = oracle::to_model(inst, f);
      const auto hx = oracle::to_model(inst, h);
      const auto sf = apply_shift(m, fx);
      const auto sh = apply_adjoint(m, hx);
      EXPECT_EQ(inner(m, sf, hx), inner(m, fx, sh));
      EXPECT_EQ(oracle::from_model(inst, sf), oracle::natural_shift(inst, f));
      EXPECT_EQ(oracle::from_model(inst, sh), oracle::natural_adjoint(inst, h));
      EXPECT_EQ(inner(m, sf, hx), QuadraticNumber(oracle::natural_inner(oracle::natural_shift(inst, f), h)));

      const auto fs = apply_shift(fm, oracle::to_float(f));
      for (const auto& [v, x] : oracle::natural_shift(inst, f)) EXPECT_NEAR(fs.at(v), x.get_d(), 1e-12);
    }
  }
}

TEST(Shift, IterateNorms) {
  const auto& g = loop_path();
  const auto w = half_weights();
  for (long k = 0; k < 20; ++k)
    EXPECT_EQ(iterate_norm_sq(g, w, node(1), static_cast<std::size_t>(k)), Rational(1 + k + k * k));
  EXPECT_EQ(iterate_norm_sq(g, w, node(1), 2), 7);
  EXPECT_EQ(iterate_norm_sq(g, w, node(0), 0), 1);
  EXPECT_EQ(iterate_norm_sq(g, w, node(0), 3), q("1/8") + q("1/40") + q("3/20") + q("7/10"));
  EXPECT_EQ(iterate_norm_sq(g, w, node(0), 3), 1);
  const auto all = iterate_norms_sq(g, w, node(0), 6);
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_EQ(all[k], iterate_norm_sq(g, w, node(0), k));
}

TEST(ShiftProperties, IterateNormsMatchOperatorPowers) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = oracle::random_instance(rng);
    for (const auto& v : inst.graph.truncation(2)) {
      oracle::NaturalVector f{{v, 1}};
      for (std::size_t k = 0; k <= 4; ++k) {
        EXPECT_EQ(iterate_norm_sq(inst.graph, inst.weights, v, k), oracle::natural_inner(f, f));
        f = oracle::natural_shift(inst, f);
      }
    }
  }
}

TEST(Shift, DefectsOfTheExample) {
  const auto& g = loop_path();
  const auto w = half_weights();
  EXPECT_EQ(defect(g, w, 3, node(1)), 0);
  EXPECT_EQ(defect(g, w, 3, node(0)), 0);
  EXPECT_EQ(defect(g, w, 1, node(0)), q("2/5"));
  const auto c = classify(g, w, 3, 200);
  EXPECT_TRUE(c.is_m_isometry);
  EXPECT_TRUE(c.is_m_concave);
  EXPECT_EQ(c.report.per_vertex.size(), 201u);
  EXPECT_EQ(c.expansive_violations, std::vector<VertexId>{node(0)});
  EXPECT_FALSE(classify(g, w, 1, 20).is_m_isometry);
  EXPECT_FALSE(classify(g, w, 2, 20).is_m_isometry);
}

TEST(Shift, DefectTableRows) {
  const auto rows = defect_table(loop_path(), half_weights(), 5);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_FALSE(rows[0].expansive);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_TRUE(rows[i].expansive);
    EXPECT_EQ(rows[i].d3, 0);
  }
}

TEST(ShiftProperties, BinomialRecursion) {
  std::mt19937_64 rng(33);
  auto check = [](const OneCircuitGraph& g, const WeightSystem& w, const VertexId& v) {
    for (std::size_t m = 0; m <= 3; ++m) {
      Rational shifted = 0;
      for (const auto& c : g.children(v)) shifted += w.sq_weight(c) * defect(g, w, m, c);
      EXPECT_EQ(defect(g, w, m + 1, v), defect(g, w, m, v) - shifted) << v.to_string() << " m=" << m;
    }
  };
  for (int n = 0; n < 10; ++n) check(loop_path(), half_weights(), node(n));
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = oracle::random_instance(rng);
    for (const auto& v : inst.graph.truncation(3)) check(inst.graph, inst.weights, v);
  }
}

TEST(ShiftProperties, IteratesOfDistinctBasisVectorsAreOrthogonal) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = oracle::random_instance(rng, 4);
    const ExactModel m(inst.graph, inst.weights);
    const auto verts = inst.graph.truncation(2);
    for (std::size_t k = 0; k <= 4; ++k) {
      std::vector<ExactVector> its;
      for (const auto& v : verts) its.push_back(apply_shift_power(m, ExactVector::basis(v), k));
      for (std::size_t i = 0; i < its.size(); ++i)
        for (std::size_t j = i + 1; j < its.size(); ++j) EXPECT_TRUE(inner(m, its[i], its[j]).is_zero());
    }
  }
}

TEST(Shift, KernelOfTheAdjointOnTheExample) {
  const ExactModel m(loop_path(), half_weights());
  const auto basis = kernel_adjoint_basis(m, 5);
  ASSERT_EQ(basis.size(), 1u);
  const auto& h = basis[0];
  EXPECT_EQ(h.support(), (VertexSet{node(0), node(1)}));
  EXPECT_EQ(natural_sq(m, h, node(0)) / natural_sq(m, h, node(1)), q("1/5"));
  EXPECT_TRUE(apply_adjoint(m, h).empty());
}

TEST(ShiftProperties, KernelVectorsAnnihilatedByTheAdjoint) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = oracle::random_instance(rng);
    const ExactModel m(inst.graph, inst.weights);
    const std::size_t depth = inst.tree_depth + 1;
    std::size_t expected = 0;
    for (const auto& v : inst.graph.truncation(depth)) {
      const auto kids = inst.graph.children(v);
      bool inside = true;
      for (const auto& c : kids) inside = inside && inst.graph.generation(c) <= depth;
      if (inside && kids.size() >= 2) expected += kids.size() - 1;
    }
    const auto basis = kernel_adjoint_basis(m, depth);
    EXPECT_EQ(basis.size(), expected);
    EchelonBasis<QuadraticNumber> span(m);
    for (const auto& h : basis) {
      EXPECT_TRUE(oracle::natural_adjoint(inst, oracle::from_model(inst, h)).empty());
      EXPECT_TRUE(span.insert(h));
    }
  }
}

TEST(Shift, RangePredicateExamples) {
  const ExactModel m(loop_path(), half_weights());
  const FloatModel fm(loop_path(), half_weights());
  for (std::size_t k = 1; k <= 4; ++k) {
    ExactVector g = ExactVector::basis(node(2));
    g.add(node(0), QuadraticNumber(3));
    EXPECT_TRUE(range_predicate(m, apply_shift_power(m, g, k), k));
    EXPECT_TRUE(range_predicate(fm, apply_shift_power(fm, to_natural(m, g), k), k));
  }
  EXPECT_FALSE(range_predicate(m, ExactVector::basis(node(1)), 1));
  EXPECT_FALSE(range_predicate(m, ExactVector::basis(node(0)), 1));
  EXPECT_FALSE(range_predicate(fm, FloatVector::basis(node(1)), 1));
  EXPECT_TRUE(range_predicate(m, ExactVector::basis(node(2)), 1));
  EXPECT_TRUE(range_predicate(m, ExactVector{}, 3));
}

TEST(ShiftProperties, RangePredicateAgreesWithLeastSquares) {
  std::mt19937_64 rng(36);
  int in_range = 0, out_of_range = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = oracle::random_instance(rng);
    const ExactModel m(inst.graph, inst.weights);
    const FloatModel fm(inst.graph, inst.weights);
    const auto pool = inst.graph.truncation(inst.tree_depth);
    for (int rep = 0; rep < 10; ++rep) {
      const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      auto f = oracle::random_vector(rng, pool);
      if (rep % 2 == 0) {
        for (std::size_t i = 0; i < k; ++i) f = oracle::natural_shift(inst, f);
        if (rep % 4 == 0) oracle::accumulate(f, f.begin()->first, q("1/3"));
      }
      const bool expected = oracle::least_squares_in_range(inst, f, k);
      (expected ? in_range : out_of_range)++;
      EXPECT_EQ(range_predicate(m, oracle::to_model(inst, f), k), expected);
      EXPECT_EQ(range_predicate(fm, oracle::to_float(f), k), expected);
    }
  }
  EXPECT_GT(in_range, 20);
  EXPECT_GT(out_of_range, 20);
}

TEST(Shift, CyclicityOfTheRoot) {
  for (const char* eps : {"1/2", "9/10", "1/100"}) {
    const ExactModel m(loop_path(), example31_weights({1, 1, q(eps)}));
    EXPECT_EQ(cyclicity_check(m, node(0), 0), 1u);
    EXPECT_EQ(cyclicity_check(m, node(0), 40), 41u);
  }
  const FloatModel fm(loop_path(), half_weights());
  EXPECT_EQ(cyclicity_check(fm, node(0), 40), 41u);
}

TEST(Shift, WanderingClosureOfTheExample) {
  const ExactModel m(loop_path(), half_weights());
  for (std::size_t n : {1, 5, 20}) {
    const auto c = wandering_closure(m, n);
    EXPECT_EQ(c.dim, n + 1);
    EXPECT_EQ(c.ambient_dim, n + 2);
    EXPECT_EQ(c.codim(), 1u);
    ASSERT_EQ(c.complement_basis.size(), 1u);
    EXPECT_TRUE(c.span.orthogonal_to_span(c.complement_basis[0]));
  }
  const auto h = kernel_adjoint_basis(m, 2)[0];
  EXPECT_TRUE(inner(m, h, apply_shift(m, h)).is_zero());
}

TEST(ShiftProperties, WanderingOrthogonality) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    const auto inst = oracle::random_instance(rng, 3);
    const ExactModel m(inst.graph, inst.weights);
    const auto basis = kernel_adjoint_basis(m, inst.tree_depth);
    for (const auto& h : basis) {
      ExactVector it = h;
      for (std::size_t n = 1; n <= 8; ++n) {
        it = apply_shift(m, it);
        for (const auto& h2 : basis) EXPECT_TRUE(inner(m, h2, it).is_zero());
      }
    }
  }
}

TEST(Shift, ShimorinSectionOfAnIsometry) {
  const OneCircuitGraph g(TreeGenerator::kary(2), 1);
  // Every child sum is 1: the root feeds w_1 and two tree children, w_1 feeds the root.
  std::map<VertexId, Rational> entries{{VertexId::root(), 1}, {VertexId::circuit(1), q("1/3")}, {VertexId::tree({0}), q("1/3")},
                                       {VertexId::tree({1}), q("1/3")}};
  const auto w = WeightSystem::table(entries, q("1/2"));
  const auto r = shimorin_inequality_check(g, w, 4);
  EXPECT_TRUE(r.satisfied);
  EXPECT_LE(r.max_eigenvalue, 1e-12);
  for (const auto& [v, d] : r.diagonal) EXPECT_EQ(d, 0) << v.to_string();
  EXPECT_FALSE(r.excluded.empty());
}

TEST(Shift, ShimorinSectionOfTheExample) {
  const auto r = shimorin_inequality_check(loop_path(), half_weights(), 10);
  EXPECT_FALSE(r.satisfied);
  EXPECT_GT(r.max_eigenvalue, 0);
  bool found = false;
  for (const auto& [v, d] : r.diagonal)
    if (v == node(1)) {
      EXPECT_EQ(d, q("2/3"));
      found = true;
    }
  EXPECT_TRUE(found);
  EXPECT_EQ(r.excluded, std::vector<VertexId>{node(10)});
}
