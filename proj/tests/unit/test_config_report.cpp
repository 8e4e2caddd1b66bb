#include <gshift/config.hpp>
#include <gshift/report.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

using namespace gshift;

namespace {

Rational q(const char* text) { return parse_rational(text); }

CheckReport check_example(const char* eps, const char* a = "1") {
  const auto g = example31_graph();
  return run_check(g, example31_weights({q(a), 1, q(eps)}), 50, ArithmeticMode::Rational);
}

}  // namespace

TEST(Config, GraphKinds) {
  const auto path = parse_graph_config(R"({"tree": {"kind": "path"}, "circuit_length": 0})");
  EXPECT_EQ(path.tree().kind(), TreeGenerator::Kind::Path);
  const auto kary = parse_graph_config(R"({"tree": {"kind": "kary", "k": 3}, "circuit_length": 2})");
  EXPECT_EQ(kary.tree().arity(), 3u);
  EXPECT_EQ(kary.circuit_length(), 2u);
  const auto table = parse_graph_config(
      R"({"tree": {"kind": "table", "children": {"root": 2, "t0": 3}, "default": 1}, "circuit_length": 1})");
  EXPECT_EQ(table.children(VertexId::tree({0})).size(), 3u);
  EXPECT_EQ(table.children(VertexId::tree({1})).size(), 1u);
}

TEST(Config, MalformedGraphs) {
  EXPECT_THROW(parse_graph_config("{"), InputError);
  EXPECT_THROW(parse_graph_config(R"({"tree": {"kind": "ring"}, "circuit_length": 0})"), InputError);
  EXPECT_THROW(parse_graph_config(R"({"tree": {"kind": "path"}, "circuit_length": -1})"), InputError);
  EXPECT_THROW(parse_graph_config(R"({"tree": {"kind": "table", "children": {"root": -2}}, "circuit_length": 0})"),
               InputError);
}

TEST(Config, WeightFamilies) {
  const auto g = example31_graph();
  const auto ex = parse_weight_config(R"({"family": "example31", "a": "1", "b": "1", "epsilon": "1/2"})", g);
  ASSERT_TRUE(ex.example31.has_value());
  EXPECT_EQ(ex.weights.sq_weight(g.parse_label("1")), q("1/10"));
  const auto dec = parse_weight_config(R"({"family": "example31", "a": 10, "b": 1, "epsilon": 0.183})", g);
  EXPECT_EQ(dec.example31->epsilon, q("183/1000"));
  const auto table = parse_weight_config(R"({"family": "table", "entries": {"0": "1/2", "1": "1/2"}, "default_sq": "1"})", g);
  EXPECT_EQ(table.weights.sq_weight(g.parse_label("1")), q("1/2"));
  EXPECT_EQ(table.weights.sq_weight(g.parse_label("7")), 1);
  EXPECT_THROW(parse_weight_config(R"({"family": "example31", "a": "10", "b": "1", "epsilon": "1/2"})", g), InputError);
  EXPECT_THROW(parse_weight_config(R"({"family": "gaussian"})", g), InputError);
  const OneCircuitGraph binary(TreeGenerator::kary(2), 0);
  EXPECT_THROW(parse_weight_config(R"({"family": "example31", "a": "1", "b": "1", "epsilon": "1/2"})", binary),
               InputError);
}

TEST(Report, SummaryLines) {
  const auto half = check_summary_line(check_example("1/2"));
  EXPECT_NE(half.find("3-isometry: yes"), std::string::npos) << half;
  EXPECT_NE(half.find("analytic: yes"), std::string::npos) << half;
  EXPECT_NE(half.find("WSP: FAILS"), std::string::npos) << half;
  const auto ni = check_summary_line(check_example("0.183", "10"));
  EXPECT_NE(ni.find("norm-increasing: yes"), std::string::npos) << ni;
  EXPECT_NE(ni.find("WSP: holds"), std::string::npos) << ni;

  const OneCircuitGraph single(TreeGenerator::single_vertex(), 0);
  const auto loop = check_summary_line(run_check(single, WeightSystem::constant(1), 10, ArithmeticMode::Rational));
  EXPECT_NE(loop.find("analytic: no"), std::string::npos) << loop;
}

TEST(Report, CheckJsonIsWellFormed) {
  const auto g = example31_graph();
  const auto r = check_example("1/2");
  const auto j = nlohmann::json::parse(check_json(g, r));
  EXPECT_TRUE(j.is_object());
  EXPECT_EQ(check_json(g, r), check_json(g, check_example("1/2")));
}

TEST(Report, DefectCsv) {
  const auto g = example31_graph();
  const auto csv = defect_csv(g, defect_table(g, example31_weights({1, 1, q("1/2")}), 3));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "vertex,D_1,D_2,D_3,expansive_flag");
  std::size_t rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  EXPECT_EQ(rows, 4u);
}

TEST(Report, SweepCsv) {
  const auto csv = sweep_csv(sweep(10, 1, {q("0.183"), q("1/2")}));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "epsilon,K,wsp_bound,norm_Se0_sq,norm_increasing,wsp_closed_form,wsp_series,analytic,d3_max_abs");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("183/1000,", 0), 0u) << line;
  std::getline(in, line);
  EXPECT_NE(line.find("inadmissible"), std::string::npos) << line;
}

TEST(Report, ProbeJson) {
  const auto g = example31_graph();
  const auto r = dichotomy_probe(g, example31_weights({1, 1, q("1/2")}), 3, {4, 8});
  const auto j = nlohmann::json::parse(probe_json(r));
  EXPECT_TRUE(j.is_object());
  EXPECT_FALSE(probe_text(r).empty());
}
