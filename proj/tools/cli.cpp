#include "cli.hpp"

#include <gshift/config.hpp>
#include <gshift/lab.hpp>
#include <gshift/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace gshift::cli {

namespace {

struct Instance {
  OneCircuitGraph graph;
  WeightConfig weights;
};

Instance load_instance(const std::string& graph_path, const std::string& weights_path) {
  const std::string weights_text = read_text_file(weights_path);
  if (graph_path.empty()) {
    OneCircuitGraph g = example31_graph();
    WeightConfig w = parse_weight_config(weights_text, g);
    if (!w.example31) throw InputError("--graph is required unless the weight family is example31");
    return {std::move(g), std::move(w)};
  }
  OneCircuitGraph g = parse_graph_config(read_text_file(graph_path));
  WeightConfig w = parse_weight_config(weights_text, g);
  return {std::move(g), std::move(w)};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << content;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

std::vector<std::size_t> parse_depths(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& s : split(text)) {
    const Rational q = parse_rational(s);
    if (q.get_den() != 1 || q < 2) throw InputError("probe depths must be integers >= 2 (got " + s + ")");
    out.push_back(q.get_num().get_ui());
  }
  if (out.empty()) throw InputError("empty depth list");
  return out;
}

SeriesPolicy policy_from(std::size_t m_max) {
  SeriesPolicy p;
  p.m_max = m_max;
  if (m_max < 2) throw InputError("--m-max must be at least 2");
  return p;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted shifts on one-circuit directed graphs"};
  app.require_subcommand(1);

  // check
  std::string graph_path, weights_path, mode_text = "rational", out_path, csv_path;
  std::size_t depth = 50, m_max = 10000;
  bool strict = false, as_json = false;
  auto* check = app.add_subcommand("check", "Classify an instance: defects, analyticity, WSP, hyper-range");
  check->add_option("--graph", graph_path, "Graph config (JSON); optional for the example31 family");
  check->add_option("--weights", weights_path, "Weight config (JSON)")->required();
  check->add_option("--depth", depth, "Truncation depth")->check(CLI::PositiveNumber);
  check->add_option("--mode", mode_text, "Arithmetic mode: rational or float");
  check->add_option("--m-max", m_max, "Series terms inspected at most");
  check->add_flag("--strict", strict, "Exit with code 3 on any Inconclusive verdict");
  check->add_flag("--json", as_json, "Print the JSON report instead of text");
  check->add_option("--out", out_path, "Write the JSON report to this file");
  check->add_option("--defects-csv", csv_path, "Write the defect table (vertex,D_1,D_2,D_3,expansive_flag)");

  // sweep
  std::string a_text = "1", b_text = "1", grid_text = "1/10,2/10,3/10,4/10,5/10,6/10,7/10,8/10,9/10", plot_prefix;
  std::size_t sweep_depth = 50;
  unsigned threads = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate the example31 family over a grid of epsilon values");
  sweep_cmd->add_option("--a", a_text, "Parameter a (exact rational)");
  sweep_cmd->add_option("--b", b_text, "Parameter b (exact rational)");
  sweep_cmd->add_option("--grid", grid_text, "Comma-separated epsilon values");
  sweep_cmd->add_option("--depth", sweep_depth, "Truncation depth for the D_3 column")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--m-max", m_max, "Series terms inspected at most");
  sweep_cmd->add_option("--threads", threads, "Worker threads");
  sweep_cmd->add_flag("--strict", strict, "Exit with code 3 on any Inconclusive verdict");
  sweep_cmd->add_option("--out", out_path, "CSV output file (default: stdout)");
  sweep_cmd->add_option("--plot-data", plot_prefix, "Also write PREFIX_K.dat and PREFIX_bound.dat");

  // probe
  std::string depths_text = "8,16,32,64";
  std::size_t probe_m = 3;
  auto* probe = app.add_subcommand("probe", "Wandering-closure codimension across truncation depths");
  probe->add_option("--graph", graph_path, "Graph config (JSON); optional for the example31 family");
  probe->add_option("--weights", weights_path, "Weight config (JSON)")->required();
  probe->add_option("--depths", depths_text, "Comma-separated depths (default 8,16,32,64)");
  probe->add_option("--m", probe_m, "Concavity order")->check(CLI::PositiveNumber);
  probe->add_option("--mode", mode_text, "Arithmetic mode: rational or float");
  probe->add_option("--m-max", m_max, "Series terms inspected at most");
  probe->add_flag("--strict", strict, "Exit with code 3 on any Inconclusive verdict");
  probe->add_option("--out", out_path, "Write the JSON table to this file");

  // crossover
  std::string lo_text = "1/2", hi_text = "9/10", tol_text = "1e-10";
  auto* crossover = app.add_subcommand("crossover", "Bracket the epsilon where the WSP verdict flips");
  crossover->add_option("--a", a_text, "Parameter a");
  crossover->add_option("--b", b_text, "Parameter b");
  crossover->add_option("--lo", lo_text, "Lower bracket end");
  crossover->add_option("--hi", hi_text, "Upper bracket end");
  crossover->add_option("--tol", tol_text, "Interval width");
  crossover->add_option("--m-max", m_max, "Series terms inspected at most");
  crossover->add_flag("--strict", strict, "Exit with code 3 on any Inconclusive verdict");

  // remark32-search
  std::size_t l_max = 4, samples = 100000;
  std::uint64_t seed = 1;
  auto* search = app.add_subcommand("remark32-search", "Random search for circuit weights the remark rules out");
  search->add_option("--l-max", l_max, "Largest circuit length");
  search->add_option("--samples", samples, "Samples per circuit length");
  search->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) {
      const auto mode = parse_arithmetic_mode(mode_text);
      const Instance inst = load_instance(graph_path, weights_path);
      const CheckReport r = run_check(inst.graph, inst.weights.weights, depth, mode, policy_from(m_max));
      const std::string json = check_json(inst.graph, r);
      out << (as_json ? json : check_text(inst.graph, r));
      if (!out_path.empty()) write_file(out_path, json);
      if (!csv_path.empty()) write_file(csv_path, defect_csv(inst.graph, defect_table(inst.graph, inst.weights.weights, depth)));
      return strict && r.any_inconclusive() ? kInconclusive : kOk;
    }

    if (*sweep_cmd) {
      const Rational a = parse_rational(a_text), b = parse_rational(b_text);
      std::vector<Rational> grid;
      for (const auto& s : split(grid_text)) grid.push_back(parse_rational(s));
      if (grid.empty()) throw InputError("empty epsilon grid");
      SweepOptions opts;
      opts.depth = sweep_depth;
      opts.policy = policy_from(m_max);
      opts.threads = threads;
      const auto rows = sweep(a, b, grid, opts);
      const std::string csv = sweep_csv(rows);
      std::ostream& notes = out_path.empty() ? err : out;
      if (out_path.empty()) out << csv;
      else write_file(out_path, csv);
      if (!plot_prefix.empty()) {
        std::ostringstream k_dat, bound_dat;
        for (const auto& row : rows) {
          if (!row.admissible) continue;
          k_dat << format_double(row.epsilon.get_d()) << " " << format_double(row.K.get_d()) << "\n";
          bound_dat << format_double(row.epsilon.get_d()) << " " << format_double(row.wsp_bound) << "\n";
        }
        write_file(plot_prefix + "_K.dat", k_dat.str());
        write_file(plot_prefix + "_bound.dat", bound_dat.str());
      }
      for (const auto& row : rows)
        if (!row.admissible) notes << "inadmissible epsilon " << to_string(row.epsilon) << ": " << row.violation << "\n";
      for (const auto& [lo, hi] : wsp_flips(rows))
        notes << "wsp flip in [" << to_string(lo) << ", " << to_string(hi) << "]\n";
      const bool inconclusive = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) {
        return r.admissible && (r.wsp_series == WspStatus::Inconclusive || r.analytic == AnalyticStatus::Inconclusive);
      });
      return strict && inconclusive ? kInconclusive : kOk;
    }

    if (*probe) {
      const auto mode = parse_arithmetic_mode(mode_text);
      const Instance inst = load_instance(graph_path, weights_path);
      const auto report =
          dichotomy_probe(inst.graph, inst.weights.weights, probe_m, parse_depths(depths_text), mode, policy_from(m_max));
      out << probe_text(report);
      if (!out_path.empty()) write_file(out_path, probe_json(report));
      return strict && report.analytic == AnalyticStatus::Inconclusive ? kInconclusive : kOk;
    }

    if (*crossover) {
      const auto r = epsilon1_crossover(parse_rational(a_text), parse_rational(b_text), parse_rational(lo_text),
                                        parse_rational(hi_text), parse_rational(tol_text), policy_from(m_max));
      out << "interval [" << format_double(r.lo.get_d()) << ", " << format_double(r.hi.get_d()) << "]\n";
      out << "exact: lo = " << to_string(r.lo) << ", hi = " << to_string(r.hi) << "\n";
      out << "closed form: lo " << (r.closed_form_lo ? "holds" : "fails") << ", hi "
          << (r.closed_form_hi ? "holds" : "fails") << "\n";
      out << "series: lo " << to_string(r.series_lo) << ", hi " << to_string(r.series_hi) << "\n";
      out << "routes agree: " << (r.routes_agree ? "yes" : "no") << "\n";
      const bool inconclusive = r.series_lo == WspStatus::Inconclusive || r.series_hi == WspStatus::Inconclusive;
      return strict && inconclusive ? kInconclusive : kOk;
    }

    if (*search) {
      for (std::size_t l = 0; l <= l_max; ++l) {
        const auto s = remark32_search(l, samples, seed + l);
        out << "l=" << s.l << " samples=" << s.samples << " first_two_hold=" << s.first_two_hold
            << " feasible=" << s.feasible << "\n";
      }
      return kOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kUsage;
}

}  // namespace gshift::cli
