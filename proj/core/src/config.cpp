#include <gshift/config.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace gshift {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return obj.at(name);
}

Rational rational_field(const json& value, const std::string& what) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(std::to_string(value.get<long long>()));
  // Floating JSON numbers are read from their shortest decimal form.
  if (value.is_number()) return parse_rational(value.dump());
  throw InputError(what + " must be a number or a numeric string");
}

std::int64_t integer_field(const json& value, const std::string& what) {
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_string()) {
    const Rational q = parse_rational(value.get<std::string>());
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  }
  throw InputError(what + " must be an integer");
}

}  // namespace

OneCircuitGraph parse_graph_config(std::string_view json_text) {
  const json cfg = parse_json(json_text);
  const json& tree = field(cfg, "tree");
  const std::string kind = field(tree, "kind").get<std::string>();
  std::int64_t l = 0;
  if (cfg.contains("circuit_length")) l = integer_field(cfg.at("circuit_length"), "circuit_length");
  if (l < 0) throw InputError("circuit_length must be non-negative");

  if (kind == "path") return OneCircuitGraph(TreeGenerator::path(), static_cast<std::size_t>(l));
  if (kind == "single") return OneCircuitGraph(TreeGenerator::single_vertex(), static_cast<std::size_t>(l));
  if (kind == "kary") {
    const auto k = integer_field(field(tree, "k"), "tree.k");
    if (k < 1) throw InputError("tree.k must be at least 1 (leafless tree)");
    return OneCircuitGraph(TreeGenerator::kary(static_cast<std::uint32_t>(k)), static_cast<std::size_t>(l));
  }
  if (kind == "table") {
    std::map<VertexId, std::int64_t> children;
    for (const auto& [key, value] : field(tree, "children").items())
      children.emplace(VertexId::parse(key), integer_field(value, "tree.children." + key));
    const std::int64_t dflt = tree.contains("default") ? integer_field(tree.at("default"), "tree.default") : 1;
    return OneCircuitGraph(TreeGenerator::table(std::move(children), dflt), static_cast<std::size_t>(l));
  }
  throw InputError("unknown tree kind '" + kind + "' (expected path, kary, table or single)");
}

WeightConfig parse_weight_config(std::string_view json_text, const OneCircuitGraph& graph) {
  const json cfg = parse_json(json_text);
  const std::string family = field(cfg, "family").get<std::string>();
  if (family == "example31") {
    Example31Params p{rational_field(field(cfg, "a"), "a"), rational_field(field(cfg, "b"), "b"),
                      rational_field(field(cfg, "epsilon"), "epsilon")};
    if (graph.circuit_length() != 0 || graph.tree().kind() != TreeGenerator::Kind::Path)
      throw InputError("the example31 family lives on the path tree with circuit_length 0");
    return {example31_weights(p), p};
  }
  if (family == "constant") return {WeightSystem::constant(rational_field(field(cfg, "sq"), "sq")), std::nullopt};
  if (family == "table") {
    std::map<VertexId, Rational> entries;
    if (cfg.contains("entries"))
      for (const auto& [key, value] : cfg.at("entries").items())
        entries.emplace(graph.parse_label(key), rational_field(value, "entries." + key));
    const Rational dflt = rational_field(field(cfg, "default_sq"), "default_sq");
    return {WeightSystem::table(std::move(entries), dflt), std::nullopt};
  }
  throw InputError("unknown weight family '" + family + "' (expected example31, table or constant)");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gshift
