#ifndef GSHIFT_CONFIG_HPP
#define GSHIFT_CONFIG_HPP

#include <gshift/graph.hpp>
#include <gshift/weights.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace gshift {

/// Graph config:
///   {"tree": {"kind": "path"}, "circuit_length": 0}
///   {"tree": {"kind": "kary", "k": 2}, "circuit_length": 2}
///   {"tree": {"kind": "table", "children": {"root": 2, "t0": 1}, "default": 1}, "circuit_length": 1}
///   {"tree": {"kind": "single"}, "circuit_length": 0}
OneCircuitGraph parse_graph_config(std::string_view json_text);

struct WeightConfig {
  WeightSystem weights;
  /// Set for the "example31" family.
  std::optional<Example31Params> example31;
};

/// Weight config:
///   {"family": "example31", "a": "1", "b": "1", "epsilon": "1/2"}
///   {"family": "table", "entries": {"root": "1/2", "t0": "1/2"}, "default_sq": "1"}
///   {"family": "constant", "sq": "1"}
/// Numbers may be JSON numbers or strings ("p/q", decimals read exactly).
/// Table keys use the graph's labels ("0", "1", ... on path trees) or the
/// canonical form ("root", "w1", "t0.1").
WeightConfig parse_weight_config(std::string_view json_text, const OneCircuitGraph& graph);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace gshift

#endif
