#ifndef GSHIFT_GRAPH_HPP
#define GSHIFT_GRAPH_HPP

#include <gshift/rational.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gshift {

/// Canonical vertex label of a one-circuit graph: the root, a circuit vertex
/// w_j (1 <= j <= l), or a tree vertex addressed by its child-index path from
/// the root. Ordered Root < Circuit (by index) < Tree (lexicographic path).
class VertexId {
public:
  enum class Kind : std::uint8_t { Root = 0, Circuit = 1, Tree = 2 };

  VertexId() = default;
  static VertexId root() { return VertexId(); }
  static VertexId circuit(std::uint32_t index);
  static VertexId tree(std::vector<std::uint32_t> path);

  Kind kind() const { return kind_; }
  bool is_root() const { return kind_ == Kind::Root; }
  bool is_circuit() const { return kind_ == Kind::Circuit; }
  bool is_tree() const { return kind_ == Kind::Tree; }
  std::uint32_t circuit_index() const { return circuit_index_; }
  const std::vector<std::uint32_t>& path() const { return path_; }
  /// Depth in the rooted tree (0 for the root, undefined for circuit vertices).
  std::size_t tree_depth() const { return path_.size(); }

  /// Child of a tree vertex (or of the root) in the tree.
  VertexId tree_child(std::uint32_t index) const;

  /// "root", "w3" or "t0.2.1".
  std::string to_string() const;
  static VertexId parse(std::string_view text);

  friend bool operator==(const VertexId&, const VertexId&) = default;
  friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b);

private:
  Kind kind_ = Kind::Root;
  std::uint32_t circuit_index_ = 0;
  std::vector<std::uint32_t> path_;
};

struct VertexIdHash {
  std::size_t operator()(const VertexId& v) const noexcept;
};

using VertexSet = std::set<VertexId>;

/// Thrown when the lazily generated tree turns out to have a leaf.
class LeafError : public InputError {
public:
  using InputError::InputError;
};

/// Locally finite rooted tree described by its branching function.
class TreeGenerator {
public:
  enum class Kind { Path, Kary, Table };

  /// Every vertex has exactly one child.
  static TreeGenerator path();
  /// Every vertex has k children.
  static TreeGenerator kary(std::uint32_t k);
  /// Explicit child counts keyed by tree vertex ("root", "t0", "t0.1", ...);
  /// unlisted vertices get `default_branching` children.
  static TreeGenerator table(std::map<VertexId, std::int64_t> children, std::int64_t default_branching);
  /// Single-vertex tree (the root has no tree children).
  static TreeGenerator single_vertex();

  Kind kind() const { return kind_; }
  std::uint32_t arity() const { return arity_; }
  const std::map<VertexId, std::uint32_t>& table_entries() const { return table_; }
  std::uint32_t default_branching() const { return default_; }

  /// Number of tree children of a root/tree vertex.
  std::uint32_t branching(const VertexId& v) const;

  /// (d0, b): every tree vertex of depth >= d0 has exactly b children.
  std::pair<std::size_t, std::uint32_t> uniform_branching() const;

private:
  Kind kind_ = Kind::Path;
  std::uint32_t arity_ = 1;
  std::map<VertexId, std::uint32_t> table_;
  std::uint32_t default_ = 1;
};

/// One layer of the generation partition: Chi_G^k(root) when m == 0, or
/// Chi_T^{(l+1)m+k}(root) for m >= 1.
struct GenerationLayer {
  std::size_t branch = 1;  ///< k in 1..l+1
  std::size_t cycle = 0;   ///< m
  std::size_t generation = 0;
  VertexSet vertices;
};

/// One-circuit directed graph built from a rooted tree and a circuit
/// root -> w_1 -> ... -> w_l -> root (a loop at the root when l == 0).
/// Vertices are generated on demand; the graph itself is immutable.
class OneCircuitGraph {
public:
  OneCircuitGraph(TreeGenerator tree, std::size_t circuit_length);

  const TreeGenerator& tree() const { return tree_; }
  std::size_t circuit_length() const { return l_; }
  /// Length of the circuit through the root, l + 1.
  std::size_t cycle_length() const { return l_ + 1; }

  bool contains(const VertexId& v) const;
  /// Throws InputError for ids that are not vertices of this graph.
  void require(const VertexId& v) const;

  VertexId parent(const VertexId& v) const;
  /// parent applied n times.
  VertexId ancestor(const VertexId& v, std::size_t n) const;
  /// Children in F, sorted. Throws LeafError on a leaf of the tree.
  std::vector<VertexId> children(const VertexId& v) const;

  /// Circuit vertex w_k for k in 1..l+1, with w_{l+1} the root.
  VertexId circuit_vertex(std::size_t k) const;

  /// Minimal n with v in Chi^n({root}) (0 for the root).
  std::size_t generation(const VertexId& v) const;

  /// {root} together with every vertex of generation <= depth, sorted.
  std::vector<VertexId> truncation(std::size_t depth) const;

  /// Size of truncation(depth), or cap + 1 as soon as it is known to exceed cap.
  std::size_t truncation_size(std::size_t depth, std::size_t cap) const;

  /// Tree vertices of depth exactly n (Chi_T^n(root)), sorted.
  std::vector<VertexId> tree_layer(std::size_t n) const;

  /// Iterated children set Chi^n(U).
  VertexSet chi(const VertexSet& u, std::size_t n) const;

  /// Partition of the vertices reachable in 1..depth steps from the root
  /// into Chi_G^k(root) (k <= l+1) and Chi_T^{(l+1)m+k}(root) layers.
  /// Empty layers are omitted.
  std::vector<GenerationLayer> generation_partition(std::size_t depth) const;

  /// Display label: for path trees the integer depth ("0" is the root),
  /// otherwise the canonical form.
  std::string label(const VertexId& v) const;
  /// Inverse of label(); also accepts the canonical form.
  VertexId parse_label(std::string_view text) const;

private:
  TreeGenerator tree_;
  std::size_t l_;
};

}  // namespace gshift

#endif
