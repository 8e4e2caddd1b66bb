#include <gshift/graph.hpp>

#include <algorithm>
#include <charconv>
#include <limits>

namespace gshift {

namespace {

std::uint32_t parse_index(std::string_view text, std::string_view whole) {
  std::uint32_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw InputError("malformed vertex id '" + std::string(whole) + "'");
  return value;
}

}  // namespace

// ---------------------------------------------------------------- VertexId

VertexId VertexId::circuit(std::uint32_t index) {
  if (index == 0) throw InputError("circuit vertices are numbered from 1");
  VertexId v;
  v.kind_ = Kind::Circuit;
  v.circuit_index_ = index;
  return v;
}

VertexId VertexId::tree(std::vector<std::uint32_t> path) {
  if (path.empty()) return root();
  VertexId v;
  v.kind_ = Kind::Tree;
  v.path_ = std::move(path);
  return v;
}

VertexId VertexId::tree_child(std::uint32_t index) const {
  if (is_circuit()) throw InputError("circuit vertex " + to_string() + " has no tree children");
  std::vector<std::uint32_t> p = path_;
  p.push_back(index);
  return tree(std::move(p));
}

std::string VertexId::to_string() const {
  switch (kind_) {
    case Kind::Root:
      return "root";
    case Kind::Circuit:
      return "w" + std::to_string(circuit_index_);
    case Kind::Tree: {
      std::string s = "t";
      for (std::size_t i = 0; i < path_.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(path_[i]);
      }
      return s;
    }
  }
  return {};
}

VertexId VertexId::parse(std::string_view text) {
  if (text == "root") return root();
  if (text.size() >= 2 && text.front() == 'w') return circuit(parse_index(text.substr(1), text));
  if (text.size() >= 2 && text.front() == 't') {
    std::vector<std::uint32_t> path;
    std::string_view rest = text.substr(1);
    while (true) {
      const auto dot = rest.find('.');
      path.push_back(parse_index(rest.substr(0, dot), text));
      if (dot == std::string_view::npos) break;
      rest = rest.substr(dot + 1);
    }
    return tree(std::move(path));
  }
  throw InputError("malformed vertex id '" + std::string(text) + "'");
}

std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ == VertexId::Kind::Circuit) return a.circuit_index_ <=> b.circuit_index_;
  return std::lexicographical_compare_three_way(a.path_.begin(), a.path_.end(), b.path_.begin(),
                                                b.path_.end());
}

std::size_t VertexIdHash::operator()(const VertexId& v) const noexcept {
  std::size_t h = static_cast<std::size_t>(v.kind()) * 0x9e3779b97f4a7c15ULL + v.circuit_index();
  for (auto x : v.path()) h = (h ^ x) * 0x100000001b3ULL + 0x9e3779b9;
  return h;
}

// ----------------------------------------------------------- TreeGenerator

TreeGenerator TreeGenerator::path() { return kary(1); }

TreeGenerator TreeGenerator::kary(std::uint32_t k) {
  if (k == 0) throw InputError("k-ary tree needs k >= 1 (leafless)");
  TreeGenerator t;
  t.kind_ = k == 1 ? Kind::Path : Kind::Kary;
  t.arity_ = k;
  t.default_ = k;
  return t;
}

TreeGenerator TreeGenerator::table(std::map<VertexId, std::int64_t> children, std::int64_t default_branching) {
  if (default_branching < 0) throw InputError("negative default branching");
  if (default_branching > std::numeric_limits<std::uint32_t>::max()) throw InputError("branching too large");
  TreeGenerator t;
  t.kind_ = Kind::Table;
  t.default_ = static_cast<std::uint32_t>(default_branching);
  for (const auto& [v, count] : children) {
    if (v.is_circuit()) throw InputError("tree table lists circuit vertex " + v.to_string());
    if (count < 0) throw InputError("negative branching for vertex " + v.to_string());
    if (count > std::numeric_limits<std::uint32_t>::max()) throw InputError("branching too large");
    t.table_[v] = static_cast<std::uint32_t>(count);
  }
  // Every listed vertex must exist in the tree it describes.
  for (const auto& [v, count] : t.table_) {
    VertexId prefix = VertexId::root();
    for (auto idx : v.path()) {
      if (idx >= t.branching(prefix))
        throw InputError("tree table lists " + v.to_string() + ", which is not a vertex of the tree");
      prefix = prefix.tree_child(idx);
    }
  }
  return t;
}

TreeGenerator TreeGenerator::single_vertex() { return table({{VertexId::root(), 0}}, 1); }

std::uint32_t TreeGenerator::branching(const VertexId& v) const {
  if (v.is_circuit()) throw InputError("branching is defined on tree vertices only");
  if (kind_ != Kind::Table) return arity_;
  if (auto it = table_.find(v); it != table_.end()) return it->second;
  return default_;
}

std::pair<std::size_t, std::uint32_t> TreeGenerator::uniform_branching() const {
  if (kind_ != Kind::Table) return {0, arity_};
  std::size_t depth = 0;
  for (const auto& [v, count] : table_) depth = std::max(depth, v.tree_depth() + 1);
  return {depth, default_};
}

// --------------------------------------------------------- OneCircuitGraph

OneCircuitGraph::OneCircuitGraph(TreeGenerator tree, std::size_t circuit_length)
    : tree_(std::move(tree)), l_(circuit_length) {
  if (circuit_length > std::numeric_limits<std::uint32_t>::max() / 2) throw InputError("circuit too long");
}

bool OneCircuitGraph::contains(const VertexId& v) const {
  switch (v.kind()) {
    case VertexId::Kind::Root:
      return true;
    case VertexId::Kind::Circuit:
      return v.circuit_index() >= 1 && v.circuit_index() <= l_;
    case VertexId::Kind::Tree: {
      VertexId prefix = VertexId::root();
      for (auto idx : v.path()) {
        if (idx >= tree_.branching(prefix)) return false;
        prefix = prefix.tree_child(idx);
      }
      return true;
    }
  }
  return false;
}

void OneCircuitGraph::require(const VertexId& v) const {
  if (!contains(v)) throw InputError("unknown vertex " + v.to_string());
}

VertexId OneCircuitGraph::parent(const VertexId& v) const {
  switch (v.kind()) {
    case VertexId::Kind::Root:
      return l_ == 0 ? VertexId::root() : VertexId::circuit(static_cast<std::uint32_t>(l_));
    case VertexId::Kind::Circuit:
      if (v.circuit_index() < 1 || v.circuit_index() > l_) require(v);
      return v.circuit_index() == 1 ? VertexId::root() : VertexId::circuit(v.circuit_index() - 1);
    case VertexId::Kind::Tree: {
      std::vector<std::uint32_t> p = v.path();
      const std::uint32_t last = p.back();
      p.pop_back();
      VertexId up = VertexId::tree(std::move(p));
      if (last >= tree_.branching(up)) require(v);
      return up;
    }
  }
  return {};
}

VertexId OneCircuitGraph::ancestor(const VertexId& v, std::size_t n) const {
  VertexId u = v;
  std::size_t remaining = n;
  while (remaining > 0) {
    if (u.is_tree()) {
      const std::size_t d = u.tree_depth();
      if (remaining < d) {
        std::vector<std::uint32_t> p(u.path().begin(), u.path().end() - static_cast<std::ptrdiff_t>(remaining));
        return VertexId::tree(std::move(p));
      }
      remaining -= d;
      u = VertexId::root();
      continue;
    }
    if (u.is_root()) {
      remaining %= l_ + 1;
      if (remaining == 0) break;
    }
    u = parent(u);
    --remaining;
  }
  return u;
}

std::vector<VertexId> OneCircuitGraph::children(const VertexId& v) const {
  std::vector<VertexId> out;
  if (v.is_circuit()) {
    const auto j = v.circuit_index();
    out.push_back(j < l_ ? VertexId::circuit(j + 1) : VertexId::root());
    return out;
  }
  if (v.is_root()) out.push_back(l_ == 0 ? VertexId::root() : VertexId::circuit(1));
  const std::uint32_t b = tree_.branching(v);
  if (b == 0 && v.is_tree()) throw LeafError("tree vertex " + v.to_string() + " is a leaf");
  out.reserve(out.size() + b);
  for (std::uint32_t i = 0; i < b; ++i) out.push_back(v.tree_child(i));
  return out;
}

VertexId OneCircuitGraph::circuit_vertex(std::size_t k) const {
  if (k == 0 || k > l_ + 1) throw InputError("circuit index out of range");
  return k == l_ + 1 ? VertexId::root() : VertexId::circuit(static_cast<std::uint32_t>(k));
}

std::size_t OneCircuitGraph::generation(const VertexId& v) const {
  switch (v.kind()) {
    case VertexId::Kind::Root:
      return 0;
    case VertexId::Kind::Circuit:
      return v.circuit_index();
    case VertexId::Kind::Tree:
      return v.tree_depth();
  }
  return 0;
}

std::vector<VertexId> OneCircuitGraph::tree_layer(std::size_t n) const {
  std::vector<VertexId> layer{VertexId::root()};
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<VertexId> next;
    for (const auto& u : layer) {
      const std::uint32_t b = tree_.branching(u);
      if (b == 0 && u.is_tree()) throw LeafError("tree vertex " + u.to_string() + " is a leaf");
      for (std::uint32_t i = 0; i < b; ++i) next.push_back(u.tree_child(i));
    }
    layer = std::move(next);
  }
  return layer;  // children of sorted parents in index order stay sorted
}

std::vector<VertexId> OneCircuitGraph::truncation(std::size_t depth) const {
  std::vector<VertexId> out{VertexId::root()};
  for (std::size_t j = 1; j <= std::min(depth, l_); ++j) out.push_back(VertexId::circuit(static_cast<std::uint32_t>(j)));
  std::vector<VertexId> layer{VertexId::root()};
  std::vector<VertexId> tree_part;
  for (std::size_t d = 1; d <= depth; ++d) {
    std::vector<VertexId> next;
    for (const auto& u : layer) {
      const std::uint32_t b = tree_.branching(u);
      if (b == 0 && u.is_tree()) throw LeafError("tree vertex " + u.to_string() + " is a leaf");
      for (std::uint32_t i = 0; i < b; ++i) next.push_back(u.tree_child(i));
    }
    tree_part.insert(tree_part.end(), next.begin(), next.end());
    layer = std::move(next);
    if (layer.empty()) break;
  }
  std::sort(tree_part.begin(), tree_part.end());
  out.insert(out.end(), tree_part.begin(), tree_part.end());
  return out;
}

std::size_t OneCircuitGraph::truncation_size(std::size_t depth, std::size_t cap) const {
  std::size_t n = 1 + std::min(depth, l_);
  std::vector<VertexId> layer{VertexId::root()};
  for (std::size_t d = 1; d <= depth && n <= cap && !layer.empty(); ++d) {
    std::vector<VertexId> next;
    for (const auto& u : layer) {
      const std::uint32_t b = tree_.branching(u);
      if (b == 0 && u.is_tree()) throw LeafError("tree vertex " + u.to_string() + " is a leaf");
      for (std::uint32_t i = 0; i < b && n + next.size() <= cap; ++i) next.push_back(u.tree_child(i));
    }
    n += next.size();
    layer = std::move(next);
  }
  return std::min(n, cap + 1);
}

VertexSet OneCircuitGraph::chi(const VertexSet& u, std::size_t n) const {
  for (const auto& v : u) require(v);
  VertexSet current = u;
  for (std::size_t i = 0; i < n; ++i) {
    VertexSet next;
    for (const auto& v : current)
      for (auto& c : children(v)) next.insert(std::move(c));
    current = std::move(next);
  }
  return current;
}

std::vector<GenerationLayer> OneCircuitGraph::generation_partition(std::size_t depth) const {
  std::vector<GenerationLayer> layers;
  const std::size_t cycle = l_ + 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    GenerationLayer layer;
    layer.generation = n;
    layer.cycle = (n - 1) / cycle;
    layer.branch = n - layer.cycle * cycle;
    if (layer.cycle == 0) layer.vertices.insert(circuit_vertex(layer.branch));
    for (auto& v : tree_layer(n)) layer.vertices.insert(std::move(v));
    if (!layer.vertices.empty()) layers.push_back(std::move(layer));
  }
  return layers;
}

std::string OneCircuitGraph::label(const VertexId& v) const {
  if (tree_.kind() == TreeGenerator::Kind::Path) {
    if (v.is_root()) return "0";
    if (v.is_tree()) return std::to_string(v.tree_depth());
  }
  return v.to_string();
}

VertexId OneCircuitGraph::parse_label(std::string_view text) const {
  if (tree_.kind() == TreeGenerator::Kind::Path && !text.empty() &&
      std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const auto n = parse_index(text, text);
    return VertexId::tree(std::vector<std::uint32_t>(n, 0));
  }
  VertexId v = VertexId::parse(text);
  require(v);
  return v;
}

}  // namespace gshift
