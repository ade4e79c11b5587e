#include "ksubdiv/ktree.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>

#include "ksubdiv/error.hpp"

namespace ksubdiv {

namespace {

BlockMask full_mask(int m) { return m == 64 ? ~BlockMask{0} : ((BlockMask{1} << m) - 1); }

bool by_size_then_value(BlockMask a, BlockMask b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

bool overlapping(BlockMask a, BlockMask b) {
  const BlockMask both = a & b;
  return both != 0 && both != a && both != b;
}

}  // namespace

int ground_size_for(int n, int k) {
  if (n < 3) throw InvalidArgument("n must be at least 3");
  if (k < 1) throw InvalidArgument("k must be at least 1");
  const long long m = static_cast<long long>(n - 1) * k + 1;
  if (m > kMaxGroundSet) {
    throw ResourceLimit("m = " + std::to_string(m) + " exceeds the supported ground set size " +
                        std::to_string(kMaxGroundSet));
  }
  return static_cast<int>(m);
}

NestedFamily::NestedFamily(int m, int k, std::vector<BlockMask> blocks)
    : m_(m), k_(k), blocks_(std::move(blocks)) {
  if (m < 1 || m > kMaxGroundSet) throw InvalidArgument("ground set size out of range");
  if (k < 1) throw InvalidArgument("k must be at least 1");
  for (auto b : blocks_) {
    const int size = std::popcount(b);
    if (b & ~full_mask(m)) throw InvalidArgument("block outside the ground set");
    if (size < 2 || size % k != 1 % k) {
      throw InvalidArgument("block " + block_to_string(b, m) + " is not a G-element for k = " +
                            std::to_string(k));
    }
  }
  std::sort(blocks_.begin(), blocks_.end(), by_size_then_value);
  if (std::adjacent_find(blocks_.begin(), blocks_.end()) != blocks_.end()) {
    throw InvalidArgument("repeated block in nested family");
  }
}

NestedFamily NestedFamily::from_partitions(int m, int k, std::span<const Partition> members) {
  std::vector<BlockMask> blocks;
  for (const auto& x : members) {
    const auto ns = x.non_singleton_blocks();
    if (ns.size() != 1 || x.ground_size() != m) {
      throw InvalidArgument(x.to_string() + " does not have exactly one non-singleton block");
    }
    blocks.push_back(ns.front());
  }
  return NestedFamily(m, k, std::move(blocks));
}

std::vector<Partition> NestedFamily::members() const {
  std::vector<Partition> out;
  for (auto b : blocks_) out.push_back(Partition::with_block(m_, b));
  return out;
}

bool NestedFamily::is_laminar() const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks_.size(); ++j) {
      if (overlapping(blocks_[i], blocks_[j])) return false;
    }
  }
  return true;
}

NestedFamily apply_permutation(const NestedFamily& n, const Permutation& pi) {
  if (!is_permutation(pi, n.ground_size())) throw InvalidArgument("not a permutation of {1..m}");
  std::vector<BlockMask> blocks;
  for (auto b : n.blocks()) blocks.push_back(apply_permutation(b, pi));
  return NestedFamily(n.ground_size(), n.modulus(), std::move(blocks));
}

KTree::KTree(int m, int k, std::vector<BlockMask> internal_leaf_sets) : m_(m), k_(k) {
  if (m < 1 || m > kMaxGroundSet) throw InvalidArgument("leaf count out of range");
  if (k < 1) throw InvalidArgument("k must be at least 1");
  const BlockMask all = full_mask(m);
  auto& sets = internal_leaf_sets;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i] == 0 || (sets[i] & ~all)) throw InvalidArgument("leaf set outside {1..m}");
    if (sets[i] == all) throw InvalidArgument("non-root vertex carries every leaf");
    for (std::size_t j = 0; j < i; ++j) {
      if (sets[i] == sets[j]) throw InvalidArgument("internal vertex with outdegree 1");
      if (overlapping(sets[i], sets[j])) throw NotNested("leaf sets overlap");
    }
  }

  // Parent of a set is the smallest strictly larger set containing it.
  sets.insert(sets.begin(), all);
  std::vector<std::vector<int>> children(sets.size());
  for (std::size_t i = 1; i < sets.size(); ++i) {
    int parent = 0;
    for (std::size_t j = 1; j < sets.size(); ++j) {
      if (j != i && (sets[i] & ~sets[j]) == 0 &&
          std::popcount(sets[j]) < std::popcount(sets[static_cast<std::size_t>(parent)])) {
        parent = static_cast<int>(j);
      }
    }
    children[static_cast<std::size_t>(parent)].push_back(static_cast<int>(i));
  }

  std::function<int(int)> emit = [&](int s) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({sets[static_cast<std::size_t>(s)], {}});
    auto kids = children[static_cast<std::size_t>(s)];
    std::sort(kids.begin(), kids.end(), [&](int a, int b) {
      return std::countr_zero(sets[static_cast<std::size_t>(a)]) <
             std::countr_zero(sets[static_cast<std::size_t>(b)]);
    });
    for (int c : kids) {
      const int child = emit(c);
      nodes_[static_cast<std::size_t>(id)].children.push_back(child);
    }
    return id;
  };
  emit(0);
  validate();
}

KTree KTree::star(int m, int k) { return KTree(m, k, {}); }

BlockMask KTree::direct_leaves(int node) const {
  BlockMask rest = nodes_.at(static_cast<std::size_t>(node)).leaves;
  for (int c : nodes_[static_cast<std::size_t>(node)].children) {
    rest &= ~nodes_[static_cast<std::size_t>(c)].leaves;
  }
  return rest;
}

int KTree::outdegree(int node) const {
  return static_cast<int>(nodes_.at(static_cast<std::size_t>(node)).children.size()) +
         std::popcount(direct_leaves(node));
}

void KTree::validate() const {
  for (int v = 0; v < static_cast<int>(nodes_.size()); ++v) {
    const int d = outdegree(v);
    if (d <= 1 || d % k_ != 1 % k_) {
      throw InvalidArgument("internal vertex " + block_to_string(nodes_[static_cast<std::size_t>(v)].leaves, m_) +
                            " has outdegree " + std::to_string(d) + ", not > 1 and ≡ 1 (mod " +
                            std::to_string(k_) + ")");
    }
  }
}

void KTree::write_newick(int node, std::string& out) const {
  // Internal children and direct leaves merged by least leaf.
  std::vector<std::pair<int, int>> items;  // (least leaf, child node or -leaf)
  for (int c : nodes_[static_cast<std::size_t>(node)].children) {
    items.emplace_back(std::countr_zero(nodes_[static_cast<std::size_t>(c)].leaves) + 1, c);
  }
  for (int leaf : mask_elements(direct_leaves(node))) items.emplace_back(leaf, -leaf);
  std::sort(items.begin(), items.end());
  out += '(';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    if (items[i].second < 0) {
      out += std::to_string(-items[i].second);
    } else {
      write_newick(items[i].second, out);
    }
  }
  out += ')';
}

std::string KTree::to_newick() const {
  std::string out;
  write_newick(0, out);
  return out + ";";
}

KTree KTree::parse_newick(std::string_view text, int k) {
  std::size_t pos = 0;
  std::vector<BlockMask> internal;
  BlockMask seen = 0;
  int largest = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> InvalidArgument {
    return InvalidArgument("newick: " + why + " at offset " + std::to_string(pos));
  };
  std::function<BlockMask()> group = [&]() -> BlockMask {
    skip();
    if (pos >= text.size()) throw fail("unexpected end");
    if (text[pos] != '(') {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw fail("expected a leaf or '('");
      const int leaf = std::stoi(std::string(text.substr(start, pos - start)));
      if (leaf < 1 || leaf > kMaxGroundSet) throw fail("leaf label out of range");
      const BlockMask bit = BlockMask{1} << (leaf - 1);
      if (seen & bit) throw fail("leaf " + std::to_string(leaf) + " repeated");
      seen |= bit;
      largest = std::max(largest, leaf);
      return bit;
    }
    ++pos;
    BlockMask mask = 0;
    for (;;) {
      mask |= group();
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      throw fail("expected ',' or ')'");
    }
    internal.push_back(mask);
    return mask;
  };
  skip();
  if (pos >= text.size() || text[pos] != '(') throw fail("tree must start with '('");
  group();
  skip();
  if (pos < text.size() && text[pos] == ';') ++pos;
  skip();
  if (pos != text.size()) throw fail("trailing characters");
  if (seen != full_mask(largest)) throw InvalidArgument("newick: leaves must be exactly 1..m");
  internal.pop_back();  // the root, emitted last
  return KTree(largest, k, std::move(internal));
}

NestedFamily tree_to_nested(const KTree& t) {
  std::vector<BlockMask> blocks;
  for (std::size_t i = 1; i < t.nodes().size(); ++i) blocks.push_back(t.nodes()[i].leaves);
  return NestedFamily(t.leaf_count(), t.modulus(), std::move(blocks));
}

KTree nested_to_tree(const NestedFamily& n) {
  if (!n.is_laminar()) throw NotNested("family is not nested: two blocks overlap");
  const BlockMask all = full_mask(n.ground_size());
  for (auto b : n.blocks()) {
    if (b == all) throw NotNested("the top element is not a vertex of the k-tree complex");
  }
  return KTree(n.ground_size(), n.modulus(), n.blocks());
}

KTree contract(const KTree& t, std::span<const BlockMask> edges) {
  auto blocks = tree_to_nested(t).blocks();
  for (auto e : edges) {
    auto it = std::find(blocks.begin(), blocks.end(), e);
    if (it == blocks.end()) {
      throw InvalidArgument("no internal edge above " + block_to_string(e, t.leaf_count()));
    }
    blocks.erase(it);
  }
  return KTree(t.leaf_count(), t.modulus(), std::move(blocks));
}

KTree apply_permutation(const KTree& t, const Permutation& pi) {
  return nested_to_tree(apply_permutation(tree_to_nested(t), pi));
}

bool KNestedness::antichain_ok(std::vector<int> antichain) {
  std::sort(antichain.begin(), antichain.end());
  auto it = memo_.find(antichain);
  if (it == memo_.end()) {
    const auto bounds = minimal_upper_bounds(p_.poset(), antichain);
    const bool ok = bounds.size() == 1 && !p_.in_g(bounds.front());
    it = memo_.emplace(antichain, ok).first;
  }
  if (!it->second) witness_ = antichain;
  return it->second;
}

bool KNestedness::is_nested(std::span<const int> family) {
  if (family.size() > 20) throw ResourceLimit("family too large for the antichain test");
  const std::uint32_t subsets = 1u << family.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<int> s;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (mask & (1u << i)) s.push_back(family[i]);
    }
    if (is_antichain(p_.poset(), s) && !antichain_ok(std::move(s))) return false;
  }
  return true;
}

bool KNestedness::can_extend(std::span<const int> nested, int x) {
  std::vector<int> incomparable;
  for (int y : nested) {
    if (y == x) return true;
    if (!p_.poset().comparable(x, y)) incomparable.push_back(y);
  }
  if (incomparable.size() > 20) throw ResourceLimit("family too large for the antichain test");
  const std::uint32_t subsets = 1u << incomparable.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    std::vector<int> s{x};
    for (std::size_t i = 0; i < incomparable.size(); ++i) {
      if (mask & (1u << i)) s.push_back(incomparable[i]);
    }
    if (is_antichain(p_.poset(), s) && !antichain_ok(std::move(s))) return false;
  }
  return true;
}

bool is_k_nested(const PartitionPoset& p, std::span<const Partition> family) {
  std::vector<int> idx;
  for (const auto& x : family) {
    const int i = p.index_of(x);
    if (!p.in_g(i)) throw InvalidArgument(x.to_string() + " is not in G");
    idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  KNestedness test(p);
  return test.is_nested(idx);
}

KTreeComplex enumerate_ktree_complex(int n, int k, const Limits& limits) {
  const int m = ground_size_for(n, k);
  const auto p = enumerate_partitions(m, k, limits.max_elements);
  return enumerate_ktree_complex(p, n, limits);
}

KTreeComplex enumerate_ktree_complex(const PartitionPoset& p, int n, const Limits& limits) {
  const int k = p.modulus();
  const int m = ground_size_for(n, k);
  if (p.ground_size() != m) throw InvalidArgument("poset does not match (n, k)");

  KTreeComplex out{n, k, m, {}, {}};
  for (int g : p.g_elements()) {
    if (p.poset().max() != g) out.vertices.push_back(g);
  }
  std::vector<std::string> labels;
  for (int g : out.vertices) labels.push_back(p.element(g).to_string());

  // Grow faces in vertex order; only faces that could not be extended
  // further are handed to the closure.
  KNestedness test(p);
  std::vector<Face> faces;
  std::vector<int> face, elements;
  std::size_t total = 0;
  std::function<void(int)> grow = [&](int next) {
    bool extended = false;
    for (int v = next; v < static_cast<int>(out.vertices.size()); ++v) {
      const int x = out.vertices[static_cast<std::size_t>(v)];
      if (!test.can_extend(elements, x)) continue;
      if (++total > limits.max_faces) {
        throw ResourceLimit("k-tree complex exceeds the cap of " +
                            std::to_string(limits.max_faces) + " faces");
      }
      extended = true;
      face.push_back(v);
      elements.push_back(x);
      grow(v + 1);
      face.pop_back();
      elements.pop_back();
    }
    if (!extended && !face.empty()) faces.push_back(face);
  };
  grow(0);
  out.complex = SimplicialComplex::from_facets(std::move(labels), std::move(faces), limits.max_faces);
  return out;
}

}  // namespace ksubdiv
