#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ksubdiv/limits.hpp"
#include "ksubdiv/partition.hpp"
#include "ksubdiv/simplicial.hpp"

namespace ksubdiv {

/// A set of G-elements, each stored as its non-singleton block. Blocks are
/// sorted by size, then value. The constructor only checks that each block
/// is a proper subset of size ≡ 1 (mod k) and at least 2; nestedness is a
/// separate question (is_k_nested, nested_to_tree).
class NestedFamily {
 public:
  NestedFamily(int m, int k, std::vector<BlockMask> blocks);
  static NestedFamily from_partitions(int m, int k, std::span<const Partition> members);

  int ground_size() const { return m_; }
  int modulus() const { return k_; }
  const std::vector<BlockMask>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  std::vector<Partition> members() const;

  /// Blocks pairwise nested or disjoint.
  bool is_laminar() const;

  bool operator==(const NestedFamily&) const = default;

 private:
  int m_;
  int k_;
  std::vector<BlockMask> blocks_;
};

NestedFamily apply_permutation(const NestedFamily& n, const Permutation& pi);

/// Rooted tree with leaves 1..m and unlabelled internal vertices, every
/// internal outdegree > 1 and ≡ 1 (mod k).
///
/// Internal vertices are stored in preorder with node 0 the root; children
/// (internal and leaf alike) are ordered by their least leaf, so equal trees
/// are structurally equal.
class KTree {
 public:
  struct Node {
    BlockMask leaves = 0;
    std::vector<int> children;  // internal children, by least leaf
    bool operator==(const Node&) const = default;
  };

  /// Builds the canonical tree whose non-root internal vertices have the
  /// given leaf sets (assumed laminar, sizes validated by the caller).
  KTree(int m, int k, std::vector<BlockMask> internal_leaf_sets);

  static KTree star(int m, int k);
  /// "((1,2,3),4,5);" style, leaves as integers, no branch lengths.
  static KTree parse_newick(std::string_view text, int k);

  int leaf_count() const { return m_; }
  int modulus() const { return k_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  /// Internal children plus leaves attached directly to the node.
  int outdegree(int node) const;
  /// Leaves attached directly to the node.
  BlockMask direct_leaves(int node) const;
  std::string to_newick() const;

  bool operator==(const KTree&) const = default;

 private:
  void validate() const;
  void write_newick(int node, std::string& out) const;

  int m_;
  int k_;
  std::vector<Node> nodes_;
};

NestedFamily tree_to_nested(const KTree& t);
/// Throws NotNested if the blocks are not laminar or 1̂ is a member.
KTree nested_to_tree(const NestedFamily& n);
/// Contracts the internal edges above the internal vertices whose leaf sets
/// are listed. Throws InvalidArgument for an unknown edge.
KTree contract(const KTree& t, std::span<const BlockMask> edges);
KTree apply_permutation(const KTree& t, const Permutation& pi);

/// Memoized k-nestedness test inside a fixed Π^(k)_m: a set of G-elements
/// is k-nested if every antichain of size ≥ 2 has exactly one minimal upper
/// bound and that bound is not in G.
class KNestedness {
 public:
  explicit KNestedness(const PartitionPoset& p) : p_(p) {}

  /// Element indices of the poset.
  bool is_nested(std::span<const int> family);
  /// Assumes `nested` is k-nested; tests the antichains that contain x.
  bool can_extend(std::span<const int> nested, int x);
  /// The offending antichain of the last failed test.
  const std::vector<int>& witness() const { return witness_; }

 private:
  bool antichain_ok(std::vector<int> antichain);

  const PartitionPoset& p_;
  std::map<std::vector<int>, bool> memo_;
  std::vector<int> witness_;
};

/// Throws InvalidArgument if a member is not in the poset or not in G.
bool is_k_nested(const PartitionPoset& p, std::span<const Partition> family);

struct KTreeComplex {
  int n = 0;
  int k = 0;
  int m = 0;
  /// Poset indices of the vertices (G \ {1̂}), in canonical order.
  std::vector<int> vertices;
  SimplicialComplex complex;
};

/// T^k_n as the complex of k-nested subsets of G \ {1̂}; m = (n-1)k + 1.
KTreeComplex enumerate_ktree_complex(int n, int k, const Limits& limits = {});
KTreeComplex enumerate_ktree_complex(const PartitionPoset& p, int n, const Limits& limits = {});

/// m = (n-1)k + 1, validating n ≥ 3 and k ≥ 1.
int ground_size_for(int n, int k);

}  // namespace ksubdiv
