#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ksubdiv/poset.hpp"

namespace ksubdiv {

/// Bit i-1 set <=> element i is in the block.
using BlockMask = std::uint64_t;
inline constexpr int kMaxGroundSet = 64;

/// Set partition of {1..m}. Blocks are bitmasks ordered by least element,
/// so equal partitions are structurally equal.
class Partition {
 public:
  Partition() = default;
  /// Throws InvalidArgument unless the blocks are nonempty, disjoint and
  /// cover {1..m}.
  Partition(int m, std::vector<BlockMask> blocks);

  static Partition finest(int m);
  static Partition coarsest(int m);
  /// `block` plus singletons.
  static Partition with_block(int m, BlockMask block);
  static Partition from_blocks(int m, const std::vector<std::vector<int>>& blocks);
  /// Accepts "(123)4567" (m <= 9; unparenthesized digits are singletons),
  /// "(1,2,10)(3)..." and "[[1,2],[3]]". With m == 0 the ground set is the
  /// largest element mentioned.
  static Partition parse(std::string_view text, int m = 0);

  int ground_size() const { return m_; }
  const std::vector<BlockMask>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  /// Rank in the full partition lattice, m - #blocks.
  int rank() const { return m_ - block_count(); }
  std::vector<BlockMask> non_singleton_blocks() const;
  /// Block containing element e (1-based).
  BlockMask block_of(int e) const;

  /// Every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const;
  bool all_blocks_one_mod(int k) const;

  std::vector<std::vector<int>> block_lists() const;
  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;

 private:
  int m_ = 0;
  std::vector<BlockMask> blocks_;
};

}  // namespace ksubdiv

template <>
struct std::hash<ksubdiv::Partition> {
  std::size_t operator()(const ksubdiv::Partition& p) const noexcept {
    std::size_t h = static_cast<std::size_t>(p.ground_size());
    for (auto b : p.blocks()) h = h * 1000003u ^ std::hash<std::uint64_t>{}(b);
    return h;
  }
};

namespace ksubdiv {

/// Rank first, then block lists lexicographically.
bool canonical_less(const Partition& a, const Partition& b);

std::vector<int> mask_elements(BlockMask mask);
BlockMask mask_of(std::span<const int> elements);
std::string block_to_string(BlockMask mask, int m);

/// Finest common coarsening.
Partition partition_join(const Partition& a, const Partition& b);

/// images[i-1] = pi(i).
using Permutation = std::vector<int>;

Partition apply_permutation(const Partition& x, const Permutation& pi);
BlockMask apply_permutation(BlockMask block, const Permutation& pi);
bool is_permutation(const Permutation& pi, int m);
Permutation identity_permutation(int m);
Permutation transposition(int m, int a, int b);
/// All m! permutations in lexicographic order.
std::vector<Permutation> all_permutations(int m);
/// `count` uniformly drawn permutations from a seeded generator.
std::vector<Permutation> sample_permutations(int m, std::size_t count, std::uint64_t seed);

enum class PosetKind { Full, Restricted };

/// Π_m (k = 1) or Π^(k)_m ordered by refinement.
///
/// Elements are in canonical order: by rank, then by block lists. 0̂ is
/// always present and designated as minimum; 1̂ is designated as maximum
/// when m ≡ 1 (mod k).
class PartitionPoset {
 public:
  PartitionPoset(int m, int k, std::vector<Partition> elements);

  PosetKind kind() const { return k_ == 1 ? PosetKind::Full : PosetKind::Restricted; }
  int ground_size() const { return m_; }
  int modulus() const { return k_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<Partition>& elements() const { return elements_; }
  const Partition& element(int i) const { return elements_.at(i); }
  const Poset& poset() const { return poset_; }

  std::optional<int> find(const Partition& x) const;
  /// Throws InvalidArgument if x is not an element.
  int index_of(const Partition& x) const;

  /// Elements with exactly one non-singleton block (the set G, 1̂ included
  /// when present).
  const Bits& g_mask() const { return g_mask_; }
  bool in_g(int i) const { return g_mask_[i]; }
  std::vector<int> g_elements() const;

 private:
  int m_;
  int k_;
  std::vector<Partition> elements_;
  std::unordered_map<Partition, int> index_;
  Poset poset_;
  Bits g_mask_;
};

inline constexpr std::size_t kDefaultEnumerationCap = 100000;

/// All partitions of {1..m} whose block sizes are ≡ 1 (mod k). Throws
/// InvalidArgument for m < 1 or k < 1 and ResourceLimit for m > 64 or more
/// than `cap` elements.
PartitionPoset enumerate_partitions(int m, int k, std::size_t cap = kDefaultEnumerationCap);

/// The set of minimal upper bounds in the poset (∨^k on Π^(k)_m).
std::vector<Partition> k_minimal_upper_bounds(const PartitionPoset& p,
                                              std::span<const Partition> s);
std::vector<int> k_minimal_upper_bounds(const PartitionPoset& p, std::span<const int> s);

/// Partitions with exactly one non-singleton block (0̂ excluded).
std::vector<Partition> building_set_I(int m);
/// Elements of building_set_I(m) whose rank is divisible by k.
std::vector<Partition> g_set(int m, int k);

/// One single-block partition per non-singleton block of x.
std::vector<Partition> factors_I(const Partition& x);
/// Maxima of G below x, computed in the poset.
std::vector<Partition> factors_k(const PartitionPoset& p, const Partition& x);
std::vector<int> factors_k(const PartitionPoset& p, int x);
/// Union of factors_k over the chain (proper-part elements only).
std::vector<Partition> factors_k_of_chain(const PartitionPoset& p, std::span<const Partition> chain);
std::vector<int> factors_k_of_chain(const PartitionPoset& p, std::span<const int> chain);

struct PropertyCheck {
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::string witness;
};

/// factors_k(x) == factors_I(x) for every element.
PropertyCheck check_factor_lemma(const PartitionPoset& p);
/// For a, b in G with non-singleton blocks A, B: A ∩ B = ∅ iff ∨^k{a,b} is a
/// single element outside G.
PropertyCheck check_disjointness_lemma(const PartitionPoset& p);

}  // namespace ksubdiv

