#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace ksubdiv {

using Bits = boost::dynamic_bitset<std::uint64_t>;

class SimplicialComplex;

/// Finite poset on elements 0..size()-1 with opaque string labels.
///
/// The order is stored as one up-set and one down-set bitset per element,
/// so `leq` is a single bit lookup and bound computations are bitset
/// intersections. Posets are immutable once built.
class Poset {
 public:
  Poset() = default;

  /// Reflexive-transitive closure of `covers`; throws CycleDetected if the
  /// closure is not antisymmetric.
  static Poset from_covers(std::vector<std::string> labels,
                           std::span<const std::pair<int, int>> covers,
                           std::optional<int> min = std::nullopt,
                           std::optional<int> max = std::nullopt);

  /// Builds the poset from a full order predicate. The predicate is checked
  /// to be a partial order; violations throw InvalidArgument.
  static Poset from_relation(std::vector<std::string> labels,
                             const std::function<bool(int, int)>& leq,
                             std::optional<int> min = std::nullopt,
                             std::optional<int> max = std::nullopt);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool leq(int a, int b) const { return up_[a][b]; }
  bool less(int a, int b) const { return a != b && up_[a][b]; }
  bool comparable(int a, int b) const { return up_[a][b] || up_[b][a]; }

  /// {x : a <= x}
  const Bits& up_set(int a) const { return up_[a]; }
  /// {x : x <= a}
  const Bits& down_set(int a) const { return down_[a]; }

  std::optional<int> min() const { return min_; }
  std::optional<int> max() const { return max_; }

  const std::vector<int>& upper_covers(int a) const { return upper_covers_[a]; }
  const std::vector<int>& lower_covers(int a) const { return lower_covers_[a]; }
  std::vector<std::pair<int, int>> covers() const;

  /// A fixed linear extension (by down-set size, then index).
  const std::vector<int>& topological_order() const { return topo_; }
  /// Length of the longest chain from a minimal element up to `a`.
  int height(int a) const { return height_[a]; }

  /// All elements except the designated minimum and maximum.
  std::vector<int> proper_part() const;

  Bits empty_set() const { return Bits(labels_.size()); }
  Bits full_set() const;

 private:
  void finish();

  std::vector<std::string> labels_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
  std::vector<std::vector<int>> upper_covers_;
  std::vector<std::vector<int>> lower_covers_;
  std::vector<int> topo_;
  std::vector<int> height_;
  std::optional<int> min_;
  std::optional<int> max_;
};

/// Strictly increasing sequence of pairwise comparable elements.
using Chain = std::vector<int>;

Poset build_poset(std::vector<std::string> labels,
                  std::span<const std::pair<int, int>> covers,
                  std::optional<int> min = std::nullopt,
                  std::optional<int> max = std::nullopt);

bool is_chain(const Poset& p, std::span<const int> elements);
bool is_antichain(const Poset& p, std::span<const int> elements);

/// Minimal elements of a subset given as a bitset, in ascending index order.
std::vector<int> minimal_elements(const Poset& p, const Bits& subset);
std::vector<int> maximal_elements(const Poset& p, const Bits& subset);

std::vector<int> minimal_upper_bounds(const Poset& p, std::span<const int> s);
std::vector<int> maximal_lower_bounds(const Poset& p, std::span<const int> s);

/// Throws NoUpperBound or NotUnique (with the minimal upper bounds).
int join(const Poset& p, std::span<const int> s);
/// Throws NoLowerBound or NotUnique (with the maximal lower bounds).
int meet(const Poset& p, std::span<const int> s);

/// Elements of [a, b] in ascending index order; throws NotComparable.
std::vector<int> interval_elements(const Poset& p, int a, int b);
/// The interval [a, b] as a poset with a and b designated as min and max.
Poset interval(const Poset& p, int a, int b);
/// Induced order on `elements`; element i of the result is elements[i].
Poset induced_subposet(const Poset& p, std::span<const int> elements,
                       std::optional<int> min = std::nullopt,
                       std::optional<int> max = std::nullopt);

/// Componentwise order on tuples. Tuple (i_0, ..., i_{r-1}) has index
/// i_0 + s_0 * (i_1 + s_1 * (...)). The product of no posets is a point.
Poset product(std::span<const Poset> factors);
/// Index of a tuple in product(factors).
int product_index(std::span<const Poset> factors, std::span<const int> tuple);

/// Order isomorphism p -> q, respecting the pairs in `fixed` (p element,
/// q element). Returns the image of every element of p.
std::optional<std::vector<int>> is_isomorphic(
    const Poset& p, const Poset& q,
    std::span<const std::pair<int, int>> fixed = {});

/// Order complex of the proper part. Vertex v of the result is element
/// proper_part()[v]; vertex labels are the element labels.
SimplicialComplex order_complex(const Poset& p, std::size_t max_faces = 200000);

enum class ExtensionPolicy { RankThenCanonical, SeededRandom };

/// Total order on `subset` compatible with p. RankThenCanonical sorts by
/// height and then index; SeededRandom draws a random priority order from
/// `seed` and repairs it into a linear extension.
std::vector<int> linear_extension(const Poset& p, std::span<const int> subset,
                                  ExtensionPolicy policy = ExtensionPolicy::RankThenCanonical,
                                  std::uint64_t seed = 0);

bool is_linear_extension(const Poset& p, std::span<const int> sequence);

/// Fisher-Yates shuffle driven by mt19937_64; identical on every platform.
void seeded_shuffle(std::vector<int>& values, std::uint64_t seed);

}  // namespace ksubdiv
