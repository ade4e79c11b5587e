#include "ksubdiv/poset.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "ksubdiv/error.hpp"
#include "ksubdiv/simplicial.hpp"

namespace ksubdiv {

namespace {

void check_index(const Poset& p, int x) {
  if (x < 0 || x >= p.size()) {
    throw InvalidArgument("element index " + std::to_string(x) + " out of range");
  }
}

}  // namespace

Poset Poset::from_covers(std::vector<std::string> labels,
                         std::span<const std::pair<int, int>> covers,
                         std::optional<int> min, std::optional<int> max) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<int>> succ(n);
  std::vector<int> indegree(n, 0);
  for (auto [a, b] : covers) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw InvalidArgument("cover relation refers to a missing element");
    }
    if (a == b) {
      throw CycleDetected("cover (" + std::to_string(a) + "," + std::to_string(a) + ") is a loop");
    }
    succ[a].push_back(b);
    ++indegree[b];
  }

  // Kahn's algorithm; elements left over sit on a cycle.
  std::vector<int> order;
  order.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) order.push_back(i);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int b : succ[order[head]]) {
      if (--indegree[b] == 0) order.push_back(b);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    for (int i = 0; i < n; ++i) {
      if (indegree[i] > 0) {
        throw CycleDetected("cover relation has a cycle through element " + std::to_string(i));
      }
    }
  }

  Poset p;
  p.labels_ = std::move(labels);
  p.up_.assign(n, Bits(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int a = *it;
    p.up_[a].set(a);
    for (int b : succ[a]) p.up_[a] |= p.up_[b];
  }
  p.min_ = min;
  p.max_ = max;
  p.finish();
  return p;
}

Poset Poset::from_relation(std::vector<std::string> labels,
                           const std::function<bool(int, int)>& leq,
                           std::optional<int> min, std::optional<int> max) {
  const int n = static_cast<int>(labels.size());
  Poset p;
  p.labels_ = std::move(labels);
  p.up_.assign(n, Bits(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b || leq(a, b)) p.up_[a].set(b);
    }
  }
  for (int a = 0; a < n; ++a) {
    if (!leq(a, a)) throw InvalidArgument("relation is not reflexive at " + std::to_string(a));
    for (auto b = p.up_[a].find_first(); b != Bits::npos; b = p.up_[a].find_next(b)) {
      const int bi = static_cast<int>(b);
      if (bi != a && p.up_[bi][a]) {
        throw InvalidArgument("relation is not antisymmetric at " + std::to_string(a) + "," +
                              std::to_string(bi));
      }
      if (!p.up_[bi].is_subset_of(p.up_[a])) {
        throw InvalidArgument("relation is not transitive through " + std::to_string(bi));
      }
    }
  }
  p.min_ = min;
  p.max_ = max;
  p.finish();
  return p;
}

void Poset::finish() {
  const int n = size();
  down_.assign(n, Bits(n));
  for (int a = 0; a < n; ++a) {
    for (auto b = up_[a].find_first(); b != Bits::npos; b = up_[a].find_next(b)) {
      down_[b].set(a);
    }
  }

  topo_.resize(n);
  std::iota(topo_.begin(), topo_.end(), 0);
  std::vector<std::size_t> down_size(n);
  for (int a = 0; a < n; ++a) down_size[a] = down_[a].count();
  std::stable_sort(topo_.begin(), topo_.end(),
                   [&](int a, int b) { return down_size[a] < down_size[b]; });

  // Covers: walk the strict up-set in topological order and keep the
  // elements not above an already kept one.
  upper_covers_.assign(n, {});
  lower_covers_.assign(n, {});
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[topo_[i]] = i;
  for (int a = 0; a < n; ++a) {
    std::vector<int> above;
    for (auto b = up_[a].find_first(); b != Bits::npos; b = up_[a].find_next(b)) {
      if (static_cast<int>(b) != a) above.push_back(static_cast<int>(b));
    }
    std::sort(above.begin(), above.end(),
              [&](int x, int y) { return position[x] < position[y]; });
    for (int b : above) {
      bool is_cover = true;
      for (int c : upper_covers_[a]) {
        if (up_[c][b]) {
          is_cover = false;
          break;
        }
      }
      if (is_cover) upper_covers_[a].push_back(b);
    }
    std::sort(upper_covers_[a].begin(), upper_covers_[a].end());
    for (int b : upper_covers_[a]) lower_covers_[b].push_back(a);
  }

  height_.assign(n, 0);
  for (int a : topo_) {
    for (int b : upper_covers_[a]) height_[b] = std::max(height_[b], height_[a] + 1);
  }

  if (min_) {
    check_index(*this, *min_);
    if (down_[*min_].count() != 1 || up_[*min_].count() != static_cast<std::size_t>(n)) {
      throw InvalidArgument("designated minimum is not below every element");
    }
  }
  if (max_) {
    check_index(*this, *max_);
    if (down_[*max_].count() != static_cast<std::size_t>(n)) {
      throw InvalidArgument("designated maximum is not above every element");
    }
  }
}

std::vector<std::pair<int, int>> Poset::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a) {
    for (int b : upper_covers_[a]) out.emplace_back(a, b);
  }
  return out;
}

std::vector<int> Poset::proper_part() const {
  std::vector<int> out;
  for (int a = 0; a < size(); ++a) {
    if ((min_ && *min_ == a) || (max_ && *max_ == a)) continue;
    out.push_back(a);
  }
  return out;
}

Bits Poset::full_set() const {
  Bits b(labels_.size());
  b.set();
  return b;
}

Poset build_poset(std::vector<std::string> labels, std::span<const std::pair<int, int>> covers,
                  std::optional<int> min, std::optional<int> max) {
  return Poset::from_covers(std::move(labels), covers, min, max);
}

bool is_chain(const Poset& p, std::span<const int> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (elements[i] == elements[j] || !p.comparable(elements[i], elements[j])) return false;
    }
  }
  return true;
}

bool is_antichain(const Poset& p, std::span<const int> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (p.comparable(elements[i], elements[j])) return false;
    }
  }
  return true;
}

std::vector<int> minimal_elements(const Poset& p, const Bits& subset) {
  std::vector<int> out;
  for (auto x = subset.find_first(); x != Bits::npos; x = subset.find_next(x)) {
    if ((p.down_set(static_cast<int>(x)) & subset).count() == 1) out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<int> maximal_elements(const Poset& p, const Bits& subset) {
  std::vector<int> out;
  for (auto x = subset.find_first(); x != Bits::npos; x = subset.find_next(x)) {
    if ((p.up_set(static_cast<int>(x)) & subset).count() == 1) out.push_back(static_cast<int>(x));
  }
  return out;
}

std::vector<int> minimal_upper_bounds(const Poset& p, std::span<const int> s) {
  if (s.empty()) throw InvalidArgument("minimal_upper_bounds of an empty set");
  Bits common = p.full_set();
  for (int x : s) {
    check_index(p, x);
    common &= p.up_set(x);
  }
  return minimal_elements(p, common);
}

std::vector<int> maximal_lower_bounds(const Poset& p, std::span<const int> s) {
  if (s.empty()) throw InvalidArgument("maximal_lower_bounds of an empty set");
  Bits common = p.full_set();
  for (int x : s) {
    check_index(p, x);
    common &= p.down_set(x);
  }
  return maximal_elements(p, common);
}

int join(const Poset& p, std::span<const int> s) {
  auto bounds = minimal_upper_bounds(p, s);
  if (bounds.empty()) throw NoUpperBound("no common upper bound");
  if (bounds.size() > 1) {
    throw NotUnique(std::to_string(bounds.size()) + " minimal upper bounds", std::move(bounds));
  }
  return bounds.front();
}

int meet(const Poset& p, std::span<const int> s) {
  auto bounds = maximal_lower_bounds(p, s);
  if (bounds.empty()) throw NoLowerBound("no common lower bound");
  if (bounds.size() > 1) {
    throw NotUnique(std::to_string(bounds.size()) + " maximal lower bounds", std::move(bounds));
  }
  return bounds.front();
}

std::vector<int> interval_elements(const Poset& p, int a, int b) {
  check_index(p, a);
  check_index(p, b);
  if (!p.leq(a, b)) {
    throw NotComparable("interval endpoints " + std::to_string(a) + " and " + std::to_string(b) +
                        " are not ordered");
  }
  const Bits between = p.up_set(a) & p.down_set(b);
  std::vector<int> out;
  for (auto x = between.find_first(); x != Bits::npos; x = between.find_next(x)) {
    out.push_back(static_cast<int>(x));
  }
  return out;
}

Poset interval(const Poset& p, int a, int b) {
  const auto elems = interval_elements(p, a, b);
  const auto pos_a = std::find(elems.begin(), elems.end(), a) - elems.begin();
  const auto pos_b = std::find(elems.begin(), elems.end(), b) - elems.begin();
  return induced_subposet(p, elems, static_cast<int>(pos_a), static_cast<int>(pos_b));
}

Poset induced_subposet(const Poset& p, std::span<const int> elements, std::optional<int> min,
                       std::optional<int> max) {
  std::vector<std::string> labels;
  labels.reserve(elements.size());
  for (int x : elements) {
    check_index(p, x);
    labels.push_back(p.label(x));
  }
  std::vector<int> elems(elements.begin(), elements.end());
  return Poset::from_relation(
      std::move(labels), [&](int i, int j) { return p.leq(elems[i], elems[j]); }, min, max);
}

int product_index(std::span<const Poset> factors, std::span<const int> tuple) {
  int index = 0;
  for (std::size_t i = factors.size(); i-- > 0;) index = index * factors[i].size() + tuple[i];
  return index;
}

Poset product(std::span<const Poset> factors) {
  std::size_t total = 1;
  for (const auto& f : factors) total *= static_cast<std::size_t>(f.size());
  const int n = static_cast<int>(total);

  std::vector<std::vector<int>> tuples(n, std::vector<int>(factors.size()));
  for (int idx = 0; idx < n; ++idx) {
    int rest = idx;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      tuples[idx][i] = rest % factors[i].size();
      rest /= factors[i].size();
    }
  }

  std::vector<std::string> labels(n);
  for (int idx = 0; idx < n; ++idx) {
    std::string s = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) s += ",";
      s += factors[i].label(tuples[idx][i]);
    }
    labels[idx] = s + ")";
  }

  std::optional<int> min, max;
  const bool has_min = std::all_of(factors.begin(), factors.end(),
                                   [](const Poset& f) { return f.min().has_value(); });
  const bool has_max = std::all_of(factors.begin(), factors.end(),
                                   [](const Poset& f) { return f.max().has_value(); });
  if (has_min) {
    std::vector<int> t;
    for (const auto& f : factors) t.push_back(*f.min());
    min = product_index(factors, t);
  }
  if (has_max) {
    std::vector<int> t;
    for (const auto& f : factors) t.push_back(*f.max());
    max = product_index(factors, t);
  }

  return Poset::from_relation(
      std::move(labels),
      [&](int a, int b) {
        for (std::size_t i = 0; i < factors.size(); ++i) {
          if (!factors[i].leq(tuples[a][i], tuples[b][i])) return false;
        }
        return true;
      },
      min, max);
}

namespace {

struct PosetInvariant {
  std::size_t down, up, lower_covers, upper_covers;
  int height;
  auto operator<=>(const PosetInvariant&) const = default;
};

PosetInvariant invariant_of(const Poset& p, int x) {
  return {p.down_set(x).count(), p.up_set(x).count(), p.lower_covers(x).size(),
          p.upper_covers(x).size(), p.height(x)};
}

class PosetMatcher {
 public:
  PosetMatcher(const Poset& p, const Poset& q) : p_(p), q_(q) {
    const int n = p.size();
    map_.assign(n, -1);
    used_.assign(n, false);
    inv_q_.resize(n);
    for (int y = 0; y < n; ++y) inv_q_[y] = invariant_of(q, y);
    inv_p_.resize(n);
    for (int x = 0; x < n; ++x) inv_p_[x] = invariant_of(p, x);
  }

  bool assign(int x, int y) {
    if (map_[x] != -1) return map_[x] == y;
    if (used_[y] || !(inv_p_[x] == inv_q_[y]) || !consistent(x, y)) return false;
    map_[x] = y;
    used_[y] = true;
    mapped_.push_back(x);
    return true;
  }

  bool search(const std::vector<int>& order, std::size_t depth) {
    if (depth == order.size()) return true;
    const int x = order[depth];
    if (map_[x] != -1) return search(order, depth + 1);
    // Same index first, so an identity-like map is found without search.
    std::vector<int> candidates;
    if (x < q_.size()) candidates.push_back(x);
    for (int y = 0; y < q_.size(); ++y) {
      if (y != x) candidates.push_back(y);
    }
    for (int y : candidates) {
      if (used_[y] || !(inv_p_[x] == inv_q_[y]) || !consistent(x, y)) continue;
      map_[x] = y;
      used_[y] = true;
      mapped_.push_back(x);
      if (search(order, depth + 1)) return true;
      mapped_.pop_back();
      used_[y] = false;
      map_[x] = -1;
    }
    return false;
  }

  const std::vector<int>& map() const { return map_; }

 private:
  bool consistent(int x, int y) const {
    for (int u : mapped_) {
      const int v = map_[u];
      if (p_.leq(u, x) != q_.leq(v, y) || p_.leq(x, u) != q_.leq(y, v)) return false;
    }
    return true;
  }

  const Poset& p_;
  const Poset& q_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<int> mapped_;
  std::vector<PosetInvariant> inv_p_, inv_q_;
};

}  // namespace

std::optional<std::vector<int>> is_isomorphic(const Poset& p, const Poset& q,
                                              std::span<const std::pair<int, int>> fixed) {
  if (p.size() != q.size()) return std::nullopt;
  const int n = p.size();

  std::vector<PosetInvariant> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = invariant_of(p, i);
    b[i] = invariant_of(q, i);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return std::nullopt;

  PosetMatcher matcher(p, q);
  for (auto [x, y] : fixed) {
    check_index(p, x);
    check_index(q, y);
    if (!matcher.assign(x, y)) return std::nullopt;
  }
  if (!matcher.search(p.topological_order(), 0)) return std::nullopt;
  return matcher.map();
}

SimplicialComplex order_complex(const Poset& p, std::size_t max_faces) {
  const auto proper = p.proper_part();
  std::vector<int> vertex_of(p.size(), -1);
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < proper.size(); ++v) {
    vertex_of[proper[v]] = static_cast<int>(v);
    labels.push_back(p.label(proper[v]));
  }

  // Maximal chains of the proper part are saturated, so walk cover edges
  // from its minimal elements to its maximal ones.
  std::vector<Face> chains;
  std::vector<int> current;
  auto is_proper = [&](int x) { return vertex_of[x] >= 0; };
  std::function<void(int)> extend = [&](int x) {
    current.push_back(vertex_of[x]);
    bool extended = false;
    for (int y : p.upper_covers(x)) {
      if (!is_proper(y)) continue;
      extended = true;
      extend(y);
    }
    if (!extended) {
      chains.push_back(current);
      if (chains.size() > max_faces) throw ResourceLimit("order complex exceeds the face cap");
    }
    current.pop_back();
  };
  for (int x : proper) {
    const bool minimal = std::none_of(p.lower_covers(x).begin(), p.lower_covers(x).end(),
                                      [&](int y) { return is_proper(y); });
    if (minimal) extend(x);
  }
  return SimplicialComplex::from_facets(std::move(labels), std::move(chains), max_faces);
}

void seeded_shuffle(std::vector<int>& values, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = values.size(); i > 1; --i) {
    // Unbiased draw from [0, i) by rejection.
    const std::uint64_t bound = static_cast<std::uint64_t>(i);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(values[i - 1], values[r % bound]);
  }
}

std::vector<int> linear_extension(const Poset& p, std::span<const int> subset,
                                  ExtensionPolicy policy, std::uint64_t seed) {
  std::vector<int> items(subset.begin(), subset.end());
  for (int x : items) check_index(p, x);
  if (policy == ExtensionPolicy::RankThenCanonical) {
    std::stable_sort(items.begin(), items.end(), [&](int a, int b) {
      if (p.height(a) != p.height(b)) return p.height(a) < p.height(b);
      return a < b;
    });
    return items;
  }

  std::sort(items.begin(), items.end());
  std::vector<int> priority_order = items;
  seeded_shuffle(priority_order, seed);
  std::vector<int> priority(p.size(), 0);
  for (std::size_t i = 0; i < priority_order.size(); ++i) {
    priority[priority_order[i]] = static_cast<int>(i);
  }

  // Kahn's algorithm restricted to the subset, taking the available element
  // of smallest priority each time.
  Bits remaining = p.empty_set();
  for (int x : items) remaining.set(x);
  std::vector<int> out;
  out.reserve(items.size());
  while (out.size() < items.size()) {
    int best = -1;
    for (int x : items) {
      if (!remaining[x]) continue;
      if ((p.down_set(x) & remaining).count() != 1) continue;
      if (best == -1 || priority[x] < priority[best]) best = x;
    }
    out.push_back(best);
    remaining.reset(best);
  }
  return out;
}

bool is_linear_extension(const Poset& p, std::span<const int> sequence) {
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    for (std::size_t j = i + 1; j < sequence.size(); ++j) {
      if (sequence[i] == sequence[j] || p.less(sequence[j], sequence[i])) return false;
    }
  }
  return true;
}

}  // namespace ksubdiv
