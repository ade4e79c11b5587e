#include "ksubdiv/partition.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <numeric>

#include <boost/pending/disjoint_sets.hpp>
#include "json.hpp"

#include "ksubdiv/error.hpp"

namespace ksubdiv {

namespace {

BlockMask full_mask(int m) { return m == 64 ? ~BlockMask{0} : ((BlockMask{1} << m) - 1); }

void check_ground_size(int m) {
  if (m < 1) throw InvalidArgument("ground set size must be positive");
  if (m > kMaxGroundSet) {
    throw ResourceLimit("ground set size " + std::to_string(m) + " exceeds " +
                        std::to_string(kMaxGroundSet));
  }
}

int lowest_element(BlockMask mask) { return std::countr_zero(mask) + 1; }

}  // namespace

std::vector<int> mask_elements(BlockMask mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(lowest_element(mask));
    mask &= mask - 1;
  }
  return out;
}

BlockMask mask_of(std::span<const int> elements) {
  BlockMask mask = 0;
  for (int e : elements) {
    if (e < 1 || e > kMaxGroundSet) throw InvalidArgument("element out of range");
    mask |= BlockMask{1} << (e - 1);
  }
  return mask;
}

std::string block_to_string(BlockMask mask, int m) {
  std::string s = "(";
  bool first = true;
  for (int e : mask_elements(mask)) {
    if (!first && m > 9) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + ")";
}

Partition::Partition(int m, std::vector<BlockMask> blocks) : m_(m), blocks_(std::move(blocks)) {
  check_ground_size(m);
  BlockMask seen = 0;
  for (auto b : blocks_) {
    if (b == 0) throw InvalidArgument("empty block");
    if (b & seen) throw InvalidArgument("blocks overlap");
    seen |= b;
  }
  if (seen != full_mask(m)) throw InvalidArgument("blocks do not cover {1.." + std::to_string(m) + "}");
  std::sort(blocks_.begin(), blocks_.end(),
            [](BlockMask a, BlockMask b) { return std::countr_zero(a) < std::countr_zero(b); });
}

Partition Partition::finest(int m) {
  check_ground_size(m);
  std::vector<BlockMask> blocks;
  for (int i = 0; i < m; ++i) blocks.push_back(BlockMask{1} << i);
  return Partition(m, std::move(blocks));
}

Partition Partition::coarsest(int m) {
  check_ground_size(m);
  return Partition(m, {full_mask(m)});
}

Partition Partition::with_block(int m, BlockMask block) {
  check_ground_size(m);
  if (block == 0 || (block & ~full_mask(m))) throw InvalidArgument("block outside the ground set");
  std::vector<BlockMask> blocks{block};
  for (int i = 0; i < m; ++i) {
    const BlockMask bit = BlockMask{1} << i;
    if (!(block & bit)) blocks.push_back(bit);
  }
  return Partition(m, std::move(blocks));
}

Partition Partition::from_blocks(int m, const std::vector<std::vector<int>>& blocks) {
  std::vector<BlockMask> masks;
  for (const auto& b : blocks) {
    for (int e : b) {
      if (e < 1 || e > m) throw InvalidArgument("element " + std::to_string(e) + " out of range");
    }
    const BlockMask mask = mask_of(b);
    if (static_cast<std::size_t>(std::popcount(mask)) != b.size()) {
      throw InvalidArgument("block repeats an element");
    }
    masks.push_back(mask);
  }
  return Partition(m, std::move(masks));
}

Partition Partition::parse(std::string_view text, int m) {
  std::vector<std::vector<int>> blocks;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw InvalidArgument("empty partition text");

  if (text[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
      blocks = j.get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed partition JSON: ") + e.what());
    }
  } else {
    const bool separated = text.find(',') != std::string_view::npos ||
                           text.find(' ') != std::string_view::npos;
    std::vector<int>* open = nullptr;
    std::string number;
    auto flush = [&]() {
      if (number.empty()) return;
      const int e = std::stoi(number);
      number.clear();
      if (open) {
        open->push_back(e);
      } else {
        blocks.push_back({e});
      }
    };
    for (char c : text) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        number += c;
        if (!separated) flush();
      } else if (c == '(') {
        flush();
        if (open) throw InvalidArgument("nested parentheses in partition text");
        blocks.emplace_back();
        open = &blocks.back();
      } else if (c == ')') {
        flush();
        if (!open) throw InvalidArgument("unbalanced ')' in partition text");
        if (open->empty()) throw InvalidArgument("empty block in partition text");
        open = nullptr;
      } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else {
        throw InvalidArgument(std::string("unexpected character '") + c + "' in partition text");
      }
    }
    flush();
    if (open) throw InvalidArgument("unbalanced '(' in partition text");
  }

  int largest = 0;
  BlockMask seen = 0;
  for (const auto& b : blocks) {
    for (int e : b) {
      if (e < 1 || e > kMaxGroundSet) throw InvalidArgument("element out of range");
      largest = std::max(largest, e);
      seen |= BlockMask{1} << (e - 1);
    }
  }
  if (m == 0) m = largest;
  if (largest > m) throw InvalidArgument("element exceeds the ground set size");
  check_ground_size(m);
  for (int e = 1; e <= m; ++e) {
    if (!(seen & (BlockMask{1} << (e - 1)))) blocks.push_back({e});
  }
  return from_blocks(m, blocks);
}

std::vector<BlockMask> Partition::non_singleton_blocks() const {
  std::vector<BlockMask> out;
  for (auto b : blocks_) {
    if (std::popcount(b) > 1) out.push_back(b);
  }
  return out;
}

BlockMask Partition::block_of(int e) const {
  const BlockMask bit = BlockMask{1} << (e - 1);
  for (auto b : blocks_) {
    if (b & bit) return b;
  }
  throw InvalidArgument("element " + std::to_string(e) + " not in the ground set");
}

bool Partition::refines(const Partition& coarser) const {
  if (m_ != coarser.m_ || block_count() < coarser.block_count()) return false;
  for (auto b : blocks_) {
    const BlockMask target = coarser.block_of(lowest_element(b));
    if (b & ~target) return false;
  }
  return true;
}

bool Partition::all_blocks_one_mod(int k) const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [k](BlockMask b) { return std::popcount(b) % k == 1 % k; });
}

std::vector<std::vector<int>> Partition::block_lists() const {
  std::vector<std::vector<int>> out;
  for (auto b : blocks_) out.push_back(mask_elements(b));
  return out;
}

std::string Partition::to_string() const {
  std::string s;
  for (auto b : blocks_) {
    if (m_ <= 9 && std::popcount(b) == 1) {
      s += std::to_string(lowest_element(b));
    } else {
      s += block_to_string(b, m_);
    }
  }
  return s;
}

bool canonical_less(const Partition& a, const Partition& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  return a.block_lists() < b.block_lists();
}

Partition partition_join(const Partition& a, const Partition& b) {
  if (a.ground_size() != b.ground_size()) throw InvalidArgument("ground sets differ");
  const int m = a.ground_size();
  std::vector<int> rank(m), parent(m);
  boost::disjoint_sets<int*, int*> sets(rank.data(), parent.data());
  for (int i = 0; i < m; ++i) sets.make_set(i);
  for (const auto* x : {&a, &b}) {
    for (auto block : x->blocks()) {
      const auto elems = mask_elements(block);
      for (std::size_t i = 1; i < elems.size(); ++i) sets.union_set(elems[0] - 1, elems[i] - 1);
    }
  }
  std::vector<BlockMask> by_root(m, 0);
  for (int i = 0; i < m; ++i) by_root[sets.find_set(i)] |= BlockMask{1} << i;
  std::vector<BlockMask> blocks;
  for (auto mask : by_root) {
    if (mask) blocks.push_back(mask);
  }
  return Partition(m, std::move(blocks));
}

bool is_permutation(const Permutation& pi, int m) {
  if (static_cast<int>(pi.size()) != m) return false;
  std::vector<bool> hit(m + 1, false);
  for (int x : pi) {
    if (x < 1 || x > m || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

BlockMask apply_permutation(BlockMask block, const Permutation& pi) {
  BlockMask out = 0;
  for (int e : mask_elements(block)) {
    if (e > static_cast<int>(pi.size())) throw InvalidArgument("permutation too short");
    out |= BlockMask{1} << (pi[e - 1] - 1);
  }
  return out;
}

Partition apply_permutation(const Partition& x, const Permutation& pi) {
  if (!is_permutation(pi, x.ground_size())) throw InvalidArgument("not a permutation of {1..m}");
  std::vector<BlockMask> blocks;
  for (auto b : x.blocks()) blocks.push_back(apply_permutation(b, pi));
  return Partition(x.ground_size(), std::move(blocks));
}

Permutation identity_permutation(int m) {
  Permutation pi(m);
  std::iota(pi.begin(), pi.end(), 1);
  return pi;
}

Permutation transposition(int m, int a, int b) {
  Permutation pi = identity_permutation(m);
  std::swap(pi.at(a - 1), pi.at(b - 1));
  return pi;
}

std::vector<Permutation> all_permutations(int m) {
  std::vector<Permutation> out;
  Permutation pi = identity_permutation(m);
  do {
    out.push_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

std::vector<Permutation> sample_permutations(int m, std::size_t count, std::uint64_t seed) {
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < count; ++i) {
    Permutation pi = identity_permutation(m);
    seeded_shuffle(pi, seed + 0x9e3779b97f4a7c15ULL * (i + 1));
    out.push_back(std::move(pi));
  }
  return out;
}

PartitionPoset::PartitionPoset(int m, int k, std::vector<Partition> elements)
    : m_(m), k_(k), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end(), canonical_less);
  for (int i = 0; i < size(); ++i) {
    if (elements_[i].ground_size() != m) throw InvalidArgument("mixed ground sets");
    if (!index_.emplace(elements_[i], i).second) throw InvalidArgument("duplicate partition");
  }

  // Per element: block index of every ground-set element, for O(#blocks)
  // refinement tests.
  std::vector<std::array<std::uint8_t, kMaxGroundSet>> block_index(size());
  for (int i = 0; i < size(); ++i) {
    const auto& blocks = elements_[i].blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (int e : mask_elements(blocks[b])) block_index[i][e - 1] = static_cast<std::uint8_t>(b);
    }
  }
  auto refines = [&](int a, int b) {
    if (a == b) return true;
    const auto& x = elements_[a];
    const auto& y = elements_[b];
    if (x.rank() >= y.rank()) return false;
    for (auto block : x.blocks()) {
      const BlockMask target = y.blocks()[block_index[b][lowest_element(block) - 1]];
      if (block & ~target) return false;
    }
    return true;
  };

  std::vector<std::string> labels;
  labels.reserve(elements_.size());
  for (const auto& x : elements_) labels.push_back(x.to_string());
  std::optional<int> lo = find(Partition::finest(m));
  std::optional<int> hi = find(Partition::coarsest(m));
  poset_ = Poset::from_relation(std::move(labels), refines, lo, hi);

  g_mask_ = poset_.empty_set();
  for (int i = 0; i < size(); ++i) {
    if (elements_[i].non_singleton_blocks().size() == 1) g_mask_.set(i);
  }
}

std::optional<int> PartitionPoset::find(const Partition& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int PartitionPoset::index_of(const Partition& x) const {
  auto i = find(x);
  if (!i) throw InvalidArgument("partition " + x.to_string() + " is not in the poset");
  return *i;
}

std::vector<int> PartitionPoset::g_elements() const {
  std::vector<int> out;
  for (auto i = g_mask_.find_first(); i != Bits::npos; i = g_mask_.find_next(i)) {
    out.push_back(static_cast<int>(i));
  }
  return out;
}

PartitionPoset enumerate_partitions(int m, int k, std::size_t cap) {
  check_ground_size(m);
  if (k < 1) throw InvalidArgument("modulus k must be positive");

  // Build blocks directly: the block of the least unplaced element takes
  // s - 1 further elements for every admissible size s.
  std::vector<Partition> out;
  std::vector<BlockMask> blocks;
  std::vector<int> rest;
  std::function<void(BlockMask)> place = [&](BlockMask remaining) {
    if (remaining == 0) {
      if (out.size() >= cap) {
        throw ResourceLimit("more than " + std::to_string(cap) + " partitions");
      }
      out.emplace_back(m, blocks);
      return;
    }
    const BlockMask lead = remaining & (~remaining + 1);
    const auto others = mask_elements(remaining & ~lead);
    const int available = static_cast<int>(others.size());
    std::function<void(int, int, BlockMask)> choose = [&](int start, int need, BlockMask block) {
      if (need == 0) {
        blocks.push_back(block);
        place(remaining & ~block);
        blocks.pop_back();
        return;
      }
      for (int i = start; i + need <= available; ++i) {
        choose(i + 1, need - 1, block | (BlockMask{1} << (others[i] - 1)));
      }
    };
    for (int size = 1; size <= available + 1; size += k) choose(0, size - 1, lead);
  };
  place(full_mask(m));
  return PartitionPoset(m, k, std::move(out));
}

std::vector<int> k_minimal_upper_bounds(const PartitionPoset& p, std::span<const int> s) {
  return minimal_upper_bounds(p.poset(), s);
}

std::vector<Partition> k_minimal_upper_bounds(const PartitionPoset& p,
                                              std::span<const Partition> s) {
  std::vector<int> idx;
  for (const auto& x : s) idx.push_back(p.index_of(x));
  std::vector<Partition> out;
  for (int i : minimal_upper_bounds(p.poset(), idx)) out.push_back(p.element(i));
  return out;
}

std::vector<Partition> building_set_I(int m) {
  check_ground_size(m);
  std::vector<Partition> out;
  const BlockMask all = full_mask(m);
  for (BlockMask b = 1; b != 0 && b <= all; ++b) {
    if (std::popcount(b) >= 2) out.push_back(Partition::with_block(m, b));
    if (b == all) break;
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<Partition> g_set(int m, int k) {
  if (k < 1) throw InvalidArgument("modulus k must be positive");
  std::vector<Partition> out;
  for (auto& x : building_set_I(m)) {
    if (x.rank() % k == 0) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Partition> factors_I(const Partition& x) {
  std::vector<Partition> out;
  for (auto b : x.non_singleton_blocks()) out.push_back(Partition::with_block(x.ground_size(), b));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<int> factors_k(const PartitionPoset& p, int x) {
  return maximal_elements(p.poset(), p.poset().down_set(x) & p.g_mask());
}

std::vector<Partition> factors_k(const PartitionPoset& p, const Partition& x) {
  std::vector<Partition> out;
  for (int i : factors_k(p, p.index_of(x))) out.push_back(p.element(i));
  return out;
}

std::vector<int> factors_k_of_chain(const PartitionPoset& p, std::span<const int> chain) {
  if (!is_chain(p.poset(), chain)) throw InvalidArgument("elements do not form a chain");
  Bits acc = p.poset().empty_set();
  for (int x : chain) {
    if (p.poset().min() == x || p.poset().max() == x) {
      throw InvalidArgument("chain leaves the proper part");
    }
    for (int f : factors_k(p, x)) acc.set(f);
  }
  std::vector<int> out;
  for (auto i = acc.find_first(); i != Bits::npos; i = acc.find_next(i)) {
    out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<Partition> factors_k_of_chain(const PartitionPoset& p,
                                          std::span<const Partition> chain) {
  std::vector<int> idx;
  for (const auto& x : chain) idx.push_back(p.index_of(x));
  std::vector<Partition> out;
  for (int i : factors_k_of_chain(p, idx)) out.push_back(p.element(i));
  return out;
}

PropertyCheck check_factor_lemma(const PartitionPoset& p) {
  PropertyCheck check{"factors in G equal factors in I", true, 0, {}};
  for (int x = 0; x < p.size(); ++x) {
    ++check.cases;
    std::vector<Partition> via_poset;
    for (int f : factors_k(p, x)) via_poset.push_back(p.element(f));
    std::sort(via_poset.begin(), via_poset.end(), canonical_less);
    if (via_poset != factors_I(p.element(x))) {
      check.pass = false;
      check.witness = p.element(x).to_string();
      break;
    }
  }
  return check;
}

PropertyCheck check_disjointness_lemma(const PartitionPoset& p) {
  PropertyCheck check{"disjoint blocks iff unique k-join outside G", true, 0, {}};
  const auto g = p.g_elements();
  for (std::size_t i = 0; i < g.size() && check.pass; ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      ++check.cases;
      const BlockMask a = p.element(g[i]).non_singleton_blocks().front();
      const BlockMask b = p.element(g[j]).non_singleton_blocks().front();
      const std::vector<int> pair{g[i], g[j]};
      const auto bounds = k_minimal_upper_bounds(p, std::span<const int>(pair));
      const bool joins_outside = bounds.size() == 1 && !p.in_g(bounds.front());
      if (((a & b) == 0) != joins_outside) {
        check.pass = false;
        check.witness = p.element(g[i]).to_string() + " , " + p.element(g[j]).to_string();
        break;
      }
    }
  }
  return check;
}

}  // namespace ksubdiv
