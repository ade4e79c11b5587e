#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ksubdiv/error.hpp"
#include "ksubdiv/partition.hpp"
#include "ksubdiv/poset.hpp"
#include "ksubdiv/simplicial.hpp"
#include "oracles.hpp"

using namespace ksubdiv;

namespace {

Poset chain(int n) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i) {
    labels.push_back("c" + std::to_string(i));
    if (i) covers.emplace_back(i - 1, i);
  }
  return build_poset(labels, covers);
}

Poset antichain(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
  return build_poset(labels, {});
}

int count_leq(const Poset& p) {
  int n = 0;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b) n += p.leq(a, b);
  return n;
}

}  // namespace

TEST_CASE("build_poset closes covers transitively") {
  CHECK(count_leq(chain(3)) == 6);
  const auto single = build_poset({"x"}, {});
  CHECK(single.size() == 1);
  CHECK(count_leq(single) == 1);
  const std::vector<std::pair<int, int>> cycle{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(build_poset({"a", "b"}, cycle), CycleDetected);
  const std::vector<std::pair<int, int>> loop{{0, 0}};
  CHECK_THROWS_AS(build_poset({"a"}, loop), CycleDetected);
}

TEST_CASE("leq equals the Floyd-Warshall closure on random DAGs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    std::vector<std::pair<int, int>> rel;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 4 == 0) rel.emplace_back(i, j);
    const auto p = build_poset(labels, rel);
    const auto c = oracle::closure(n, rel);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) CHECK(p.leq(a, b) == c[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
  }
}

TEST_CASE("designated extremes must be extreme") {
  const std::vector<std::pair<int, int>> v{{0, 1}, {0, 2}};
  CHECK_NOTHROW(build_poset({"0", "a", "b"}, v, 0));
  CHECK_THROWS_AS(build_poset({"0", "a", "b"}, v, 0, 1), InvalidArgument);
}

TEST_CASE("minimal upper bounds, join and meet") {
  const std::vector<std::pair<int, int>> v{{0, 1}, {0, 2}};
  const auto vee = build_poset({"0", "a", "b"}, v);
  const std::vector<int> ab{1, 2};
  CHECK(minimal_upper_bounds(vee, ab).empty());
  CHECK_THROWS_AS(join(vee, ab), NoUpperBound);
  CHECK(meet(vee, ab) == 0);
  const std::vector<int> a{1};
  CHECK(minimal_upper_bounds(vee, a) == std::vector<int>{1});
  CHECK(join(vee, a) == 1);
  CHECK(meet(vee, a) == 1);

  // Bowtie: two minimal upper bounds.
  const std::vector<std::pair<int, int>> bow{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  const auto bowtie = build_poset({"a", "b", "c", "d"}, bow);
  const std::vector<int> lows{0, 1};
  try {
    join(bowtie, lows);
    FAIL("expected NotUnique");
  } catch (const NotUnique& e) {
    CHECK(e.witnesses() == std::vector<int>{2, 3});
  }
}

TEST_CASE("bounds in Π_7 and Π^(2)_7") {
  const auto full = enumerate_partitions(7, 1);
  const auto a = Partition::parse("(123)4567");
  const auto b = Partition::parse("1(234)567");
  const std::vector<int> s{full.index_of(a), full.index_of(b)};
  CHECK(full.element(join(full.poset(), s)) == Partition::parse("(1234)567"));

  const auto p = enumerate_partitions(7, 2);
  const std::vector<int> t{p.index_of(a), p.index_of(b)};
  try {
    join(p.poset(), t);
    FAIL("expected NotUnique");
  } catch (const NotUnique& e) {
    std::vector<Partition> got;
    for (int w : e.witnesses()) got.push_back(p.element(w));
    std::sort(got.begin(), got.end(), canonical_less);
    std::vector<Partition> want{Partition::parse("(12345)67"), Partition::parse("(12346)57"),
                                Partition::parse("(12347)56")};
    std::sort(want.begin(), want.end(), canonical_less);
    CHECK(got == want);
  }
}

TEST_CASE("minimal upper bounds are incomparable upper bounds; join iff unique") {
  const auto p = enumerate_partitions(7, 2);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> s;
    const int size = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < size; ++i) s.push_back(static_cast<int>(rng() % static_cast<unsigned>(p.size())));
    const auto ub = minimal_upper_bounds(p.poset(), s);
    CHECK(is_antichain(p.poset(), ub));
    for (int u : ub)
      for (int x : s) CHECK(p.poset().leq(x, u));
    if (ub.size() == 1) {
      CHECK(join(p.poset(), s) == ub.front());
    } else {
      CHECK_THROWS(join(p.poset(), s));
    }
  }
}

TEST_CASE("meets in Π_4") {
  const auto p = enumerate_partitions(4, 1);
  const std::vector<int> s{p.index_of(Partition::parse("(12)(34)")), p.index_of(Partition::parse("(12)34"))};
  CHECK(p.element(meet(p.poset(), s)) == Partition::parse("(12)34"));
  const std::vector<int> atoms{p.index_of(Partition::parse("(12)34")), p.index_of(Partition::parse("12(34)"))};
  CHECK(p.element(meet(p.poset(), atoms)) == Partition::finest(4));
}

TEST_CASE("intervals") {
  const auto p = enumerate_partitions(4, 1);
  const int zero = *p.poset().min();
  const int x = p.index_of(Partition::parse("(12)(34)"));
  CHECK(interval(p.poset(), x, x).size() == 1);
  CHECK(interval(p.poset(), zero, x).size() == 4);
  CHECK(interval(p.poset(), zero, p.index_of(Partition::parse("(123)4"))).size() == 5);
  CHECK_THROWS_AS(interval(p.poset(), x, p.index_of(Partition::parse("(13)24"))), NotComparable);
  const auto iv = interval(p.poset(), zero, x);
  CHECK(iv.min().has_value());
  CHECK(iv.max().has_value());
}

TEST_CASE("products and isomorphism") {
  const Poset c2 = chain(2);
  const std::vector<Poset> one{c2};
  CHECK(is_isomorphic(product(one), c2).has_value());
  const std::vector<Poset> two{c2, c2};
  const Poset diamond = product(two);
  CHECK(diamond.size() == 4);
  CHECK(count_leq(diamond) == 9);
  CHECK(product(std::span<const Poset>{}).size() == 1);

  const auto p = enumerate_partitions(4, 1);
  const int zero = *p.poset().min();
  const std::vector<Poset> parts{interval(p.poset(), zero, p.index_of(Partition::parse("(12)34"))),
                                 interval(p.poset(), zero, p.index_of(Partition::parse("12(34)")))};
  const auto target = interval(p.poset(), zero, p.index_of(Partition::parse("(12)(34)")));
  const auto iso = is_isomorphic(product(parts), target);
  REQUIRE(iso.has_value());
  for (int a = 0; a < target.size(); ++a)
    for (int b = 0; b < target.size(); ++b)
      CHECK(product(parts).leq(a, b) == target.leq((*iso)[static_cast<std::size_t>(a)], (*iso)[static_cast<std::size_t>(b)]));

  CHECK_FALSE(is_isomorphic(chain(3), antichain(3)).has_value());
  const auto self = is_isomorphic(p.poset(), p.poset());
  REQUIRE(self.has_value());
}

TEST_CASE("isomorphism is symmetric and structure-preserving on random posets") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 7);
    std::vector<std::pair<int, int>> rel;
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) rel.emplace_back(i, j);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<int, int>> moved;
    for (auto [a, b] : rel) moved.emplace_back(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]);
    const auto p = build_poset(labels, rel);
    const auto q = build_poset(labels, moved);
    const auto f = is_isomorphic(p, q);
    const auto g = is_isomorphic(q, p);
    REQUIRE(f.has_value());
    REQUIRE(g.has_value());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) CHECK(p.leq(a, b) == q.leq((*f)[static_cast<std::size_t>(a)], (*f)[static_cast<std::size_t>(b)]));
  }
}

TEST_CASE("order complexes") {
  const auto pi3 = enumerate_partitions(3, 1);
  const auto k3 = order_complex(pi3.poset());
  CHECK(f_vector(k3) == std::vector<std::size_t>{3});

  std::vector<std::pair<int, int>> covers{{0, 1}, {1, 2}, {2, 3}};
  const auto c = build_poset({"0", "a", "b", "1"}, covers, 0, 3);
  const auto kc = order_complex(c);
  CHECK(kc.facets() == std::vector<Face>{{0, 1}});
  CHECK(kc.label(0) == "a");

  CHECK(f_vector(order_complex(enumerate_partitions(5, 2).poset())) == std::vector<std::size_t>{10});

  // Empty proper part.
  const auto two = build_poset({"0", "1"}, std::vector<std::pair<int, int>>{{0, 1}}, 0, 1);
  CHECK(order_complex(two).dimension() == -1);
}

TEST_CASE("order complex matches brute-force chain counts; dimension is longest chain - 1") {
  for (auto [m, k] : {std::pair{4, 1}, std::pair{5, 1}, std::pair{7, 2}, std::pair{7, 3}}) {
    const auto p = enumerate_partitions(m, k);
    std::vector<std::vector<bool>> leq(static_cast<std::size_t>(p.size()), std::vector<bool>(static_cast<std::size_t>(p.size())));
    for (int a = 0; a < p.size(); ++a)
      for (int b = 0; b < p.size(); ++b)
        leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = oracle::refines(p.element(a).block_lists(), p.element(b).block_lists());
    const auto counts = oracle::chain_counts(leq, p.poset().proper_part());
    const auto k_ = order_complex(p.poset());
    CHECK(f_vector(k_) == counts);
    CHECK(k_.dimension() == static_cast<int>(counts.size()) - 1);
  }
}

TEST_CASE("linear extensions") {
  const auto c = chain(5);
  const std::vector<int> all{4, 2, 0, 3, 1};
  CHECK(linear_extension(c, all) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(linear_extension(c, all, ExtensionPolicy::SeededRandom, 99) == std::vector<int>{0, 1, 2, 3, 4});
  const auto a = antichain(4);
  const std::vector<int> some{3, 1, 2};
  CHECK(linear_extension(a, some) == std::vector<int>{1, 2, 3});

  const auto p = enumerate_partitions(7, 2);
  std::vector<int> rest;
  for (int x : p.poset().proper_part())
    if (!p.in_g(x)) rest.push_back(x);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ext = linear_extension(p.poset(), rest, ExtensionPolicy::SeededRandom, seed);
    CHECK(is_linear_extension(p.poset(), ext));
    CHECK(ext.size() == rest.size());
    for (std::size_t i = 1; i < ext.size(); ++i) CHECK(p.element(ext[i - 1]).rank() <= p.element(ext[i]).rank());
  }
  CHECK_FALSE(is_linear_extension(c, std::vector<int>{1, 0}));
}

TEST_CASE("seeded shuffle is reproducible") {
  std::vector<int> a(20);
  std::iota(a.begin(), a.end(), 0);
  std::vector<int> b(a);
  seeded_shuffle(a, 5);
  seeded_shuffle(b, 5);
  CHECK(a == b);
  std::vector<int> c(20);
  std::iota(c.begin(), c.end(), 0);
  seeded_shuffle(c, 6);
  CHECK(a != c);
}
