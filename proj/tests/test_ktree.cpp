#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "ksubdiv/error.hpp"
#include "ksubdiv/ktree.hpp"
#include "oracles.hpp"

using namespace ksubdiv;

namespace {

std::vector<int> leaves(int m) {
  std::vector<int> out;
  for (int i = 1; i <= m; ++i) out.push_back(i);
  return out;
}

std::vector<std::size_t> oracle_f_vector(int m, int k) {
  std::vector<std::size_t> f;
  for (const auto& t : oracle::rooted_ktrees(leaves(m), k)) {
    if (t.empty()) continue;
    if (f.size() < t.size()) f.resize(t.size());
    ++f[t.size() - 1];
  }
  return f;
}

}  // namespace

TEST_CASE("Newick round trip") {
  const auto t = KTree::parse_newick("((1,2,3),4,5);", 2);
  CHECK(t.leaf_count() == 5);
  CHECK(t.nodes().size() == 2);
  CHECK(t.outdegree(0) == 3);
  CHECK(t.to_newick() == "((1,2,3),4,5);");
  CHECK(KTree::parse_newick("(5,4,(3,1,2))", 2) == t);
  CHECK(tree_to_nested(t).members() == std::vector<Partition>{Partition::parse("(123)45")});

  const auto cat = KTree::parse_newick("((((1,2),3),4),5);", 1);
  CHECK(cat.nodes().size() == 4);
  CHECK(tree_to_nested(cat).size() == 3);
  CHECK(nested_to_tree(tree_to_nested(cat)) == cat);

  CHECK(KTree::star(4, 1).to_newick() == "(1,2,3,4);");
  CHECK_THROWS_AS(KTree::parse_newick("((1,2),3,4,5);", 2), InvalidArgument);
  CHECK_THROWS_AS(KTree::parse_newick("((1),2,3);", 1), InvalidArgument);
  CHECK_THROWS_AS(KTree::parse_newick("((1,2),3", 1), InvalidArgument);
  CHECK_THROWS_AS(KTree::parse_newick("(1,1,2);", 1), InvalidArgument);
}

TEST_CASE("trees and nested families are in bijection") {
  for (auto [m, k] : {std::pair{4, 1}, std::pair{5, 1}, std::pair{5, 2}, std::pair{7, 2}, std::pair{7, 3}}) {
    std::set<std::string> seen;
    for (const auto& masks : oracle::rooted_ktrees(leaves(m), k)) {
      const NestedFamily n(m, k, masks);
      CHECK(n.is_laminar());
      const auto t = nested_to_tree(n);
      CHECK(tree_to_nested(t) == n);
      CHECK(KTree::parse_newick(t.to_newick(), k) == t);
      seen.insert(t.to_newick());
    }
    CHECK(seen.size() == oracle::rooted_ktrees(leaves(m), k).size());
  }
}

TEST_CASE("nested_to_tree rejects non-laminar families and the full block") {
  CHECK_THROWS_AS(nested_to_tree(NestedFamily(4, 1, {0b0011, 0b0110})), NotNested);
  CHECK_THROWS_AS(nested_to_tree(NestedFamily(4, 1, {0b1111})), NotNested);
  CHECK_THROWS_AS(NestedFamily(5, 2, {0b00011}), InvalidArgument);
  CHECK_THROWS_AS(NestedFamily(4, 1, {0b0011, 0b0011}), InvalidArgument);
}

TEST_CASE("contraction removes internal edges") {
  const auto cat = KTree::parse_newick("((((1,2),3),4),5);", 1);
  const std::vector<BlockMask> e{0b00111};
  const auto c = contract(cat, e);
  CHECK(c.to_newick() == "(((1,2),3,4),5);");
  const std::vector<BlockMask> all{0b00011, 0b00111, 0b01111};
  CHECK(contract(cat, all) == KTree::star(5, 1));
  const std::vector<BlockMask> bad{0b00110};
  CHECK_THROWS_AS(contract(cat, bad), InvalidArgument);

  // Contraction is deletion on the nested side.
  std::mt19937 rng(2);
  const auto trees = oracle::rooted_ktrees(leaves(7), 2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& masks = trees[rng() % trees.size()];
    std::vector<BlockMask> drop, keep;
    for (auto b : masks) (rng() % 2 ? drop : keep).push_back(b);
    const auto t = nested_to_tree(NestedFamily(7, 2, masks));
    CHECK(contract(t, drop) == nested_to_tree(NestedFamily(7, 2, keep)));
  }
}

TEST_CASE("the bijection commutes with relabelling leaves") {
  const auto trees = oracle::rooted_ktrees(leaves(5), 2);
  for (const auto& pi : all_permutations(5)) {
    for (const auto& masks : trees) {
      const NestedFamily n(5, 2, masks);
      CHECK(apply_permutation(nested_to_tree(n), pi) == nested_to_tree(apply_permutation(n, pi)));
    }
  }
}

TEST_CASE("k-nestedness") {
  const auto p = enumerate_partitions(7, 2);
  const std::vector<Partition> ok{Partition::parse("(123)4567"), Partition::parse("123(456)7")};
  CHECK(is_k_nested(p, ok));
  const std::vector<Partition> chain{Partition::parse("(123)4567"), Partition::parse("(12345)67")};
  CHECK(is_k_nested(p, chain));
  const std::vector<Partition> overlap{Partition::parse("(123)4567"), Partition::parse("1(234)567")};
  CHECK_FALSE(is_k_nested(p, overlap));
  const std::vector<Partition> not_g{Partition::parse("(123)(456)7")};
  CHECK_THROWS_AS(is_k_nested(p, not_g), InvalidArgument);

  const auto p1 = enumerate_partitions(4, 1);
  const std::vector<Partition> union_in_g{Partition::parse("(12)34"), Partition::parse("1(23)4")};
  CHECK_FALSE(is_k_nested(p1, union_in_g));
}

TEST_CASE("k-nested subsets of proper G are exactly laminar families") {
  for (auto [m, k] : {std::pair{5, 1}, std::pair{7, 2}, std::pair{7, 3}}) {
    const auto p = enumerate_partitions(m, k);
    std::vector<Partition> g;
    for (int i : p.g_elements())
      if (i != *p.poset().max()) g.push_back(p.element(i));
    std::mt19937 rng(static_cast<unsigned>(m * 10 + k));
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<Partition> s;
      const int size = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < size; ++i) s.push_back(g[rng() % g.size()]);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      CHECK(is_k_nested(p, s) == NestedFamily::from_partitions(m, k, s).is_laminar());
    }
  }
}

TEST_CASE("T^k_n counts agree with brute-force tree enumeration") {
  for (auto [k, n] : {std::pair{1, 3}, std::pair{1, 4}, std::pair{1, 5}, std::pair{2, 3}, std::pair{2, 4},
                      std::pair{3, 3}, std::pair{2, 5}}) {
    const auto t = enumerate_ktree_complex(n, k);
    CHECK(f_vector(t.complex) == oracle_f_vector(t.m, k));
    CHECK(t.complex.dimension() == n - 3);
    CHECK(is_pure(t.complex));
  }
  CHECK(f_vector(enumerate_ktree_complex(4, 1).complex) == std::vector<std::size_t>{10, 15});
  CHECK(f_vector(enumerate_ktree_complex(3, 2).complex) == std::vector<std::size_t>{10});
  CHECK(f_vector(enumerate_ktree_complex(4, 2).complex) == std::vector<std::size_t>{56, 280});
  CHECK(f_vector(enumerate_ktree_complex(5, 1).complex) == std::vector<std::size_t>{25, 105, 105});
}

TEST_CASE("faces of T^k_n are the nested families") {
  const auto t = enumerate_ktree_complex(4, 2);
  const auto& p = enumerate_partitions(7, 2);
  std::set<std::vector<BlockMask>> from_complex;
  for (int d = 0; d <= t.complex.dimension(); ++d) {
    for (const auto& f : t.complex.faces(d)) {
      std::vector<Partition> members;
      for (int v : f) members.push_back(Partition::parse(t.complex.label(v), 7));
      CHECK(is_k_nested(p, members));
      from_complex.insert(NestedFamily::from_partitions(7, 2, members).blocks());
    }
  }
  std::set<std::vector<BlockMask>> from_trees;
  for (const auto& masks : oracle::rooted_ktrees(leaves(7), 2)) {
    if (!masks.empty()) from_trees.insert(NestedFamily(7, 2, masks).blocks());
  }
  CHECK(from_complex == from_trees);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(ground_size_for(2, 1), InvalidArgument);
  CHECK_THROWS_AS(ground_size_for(3, 0), InvalidArgument);
  CHECK_THROWS_AS(ground_size_for(40, 2), ResourceLimit);
  CHECK(ground_size_for(4, 2) == 7);
  Limits tight;
  tight.max_faces = 100;
  CHECK_THROWS_AS(enumerate_ktree_complex(5, 1, tight), ResourceLimit);
}
