#include <set>

#include "doctest.h"
#include "ksubdiv/error.hpp"
#include "ksubdiv/theorem.hpp"

using namespace ksubdiv;

namespace {

std::vector<std::size_t> betti(const std::vector<HomologyGroup>& h) {
  std::vector<std::size_t> out;
  for (const auto& g : h) out.push_back(g.betti);
  return out;
}

}  // namespace

TEST_CASE("end-to-end verification") {
  struct Case {
    int k, n;
    std::vector<std::size_t> source, target;
    long long euler;
  };
  for (const auto& c : {Case{1, 3, {3}, {3}, 3}, Case{2, 3, {10}, {10}, 10}, Case{3, 3, {35}, {35}, 35},
                        Case{1, 4, {13, 18}, {10, 15}, -5}, Case{2, 4, {126, 350}, {56, 280}, -224}}) {
    const auto r = verify_theorem(c.k, c.n);
    CHECK(r.verdict);
    for (const auto& check : r.checks) CHECK_MESSAGE(check.pass, (check.name + ": " + check.witness));
    CHECK(r.source_f_vector == c.source);
    CHECK(r.target_f_vector == c.target);
    CHECK(r.source_euler == c.euler);
    CHECK(r.target_euler == c.euler);
    CHECK(r.source_homology == r.target_homology);
  }
}

TEST_CASE("homology of small instances") {
  const auto r = verify_theorem(1, 4);
  CHECK(betti(r.target_homology) == std::vector<std::size_t>{0, 6});
  const auto s = verify_theorem(2, 4);
  CHECK(betti(s.target_homology) == std::vector<std::size_t>{0, 225});
  for (const auto& g : s.target_homology) CHECK(g.torsion.empty());
}

TEST_CASE("extensions") {
  const auto inst = build_instance(2, 4);
  const auto elems = subdivision_elements(inst);
  const auto exts = theorem_extensions(inst, 3, 7);
  REQUIRE(exts.size() == 3);
  CHECK(std::set<std::vector<int>>(exts.begin(), exts.end()).size() == 3);
  for (const auto& e : exts) {
    CHECK(is_linear_extension(inst.poset.poset(), e));
    CHECK(e.size() == elems.size());
  }
  CHECK(exts == theorem_extensions(inst, 3, 7));

  const auto base = global_stellar_sequence(inst, exts[0]);
  for (const auto& e : exts) CHECK(same_labelled_complex(global_stellar_sequence(inst, e), base));
  CHECK(same_labelled_complex(base, inst.order_complex));

  TheoremOptions opts;
  opts.extensions = 3;
  opts.seed = 7;
  const auto r = verify_theorem(1, 4, opts);
  CHECK(r.verdict);
  CHECK(r.extensions.size() == 3);
}

TEST_CASE("a single instance with one linear extension") {
  const auto inst = build_instance(1, 3);
  CHECK(subdivision_elements(inst).empty());
  CHECK(theorem_extensions(inst, 3, 0).size() == 1);
}

TEST_CASE("equivariance") {
  const auto inst = build_instance(2, 3);
  const auto global = global_carrier_map(inst);
  const auto all = all_permutations(inst.m);
  CHECK(check_equivariance(inst, global, all, 2).pass);
  const auto gens = symmetric_group_generators(inst.m);
  CHECK(gens.size() == 3);
  CHECK(check_equivariance(inst, global, gens).pass);
  const std::vector<Permutation> bogus{{1, 1, 2, 3, 4}};
  CHECK_FALSE(check_equivariance(inst, global, bogus).pass);
}

TEST_CASE("structural checks") {
  const auto inst = build_instance(2, 4);
  const auto locals = local_carrier_maps(inst);
  for (const auto& c : structural_checks(inst, locals)) {
    CHECK_MESSAGE(c.pass, (c.name + ": " + c.witness));
    CHECK(c.cases > 0);
  }
}

TEST_CASE("validation happens before work") {
  CHECK_THROWS_AS(verify_theorem(1, 2), InvalidArgument);
  CHECK_THROWS_AS(verify_theorem(0, 3), InvalidArgument);
  TheoremOptions tight;
  tight.limits.max_elements = 20;
  CHECK_THROWS_AS(verify_theorem(2, 4, tight), ResourceLimit);
}
