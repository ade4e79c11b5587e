#include "doctest.h"
#include "fixtures.hpp"
#include "ksubdiv/carrier.hpp"
#include "ksubdiv/error.hpp"

using namespace ksubdiv;

namespace {

void check_all(const std::vector<PropertyCheck>& checks) {
  for (const auto& c : checks) CHECK_MESSAGE(c.pass, (c.name + ": " + c.witness));
}

}  // namespace

TEST_CASE("hand-built subdivided edge") {
  const auto good = verify_carrier_map(subdivided_edge(false));
  CHECK(good.pass());
  check_all(good.checks);
  CHECK(good.cells.size() == 3);

  const auto bad = verify_carrier_map(subdivided_edge(true));
  CHECK_FALSE(bad.pass());
  bool overlap = false;
  for (const auto& cell : bad.cells) {
    if (!cell.pass && cell.witness.find("overlap") != std::string::npos) overlap = true;
  }
  CHECK(overlap);
}

TEST_CASE("misplaced vertex is reported") {
  auto cm = subdivided_edge(false);
  cm.vertex_map[2].coords = {{0, Rational(1)}};
  const auto r = verify_carrier_map(cm);
  CHECK_FALSE(r.pass());
}

TEST_CASE("global carrier maps subdivide T^k_n") {
  for (auto [k, n] : {std::pair{1, 3}, std::pair{2, 3}, std::pair{3, 3}, std::pair{1, 4}, std::pair{2, 4}}) {
    const auto inst = build_instance(k, n);
    const auto cm = global_carrier_map(inst);
    const auto r = verify_carrier_map(cm, 2);
    CHECK(r.pass());
    check_all(r.checks);
    CHECK(r.cells.size() == inst.trees.complex.face_count());
    for (const auto& cell : r.cells) CHECK(cell.volume == Rational(1));
  }
}

TEST_CASE("threads do not change the outcome") {
  const auto inst = build_instance(1, 4);
  const auto cm = global_carrier_map(inst);
  const auto one = verify_carrier_map(cm, 1);
  const auto four = verify_carrier_map(cm, 4);
  REQUIRE(one.cells.size() == four.cells.size());
  for (std::size_t i = 0; i < one.cells.size(); ++i) {
    CHECK(one.cells[i].target_face == four.cells[i].target_face);
    CHECK(one.cells[i].top_cells == four.cells[i].top_cells);
  }
}

TEST_CASE("local carriers are compatible with the global map") {
  const auto inst = build_instance(1, 4);
  const auto global = global_carrier_map(inst);
  auto locals = local_carrier_maps(inst);
  CHECK(locals.size() == inst.trees.complex.face_count());
  for (const auto& lc : locals) CHECK(verify_carrier_map(lc.map).pass());
  check_all(check_compatibility(inst, locals, global));

  // Inject a wrong position for a vertex of a two-element face.
  for (auto& lc : locals) {
    if (lc.face.size() == 2 && !lc.global_positions.empty()) {
      lc.global_positions.back() = barycenter({lc.face[0]});
      break;
    }
  }
  bool failed = false;
  for (const auto& c : check_compatibility(inst, locals, global)) failed = failed || !c.pass;
  CHECK(failed);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(build_instance(1, 2), InvalidArgument);
  CHECK_THROWS_AS(build_instance(0, 4), InvalidArgument);
  Limits tight;
  tight.max_elements = 10;
  CHECK_THROWS_AS(build_instance(2, 4, tight), ResourceLimit);
}
