#include "doctest.h"
#include "ksubdiv/error.hpp"
#include "ksubdiv/json_io.hpp"
#include "ksubdiv/ktree.hpp"

using namespace ksubdiv;

TEST_CASE("poset round trip") {
  const auto p = enumerate_partitions(5, 2);
  const auto q = poset_from_json(parse_json(to_json(p.poset()).dump()));
  REQUIRE(q.size() == p.size());
  CHECK(q.labels() == p.poset().labels());
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b) CHECK(q.leq(a, b) == p.poset().leq(a, b));
  CHECK(q.min() == p.poset().min());
  CHECK(q.max() == p.poset().max());
}

TEST_CASE("complex round trip") {
  const auto t = enumerate_ktree_complex(4, 2).complex;
  const auto back = complex_from_json(parse_json(to_json(t).dump()));
  CHECK(same_labelled_complex(back, t));
  CHECK(f_vector(back) == f_vector(t));
}

TEST_CASE("partition round trip") {
  const auto x = Partition::parse("(123)(45)6");
  CHECK(to_json(x).dump() == "[[1,2,3],[4,5],[6]]");
  CHECK(partition_from_json(to_json(x)) == x);
}

TEST_CASE("report shape") {
  const auto r = verify_theorem(1, 4);
  const auto j = to_json(r);
  CHECK(j["verdict"] == "pass");
  CHECK(j["instance"]["k"] == 1);
  CHECK(j["instance"]["n"] == 4);
  CHECK(j["f_vectors"]["ktree_complex"] == Json::array({10, 15}));
  CHECK(j["checks"].is_array());
  CHECK(j.contains("homology"));
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_json("{"), InvalidArgument);
  CHECK_THROWS_AS(poset_from_json(parse_json("{\"elements\": 3}")), InvalidArgument);
  CHECK_THROWS_AS(poset_from_json(parse_json("{\"elements\": [\"a\",\"b\"], \"covers\": [[0,1],[1,0]]}")), Error);
  CHECK_THROWS_AS(complex_from_json(parse_json("{\"vertices\": [\"a\"], \"facets\": [[0, 4]]}")), InvalidArgument);
  CHECK_THROWS_AS(partition_from_json(parse_json("[[1,2],[2]]")), InvalidArgument);
}
