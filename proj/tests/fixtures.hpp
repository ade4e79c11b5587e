#pragma once

#include "ksubdiv/carrier.hpp"

// The edge A-B cut into a-c, c-d, d-b with c at 1/3 and d at 2/3. With
// `swapped`, c and d trade positions: each still lies in the open edge, but
// the cells a-c and d-b now overlap.
inline ksubdiv::CarrierMap subdivided_edge(bool swapped) {
  using namespace ksubdiv;
  CarrierMap cm;
  cm.source = SimplicialComplex::from_facets({"a", "b", "c", "d"}, {{0, 2}, {2, 3}, {1, 3}});
  cm.target = SimplicialComplex::from_facets({"A", "B"}, {{0, 1}});
  const Face edge{0, 1};
  cm.face_carrier.resize(2);
  for (const auto& f : cm.source.faces(0)) {
    cm.face_carrier[0].push_back(f[0] == 0 ? Face{0} : f[0] == 1 ? Face{1} : edge);
  }
  for (std::size_t i = 0; i < cm.source.faces(1).size(); ++i) cm.face_carrier[1].push_back(edge);
  auto at = [](Rational t) {
    BarycentricPoint p;
    p.coords = {{0, 1 - t}, {1, t}};
    return p;
  };
  BarycentricPoint a, b;
  a.coords = {{0, Rational(1)}};
  b.coords = {{1, Rational(1)}};
  const Rational third(1, 3), two_thirds(2, 3);
  cm.vertex_map = {a, b, at(swapped ? two_thirds : third), at(swapped ? third : two_thirds)};
  return cm;
}
