#pragma once

#include <string>
#include <vector>

#include "ksubdiv/exact_geometry.hpp"
#include "ksubdiv/ktree.hpp"
#include "ksubdiv/limits.hpp"
#include "ksubdiv/nested_sets.hpp"
#include "ksubdiv/partition.hpp"
#include "ksubdiv/simplicial.hpp"

namespace ksubdiv {

/// Face-poset map φ: F(P) -> F(Q) with a vertex map f⁰ into |Q|.
struct CarrierMap {
  SimplicialComplex source;
  SimplicialComplex target;
  /// face_carrier[d][i] is φ(source.faces(d)[i]), a sorted target face.
  std::vector<std::vector<Face>> face_carrier;
  /// f⁰ of each source vertex, in barycentric coordinates over target
  /// vertices.
  std::vector<BarycentricPoint> vertex_map;

  /// φ of an arbitrary source face; throws FaceNotPresent.
  const Face& carrier(const Face& source_face) const;
};

/// Outcome of the partition check over one face q of the target.
struct CellReport {
  Face target_face;
  std::size_t top_cells = 0;
  std::size_t lower_cells = 0;
  /// Sum of normalized volumes of the top cells, relative to q.
  Rational volume;
  bool pass = true;
  std::string witness;
};

struct CarrierVerification {
  std::vector<PropertyCheck> checks;
  std::vector<CellReport> cells;
  bool pass() const;
};

/// Checks that φ is an order-preserving map into faces of Q, that f⁰(v)
/// lies in the open simplex of φ({v}), and that for every face q of Q the
/// open cells carried by q partition the open simplex |q|: top cells are
/// non-degenerate with pairwise disjoint interiors and volumes summing to
/// the volume of q, lower cells are independent faces of top cells, and
/// the alternating cell count is (-1)^dim q. Exact rational arithmetic
/// throughout; failures are reported, not thrown.
CarrierVerification verify_carrier_map(const CarrierMap& cm, unsigned threads = 1);

/// Δ(Π^(k)_m) and T^k_n for one (k, n), with the index maps between them.
struct TheoremInstance {
  int k = 0;
  int n = 0;
  int m = 0;
  PartitionPoset poset;
  KTreeComplex trees;
  /// Vertex v is the poset element proper[v].
  SimplicialComplex order_complex;
  std::vector<int> proper;
  /// Poset index -> vertex of trees.complex, or -1.
  std::vector<int> tree_vertex;
  /// Poset index -> vertex of order_complex, or -1.
  std::vector<int> chain_vertex;
};

/// Throws InvalidArgument for n < 3 or k < 1 and ResourceLimit past the caps.
TheoremInstance build_instance(int k, int n, const Limits& limits = {});

/// φ(ω) = F^k(ω), f⁰(x) = barycenter of F^k(x).
CarrierMap global_carrier_map(const TheoremInstance& inst);

/// The subdivision of the simplex N by Δ(Σ(N)) for one face N of T^k_n.
struct LocalCarrier {
  /// Vertices of trees.complex forming N.
  Face face;
  SigmaLattice sigma;
  /// Poset element of every source vertex of `map`.
  std::vector<int> source_elements;
  /// Source Δ(Σ(N)) (top kept, 0̂ dropped), target the simplex on N.
  CarrierMap map;
  /// f⁰_N of every source vertex over vertices of trees.complex.
  std::vector<BarycentricPoint> global_positions;
};

std::vector<LocalCarrier> local_carrier_maps(const TheoremInstance& inst);

/// Local vertex maps agree on shared vertices, Δ(Σ(N1)) ∩ Δ(Σ(N2)) =
/// Δ(Σ(N1 ∩ N2)), and every local map is the restriction of `global`.
std::vector<PropertyCheck> check_compatibility(const TheoremInstance& inst,
                                               const std::vector<LocalCarrier>& locals,
                                               const CarrierMap& global);

/// Label list "{a,b}" for a face.
std::string face_name(const SimplicialComplex& k, const Face& f);

}  // namespace ksubdiv
