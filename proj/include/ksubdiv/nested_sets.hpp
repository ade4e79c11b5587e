#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ksubdiv/exact_geometry.hpp"
#include "ksubdiv/partition.hpp"
#include "ksubdiv/poset.hpp"
#include "ksubdiv/simplicial.hpp"

namespace ksubdiv {

struct BuildingSetResult {
  bool pass = true;
  /// An element whose lower interval does not factor.
  std::optional<int> witness;
};

/// Checks that for every x above the minimum, the product of the intervals
/// [0̂, z] over z in max G_{≤x} is isomorphic to [0̂, x] by a map sending each
/// unit tuple to its nonzero entry. L must have a designated minimum.
BuildingSetResult is_building_set(const Poset& l, const Bits& g);

/// max G_{≤x}, ascending.
std::vector<int> factors(const Poset& l, const Bits& g, int x);

/// Every antichain of size ≥ 2 in the family has a unique minimal upper
/// bound in L, and that bound is not in G.
bool is_nested_set(const Poset& l, const Bits& g, std::span<const int> family);

struct NestedSetComplex {
  /// Element of L carried by each vertex.
  std::vector<int> vertex_elements;
  SimplicialComplex complex;
};

/// Complex of nonempty G-nested sets. The maximum of L is dropped from the
/// vertex set unless keep_apex is set.
NestedSetComplex nested_set_complex(const Poset& l, const Bits& g, bool keep_apex = false,
                                    std::size_t max_faces = SimplicialComplex::kDefaultMaxFaces);

/// The joins ∨^k X over all X ⊆ N inside Π^(k)_m, with the induced order.
struct SigmaLattice {
  /// Poset indices of N, ascending.
  std::vector<int> base;
  /// Poset indices of the elements, ascending; element i of `poset` is
  /// elements[i].
  std::vector<int> elements;
  Poset poset;
  /// N inside `poset`.
  Bits base_local;
};

/// Throws NotNested when some subset of N lacks a unique join.
SigmaLattice sigma_lattice(const PartitionPoset& p, std::span<const int> nested);

/// Lattice axioms, building-set property of N, a = ∨^k max N_{≤a}, and the
/// meet formula ∨^k max(N_{≤a} ∩ N_{≤b}).
std::vector<PropertyCheck> check_sigma_lattice(const PartitionPoset& p, const SigmaLattice& s);

/// For comparable x > y: F(x) ∪ F(y) is G-nested.
PropertyCheck check_union_claim(const Poset& l, const Bits& g, std::string name);

struct BlowupStep {
  int element = -1;
  /// Vertices of the subdivided face, in the complex before the step.
  Face face;
};

struct BlowupResult {
  SimplicialComplex complex;
  std::vector<int> vertex_elements;
  std::vector<BlowupStep> steps;
  /// Position of every final vertex in barycentric coordinates of the
  /// starting complex.
  std::vector<BarycentricPoint> positions;
};

/// Stellar subdivisions from N(L, H) to N(L, G). `ext` must list G \ H in
/// an order compatible with L (NotLinearExtension otherwise). Faces are
/// subdivided from the top of the extension down, the new vertex for h
/// going in at the barycenter of F_H(h).
BlowupResult blowup_sequence(const Poset& l, const Bits& h, const Bits& g,
                             std::span<const int> ext, bool keep_apex = false);

/// ∪_{x ∈ N} F_H(x), ascending.
std::vector<int> blowup_carrier(const Poset& l, const Bits& h, std::span<const int> nested);

}  // namespace ksubdiv
