#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ksubdiv/carrier.hpp"
#include "ksubdiv/limits.hpp"
#include "ksubdiv/partition.hpp"
#include "ksubdiv/simplicial.hpp"

namespace ksubdiv {

/// Elements of the proper part of Π^(k)_m outside G, ascending.
std::vector<int> subdivision_elements(const TheoremInstance& inst);

/// `count` distinct linear extensions of subdivision_elements: the
/// rank-then-canonical one first, then seeded random ones. Fewer are
/// returned when fewer exist.
std::vector<std::vector<int>> theorem_extensions(const TheoremInstance& inst, std::size_t count,
                                                 std::uint64_t seed);

/// Starting from T^k_n, stellar subdivision at F^k(h) for h running down
/// the extension; the new vertex is labelled by h.
SimplicialComplex global_stellar_sequence(const TheoremInstance& inst, std::span<const int> ext);

/// For each π: the poset, both complexes and the carrier map commute with
/// the action of π on {1..m}.
PropertyCheck check_equivariance(const TheoremInstance& inst, const CarrierMap& global,
                                 std::span<const Permutation> perms, unsigned threads = 1);

/// The generators (1 2) and (1 2 ... m) of S_m.
std::vector<Permutation> symmetric_group_generators(int m);

/// Structural facts behind the proof: factors in G, disjoint blocks versus
/// unique joins, F^k(ω) ∈ T^k_n for every chain, the Σ(N) lattice facts for
/// every face, the union claim in Π^(k)_m and every Σ(N), and the local
/// stellar sequences from the simplex on N to Δ(Σ(N)).
std::vector<PropertyCheck> structural_checks(const TheoremInstance& inst,
                                             const std::vector<LocalCarrier>& locals);

struct TheoremOptions {
  std::size_t extensions = 1;
  std::uint64_t seed = 0;
  Limits limits;
};

struct SubdivisionReport {
  int k = 0;
  int n = 0;
  int m = 0;
  std::size_t poset_elements = 0;
  std::size_t proper_elements = 0;
  std::vector<std::size_t> source_f_vector;  // Δ(Π^(k)_m)
  std::vector<std::size_t> target_f_vector;  // T^k_n
  long long source_euler = 0;
  long long target_euler = 0;
  /// Linear extensions used, as element labels.
  std::vector<std::vector<std::string>> extensions;
  std::vector<PropertyCheck> checks;
  std::vector<HomologyGroup> source_homology;
  std::vector<HomologyGroup> target_homology;
  bool verdict = false;
};

/// End-to-end check that Δ(Π^(k)_m) subdivides T^k_n. Throws
/// InvalidArgument or ResourceLimit before any check runs.
SubdivisionReport verify_theorem(int k, int n, const TheoremOptions& options = {});

}  // namespace ksubdiv
