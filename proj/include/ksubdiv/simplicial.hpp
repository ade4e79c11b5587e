#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ksubdiv/poset.hpp"
#include "ksubdiv/smith.hpp"

namespace ksubdiv {

/// Sorted vertex indices.
using Face = std::vector<int>;

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept;
};

/// Abstract simplicial complex on vertices 0..vertex_count()-1.
///
/// Faces are nonempty, sorted, unique and grouped by dimension; the empty
/// face is implicit. Every vertex is a face. Labels are unique strings.
class SimplicialComplex {
 public:
  static constexpr std::size_t kDefaultMaxFaces = 200000;

  SimplicialComplex() = default;

  /// Downward closure of `facets`. Facets may be unsorted and need not be
  /// maximal. Throws InvalidArgument on out-of-range or repeated vertices,
  /// duplicate labels, or a vertex that lies in no face; ResourceLimit if
  /// the closure exceeds max_faces.
  static SimplicialComplex from_facets(std::vector<std::string> labels,
                                       std::vector<Face> facets,
                                       std::size_t max_faces = kDefaultMaxFaces);

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> vertex_by_label(std::string_view label) const;

  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t face_count() const;
  /// Faces of dimension `dim` in lexicographic order.
  const std::vector<Face>& faces(int dim) const;
  bool contains(const Face& face) const;
  std::optional<std::size_t> index_of(const Face& face) const;
  /// Inclusion-maximal faces, by dimension then lexicographically.
  std::vector<Face> facets() const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> label_index_;
  std::vector<std::vector<Face>> by_dim_;
  std::vector<std::unordered_map<Face, std::size_t, FaceHash>> index_;
};

std::vector<std::size_t> f_vector(const SimplicialComplex& k);
long long euler_characteristic(const SimplicialComplex& k);
int dimension(const SimplicialComplex& k);
bool is_pure(const SimplicialComplex& k);

/// Stellar subdivision at `sigma` with a new vertex labelled `new_label`
/// (appended as the last vertex). A vertex is returned unchanged.
/// Throws FaceNotPresent.
SimplicialComplex stellar_subdivide(const SimplicialComplex& k, const Face& sigma,
                                    const std::string& new_label);

/// Cone over k with a new apex vertex appended last.
SimplicialComplex cone(const SimplicialComplex& k, const std::string& apex_label);

/// Integer boundary map C_d -> C_{d-1} in the face orders of faces(d) and
/// faces(d-1). For d = 0 this is the augmentation row of ones.
SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int d);

struct HomologyGroup {
  std::size_t betti = 0;
  std::vector<BigInt> torsion;

  bool operator==(const HomologyGroup&) const = default;
};

/// Reduced integral homology in degrees 0..dim(k). The empty complex gives
/// an empty vector (its only nonzero group sits in degree -1).
std::vector<HomologyGroup> reduced_homology(const SimplicialComplex& k,
                                            std::size_t max_dense_entries = kDefaultDenseCap);

/// Vertex bijection k1 -> k2 carrying faces onto faces, if one exists.
/// Candidates with the same label are tried first.
std::optional<std::vector<int>> is_isomorphic(const SimplicialComplex& k1,
                                              const SimplicialComplex& k2);

/// True if `map` is a vertex bijection inducing a bijection on faces.
bool is_face_bijection(const SimplicialComplex& k1, const SimplicialComplex& k2,
                       std::span<const int> map);

/// Image of k under a permutation of its own vertex indices; the label
/// array is unchanged, so the result is comparable with k face by face.
SimplicialComplex apply_vertex_permutation(const SimplicialComplex& k,
                                           std::span<const int> perm);

/// Equal vertex label sets and equal faces once vertices are identified by
/// label.
bool same_labelled_complex(const SimplicialComplex& a, const SimplicialComplex& b);

/// Face poset ordered by inclusion; element i is faces[i].
struct FacePoset {
  std::vector<Face> faces;
  Poset poset;
};

FacePoset face_poset(const SimplicialComplex& k);

}  // namespace ksubdiv
