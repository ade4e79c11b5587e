#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ksubdiv {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Point of a simplicial realization: barycentric coordinates on a set of
/// vertices, sorted by vertex, every coordinate nonzero.
struct BarycentricPoint {
  std::vector<std::pair<int, Rational>> coords;

  std::vector<int> support() const;
  Rational coordinate(int vertex) const;
  bool operator==(const BarycentricPoint&) const = default;
};

/// Equal weights on the given vertices.
BarycentricPoint barycenter(const std::vector<int>& vertices);

Rational determinant(RationalMatrix m);
std::size_t matrix_rank(RationalMatrix m);
std::optional<RationalMatrix> inverse(RationalMatrix m);

/// coeffs . x + constant > 0 (strict) or >= 0.
struct AffineConstraint {
  RationalVector coeffs;
  Rational constant;
  bool strict = true;
};

/// Exact feasibility of a system of affine inequalities by Fourier-Motzkin
/// elimination; strictness is tracked through every combination.
bool feasible(std::vector<AffineConstraint> system);

/// Constraints "every barycentric coordinate is positive" for the open
/// simplex spanned by d+1 affinely independent points of R^d.
std::vector<AffineConstraint> open_simplex_constraints(const RationalMatrix& vertices);

/// True if the open simplices (d+1 points in R^d each) share a point.
bool interiors_intersect(const RationalMatrix& a, const RationalMatrix& b);

/// |det(p_1 - p_0, ..., p_d - p_0)|: d! times the Euclidean volume.
Rational normalized_volume(const RationalMatrix& vertices);

/// Dimension of the affine hull of the points.
std::size_t affine_dimension(const RationalMatrix& points);

}  // namespace ksubdiv
