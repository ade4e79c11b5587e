#include "ksubdiv/exact_geometry.hpp"

#include <algorithm>

#include "ksubdiv/error.hpp"

namespace ksubdiv {

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::vector<int> BarycentricPoint::support() const {
  std::vector<int> out;
  for (const auto& [v, c] : coords) out.push_back(v);
  return out;
}

Rational BarycentricPoint::coordinate(int vertex) const {
  auto it = std::lower_bound(coords.begin(), coords.end(), vertex,
                             [](const auto& e, int v) { return e.first < v; });
  return (it != coords.end() && it->first == vertex) ? it->second : Rational(0);
}

BarycentricPoint barycenter(const std::vector<int>& vertices) {
  BarycentricPoint p;
  if (vertices.empty()) return p;
  const Rational w(1, static_cast<long long>(vertices.size()));
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  for (int v : sorted) p.coords.emplace_back(v, w);
  return p;
}

namespace {

// Row echelon form in place; returns the rank and accumulates the
// determinant sign/scale when the matrix is square.
std::size_t eliminate(RationalMatrix& m, Rational* det) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t rank = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) {
      if (det) *det = 0;
      continue;
    }
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      if (det) *det = -*det;
    }
    if (det) *det *= m[rank][c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  if (det && rank < rows) *det = 0;
  return rank;
}

}  // namespace

Rational determinant(RationalMatrix m) {
  if (m.empty()) return Rational(1);
  for (const auto& row : m) {
    if (row.size() != m.size()) throw InvalidArgument("determinant of a non-square matrix");
  }
  Rational det;
  eliminate(m, &det);
  return det;
}

std::size_t matrix_rank(RationalMatrix m) { return eliminate(m, nullptr); }

std::optional<RationalMatrix> inverse(RationalMatrix m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw InvalidArgument("inverse of a non-square matrix");
    m[i].resize(2 * n, Rational(0));
    m[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[c]);
    const Rational scale = m[c][c];
    for (auto& x : m[c]) x /= scale;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  RationalMatrix out(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(m[i].begin() + static_cast<std::ptrdiff_t>(n), m[i].end(), out[i].begin());
  }
  return out;
}

bool feasible(std::vector<AffineConstraint> system) {
  if (system.empty()) return true;
  std::size_t vars = system.front().coeffs.size();
  while (vars > 0) {
    const std::size_t v = vars - 1;
    std::vector<AffineConstraint> pos, neg, next;
    for (auto& c : system) {
      if (c.coeffs[v] > 0) {
        pos.push_back(std::move(c));
      } else if (c.coeffs[v] < 0) {
        neg.push_back(std::move(c));
      } else {
        c.coeffs.pop_back();
        next.push_back(std::move(c));
      }
    }
    // Scale so the eliminated coefficient is +1 / -1, then add pairs.
    auto normalize = [v](AffineConstraint& c) {
      const Rational s = abs(c.coeffs[v]);
      for (auto& x : c.coeffs) x /= s;
      c.constant /= s;
    };
    for (auto& c : pos) normalize(c);
    for (auto& c : neg) normalize(c);
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        AffineConstraint sum;
        sum.coeffs.resize(v);
        for (std::size_t i = 0; i < v; ++i) sum.coeffs[i] = p.coeffs[i] + q.coeffs[i];
        sum.constant = p.constant + q.constant;
        sum.strict = p.strict || q.strict;
        next.push_back(std::move(sum));
      }
    }
    // Drop exact duplicates to keep the system small.
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) {
      if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
      if (a.constant != b.constant) return a.constant < b.constant;
      return a.strict < b.strict;
    });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const auto& a, const auto& b) {
                             return a.coeffs == b.coeffs && a.constant == b.constant &&
                                    a.strict == b.strict;
                           }),
               next.end());
    system = std::move(next);
    --vars;
  }
  return std::all_of(system.begin(), system.end(), [](const AffineConstraint& c) {
    return c.strict ? c.constant > 0 : c.constant >= 0;
  });
}

std::vector<AffineConstraint> open_simplex_constraints(const RationalMatrix& vertices) {
  const std::size_t d = vertices.size() - 1;
  // mu = M^{-1} (x - p0) with M = [p1 - p0, ..., pd - p0]; lambda_0 = 1 - sum(mu).
  RationalMatrix m(d, RationalVector(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m[i][j] = vertices[j + 1][i] - vertices[0][i];
  }
  auto inv = inverse(m);
  if (!inv) throw InvalidArgument("degenerate simplex");
  std::vector<AffineConstraint> out;
  AffineConstraint first{RationalVector(d, Rational(0)), Rational(1), true};
  for (std::size_t j = 0; j < d; ++j) {
    AffineConstraint c{(*inv)[j], Rational(0), true};
    for (std::size_t i = 0; i < d; ++i) c.constant -= (*inv)[j][i] * vertices[0][i];
    for (std::size_t i = 0; i < d; ++i) first.coeffs[i] -= c.coeffs[i];
    first.constant -= c.constant;
    out.push_back(std::move(c));
  }
  out.push_back(std::move(first));
  return out;
}

bool interiors_intersect(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.size() != b.size()) throw InvalidArgument("simplices of different dimension");
  if (a.size() == 1) return a[0] == b[0];
  auto system = open_simplex_constraints(a);
  auto more = open_simplex_constraints(b);
  system.insert(system.end(), more.begin(), more.end());
  return feasible(std::move(system));
}

Rational normalized_volume(const RationalMatrix& vertices) {
  if (vertices.size() <= 1) return Rational(1);
  const std::size_t d = vertices.size() - 1;
  RationalMatrix m(d, RationalVector(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m[i][j] = vertices[i + 1][j] - vertices[0][j];
  }
  return abs(determinant(std::move(m)));
}

std::size_t affine_dimension(const RationalMatrix& points) {
  if (points.size() <= 1) return 0;
  RationalMatrix m;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RationalVector row(points[i].size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = points[i][j] - points[0][j];
    m.push_back(std::move(row));
  }
  return matrix_rank(std::move(m));
}

}  // namespace ksubdiv
