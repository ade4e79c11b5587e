#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ksubdiv {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultDenseCap = 4'000'000;

/// Column-major sparse integer matrix.
class SparseIntMatrix {
 public:
  SparseIntMatrix(int rows, int cols) : rows_(rows), columns_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(columns_.size()); }

  /// Adds `value` to entry (row, col).
  void add(int row, int col, const BigInt& value);
  BigInt at(int row, int col) const;

  /// Entries of one column, sorted by row, zeros dropped.
  const std::vector<std::pair<int, BigInt>>& column(int col) const { return columns_[col]; }

  /// this * rhs
  SparseIntMatrix multiply(const SparseIntMatrix& rhs) const;
  bool is_zero() const;

 private:
  int rows_;
  std::vector<std::vector<std::pair<int, BigInt>>> columns_;
};

struct SmithSummary {
  std::size_t rank = 0;
  /// Invariant factors greater than one, each dividing the next.
  std::vector<BigInt> torsion;
};

/// Rank and nontrivial invariant factors of the Smith normal form.
///
/// Unit pivots are eliminated sparsely first; whatever is left is reduced
/// densely with arbitrary-precision entries. Throws ResourceLimit if that
/// dense remainder has more than `max_dense_entries` entries.
SmithSummary smith_normal_form(const SparseIntMatrix& m,
                               std::size_t max_dense_entries = kDefaultDenseCap);

/// Full Smith diagonal of a small dense matrix (all min(rows, cols) entries,
/// zeros included, nonnegative, each dividing the next).
std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> dense);

}  // namespace ksubdiv
