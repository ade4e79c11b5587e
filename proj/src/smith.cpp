#include "ksubdiv/smith.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ksubdiv/error.hpp"

namespace ksubdiv {

void SparseIntMatrix::add(int row, int col, const BigInt& value) {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols()) {
    throw InvalidArgument("matrix entry out of range");
  }
  auto& c = columns_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const auto& e, int r) { return e.first < r; });
  if (it != c.end() && it->first == row) {
    it->second += value;
    if (it->second == 0) c.erase(it);
  } else if (value != 0) {
    c.insert(it, {row, value});
  }
}

BigInt SparseIntMatrix::at(int row, int col) const {
  const auto& c = columns_.at(col);
  auto it = std::lower_bound(c.begin(), c.end(), row,
                             [](const auto& e, int r) { return e.first < r; });
  return (it != c.end() && it->first == row) ? it->second : BigInt(0);
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& rhs) const {
  if (cols() != rhs.rows()) throw InvalidArgument("matrix dimensions do not agree");
  SparseIntMatrix out(rows_, rhs.cols());
  for (int j = 0; j < rhs.cols(); ++j) {
    std::map<int, BigInt> acc;
    for (const auto& [k, v] : rhs.column(j)) {
      for (const auto& [i, w] : columns_[k]) acc[i] += w * v;
    }
    for (const auto& [i, v] : acc) {
      if (v != 0) out.columns_[j].emplace_back(i, v);
    }
  }
  return out;
}

bool SparseIntMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
}

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  const std::size_t diag = std::min(rows, cols);
  std::vector<BigInt> out;

  for (std::size_t t = 0; t < diag; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto find_pivot = [&](std::size_t& pr, std::size_t& pc) {
      bool found = false;
      BigInt best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          BigInt v = abs(a[i][j]);
          if (!found || v < best) {
            best = v;
            pr = i;
            pc = j;
            found = true;
          }
        }
      }
      return found;
    };

    std::size_t pr = 0, pc = 0;
    if (!find_pivot(pr, pc)) {
      out.resize(diag, BigInt(0));
      break;
    }

    while (true) {
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const BigInt q = floor_div(a[i][t], a[t][t]);
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const BigInt q = floor_div(a[t][j], a[t][t]);
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        // A remainder is smaller than the pivot; restart with it.
        BigInt best = abs(a[t][t]);
        pr = t;
        pc = t;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a[i][t] != 0 && abs(a[i][t]) < best) {
            best = abs(a[i][t]);
            pr = i;
            pc = t;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[t][j] != 0 && abs(a[t][j]) < best) {
            best = abs(a[t][j]);
            pr = t;
            pc = j;
          }
        }
        continue;
      }

      // Row and column are clear; enforce divisibility of the rest.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
      pr = t;
      pc = t;
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

SmithSummary smith_normal_form(const SparseIntMatrix& m, std::size_t max_dense_entries) {
  // Working copy: per-column ordered maps plus a row -> columns index.
  std::vector<std::map<int, BigInt>> cols(m.cols());
  std::vector<std::set<int>> rows(m.rows());
  for (int j = 0; j < m.cols(); ++j) {
    for (const auto& [i, v] : m.column(j)) {
      cols[j].emplace(i, v);
      rows[i].insert(j);
    }
  }
  std::vector<bool> active(m.cols(), true);

  SmithSummary summary;
  while (true) {
    // Unit pivot with the smallest Markowitz cost.
    int best_row = -1, best_col = -1;
    std::size_t best_cost = 0;
    for (int j = 0; j < m.cols() && !(best_col >= 0 && best_cost == 0); ++j) {
      if (!active[j] || cols[j].empty()) continue;
      for (const auto& [i, v] : cols[j]) {
        if (v != 1 && v != -1) continue;
        const std::size_t cost = (rows[i].size() - 1) * (cols[j].size() - 1);
        if (best_col < 0 || cost < best_cost) {
          best_row = i;
          best_col = j;
          best_cost = cost;
          if (cost == 0) break;
        }
      }
    }
    if (best_col < 0) break;

    const BigInt unit = cols[best_col].at(best_row);
    const std::vector<int> others(rows[best_row].begin(), rows[best_row].end());
    for (int j : others) {
      if (j == best_col) continue;
      const BigInt factor = cols[j].at(best_row) * unit;
      for (const auto& [i, v] : cols[best_col]) {
        BigInt& entry = cols[j][i];
        entry -= factor * v;
        if (entry == 0) {
          cols[j].erase(i);
          rows[i].erase(j);
        } else {
          rows[i].insert(j);
        }
      }
    }
    for (const auto& [i, v] : cols[best_col]) rows[i].erase(best_col);
    cols[best_col].clear();
    active[best_col] = false;
    ++summary.rank;
  }

  std::vector<int> rest_rows, rest_cols;
  for (int i = 0; i < m.rows(); ++i) {
    if (!rows[i].empty()) rest_rows.push_back(i);
  }
  for (int j = 0; j < m.cols(); ++j) {
    if (!cols[j].empty()) rest_cols.push_back(j);
  }
  if (rest_rows.empty()) return summary;
  if (rest_rows.size() * rest_cols.size() > max_dense_entries) {
    throw ResourceLimit("dense Smith normal form remainder of " + std::to_string(rest_rows.size()) +
                        "x" + std::to_string(rest_cols.size()) + " exceeds the cap");
  }
  std::vector<std::vector<BigInt>> dense(rest_rows.size(),
                                         std::vector<BigInt>(rest_cols.size(), BigInt(0)));
  for (std::size_t c = 0; c < rest_cols.size(); ++c) {
    for (const auto& [i, v] : cols[rest_cols[c]]) {
      const auto r = std::lower_bound(rest_rows.begin(), rest_rows.end(), i) - rest_rows.begin();
      dense[r][c] = v;
    }
  }
  for (const auto& d : smith_diagonal(std::move(dense))) {
    if (d == 0) continue;
    ++summary.rank;
    if (d != 1) summary.torsion.push_back(d);
  }
  return summary;
}

}  // namespace ksubdiv
