#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "iceqp/rational.hpp"

namespace iceqp {

/// Sparse rational vector keyed by coordinate index.
using SparseVec = std::map<int, Rational>;

inline void axpy(SparseVec& y, const Rational& s, const SparseVec& x) {
  if (s == 0) return;
  for (const auto& [i, c] : x) {
    auto [it, inserted] = y.try_emplace(i, s * c);
    if (!inserted) {
      it->second += s * c;
      if (it->second == 0) y.erase(it);
    }
  }
}

inline SparseVec scaled(const SparseVec& x, const Rational& s) {
  SparseVec out;
  if (s == 0) return out;
  for (const auto& [i, c] : x) out.emplace(i, c * s);
  return out;
}

inline SparseVec unit(int i) { return SparseVec{{i, Rational(1)}}; }

/// Row echelon form in which every row's pivot is its largest coordinate
/// with coefficient 1. Reduction walks coordinates downward, so normal
/// forms are unique without back-substitution. With history enabled each
/// row remembers which inserted vectors it combines.
class Echelon {
 public:
  explicit Echelon(bool track_history = false) : track_(track_history) {}

  std::size_t rank() const { return rows_.size(); }
  bool has_pivot(int col) const { return rows_.count(col) > 0; }
  const std::map<int, SparseVec>& rows() const { return rows_; }

  SparseVec reduce(SparseVec v) const { return reduce_impl(std::move(v), nullptr); }

  /// Inserts v; returns true if the rank grew. If it did not and history is
  /// tracked, `dependency` receives the combination of inserted vectors that
  /// vanishes, keyed by insertion number.
  bool insert(SparseVec v, SparseVec* dependency = nullptr) {
    SparseVec hist;
    int id = static_cast<int>(inserted_++);
    if (track_) hist.emplace(id, Rational(1));
    v = reduce_impl(std::move(v), track_ ? &hist : nullptr);
    if (v.empty()) {
      if (dependency) *dependency = std::move(hist);
      return false;
    }
    int pivot = v.rbegin()->first;
    Rational inv = 1 / v.rbegin()->second;
    if (inv != 1) {
      for (auto& [i, c] : v) c *= inv;
      for (auto& [i, c] : hist) c *= inv;
    }
    rows_.emplace(pivot, std::move(v));
    if (track_) history_.emplace(pivot, std::move(hist));
    return true;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

 private:
  SparseVec reduce_impl(SparseVec v, SparseVec* hist) const {
    auto it = v.end();
    while (it != v.begin()) {
      --it;
      int col = it->first;
      auto row = rows_.find(col);
      if (row == rows_.end()) continue;
      Rational c = it->second;
      axpy(v, -c, row->second);
      if (hist) axpy(*hist, -c, history_.at(col));
      // The pivot entry is gone; resume just below it.
      it = v.lower_bound(col);
    }
    return v;
  }

  bool track_;
  std::size_t inserted_ = 0;
  std::map<int, SparseVec> rows_;
  std::map<int, SparseVec> history_;
};

/// Sparse matrix stored by columns.
struct Matrix {
  std::size_t rows = 0;
  std::vector<SparseVec> cols;

  std::size_t num_cols() const { return cols.size(); }

  SparseVec apply(const SparseVec& x) const {
    SparseVec out;
    for (const auto& [j, c] : x) axpy(out, c, cols.at(j));
    return out;
  }
};

/// A·B, requiring A.num_cols() == B.rows.
inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.num_cols() != b.rows) throw std::logic_error("matrix shapes do not compose");
  Matrix out{a.rows, {}};
  for (const auto& col : b.cols) out.cols.push_back(a.apply(col));
  return out;
}

inline bool is_zero(const Matrix& m) {
  for (const auto& c : m.cols)
    if (!c.empty()) return false;
  return true;
}

inline std::size_t rank(const Matrix& m) {
  Echelon e;
  for (const auto& c : m.cols) e.insert(c);
  return e.rank();
}

/// Basis of the null space of m, as combinations of its columns.
inline std::vector<SparseVec> kernel(const Matrix& m) {
  Echelon e(true);
  std::vector<SparseVec> out;
  for (const auto& c : m.cols) {
    SparseVec dep;
    if (!e.insert(c, &dep)) out.push_back(std::move(dep));
  }
  return out;
}

}  // namespace iceqp
