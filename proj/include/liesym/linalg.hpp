#pragma once

#include "liesym/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace liesym {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;
using SparseVec = std::vector<std::pair<std::size_t, Rational>>; // sorted by index

/// Incremental exact row reduction. Rows are kept in reduced row-echelon
/// form at all times; pivots are the leading columns in index order.
class RowReducer {
public:
  explicit RowReducer(std::size_t ncols) : ncols_(ncols) {}

  /// Returns true when the row was independent of the rows added so far.
  bool add(const SparseVec &row);
  bool add(const Vec &row);

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  /// Pivot columns in increasing order.
  std::vector<std::size_t> pivots() const;
  /// RREF rows in pivot order, dense.
  Mat rref() const;
  /// Basis of {x : A x = 0}, one vector per free column in increasing order.
  Mat nullspace() const;
  /// The row minus its projection onto the current row space, expressed in
  /// the non-pivot columns (zero iff the row lies in the span).
  Vec remainder(const Vec &row) const;

private:
  Vec reduce_dense(Vec v) const;
  std::size_t ncols_;
  // pivot column -> reduced sparse row (pivot entry is 1)
  std::vector<std::pair<std::size_t, SparseVec>> rows_;
};

SparseVec to_sparse(const Vec &v);
bool is_zero(const Vec &v);

/// Rank of the row set.
std::size_t rank(const Mat &rows);
/// RREF basis of the span of the given vectors.
Mat span_basis(const Mat &vectors);
/// Coefficients c with sum_i c_i basis[i] = v, or nullopt when v is outside
/// the span. The basis must be linearly independent.
std::optional<Vec> express(const Mat &basis, const Vec &v);
/// Basis of {x : sum_j M[i][j] x_j = 0 for all i}.
Mat nullspace(const Mat &m, std::size_t ncols);
/// Determinant of a square rational matrix.
Rational determinant(Mat m);

} // namespace liesym
