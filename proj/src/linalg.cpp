#include "liesym/linalg.hpp"

#include "liesym/errors.hpp"

#include <algorithm>

namespace liesym {

SparseVec to_sparse(const Vec &v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero())
      s.emplace_back(i, v[i]);
  return s;
}

bool is_zero(const Vec &v) {
  return std::all_of(v.begin(), v.end(), [](const Rational &r) { return r.is_zero(); });
}

Vec RowReducer::reduce_dense(Vec v) const {
  for (const auto &[p, row] : rows_) {
    if (v[p].is_zero())
      continue;
    Rational f = v[p];
    for (const auto &[c, x] : row)
      v[c] -= f * x;
  }
  return v;
}

bool RowReducer::add(const Vec &row) {
  if (row.size() != ncols_)
    throw MathError("row length mismatch in row reduction");
  Vec v = reduce_dense(row);
  std::size_t lead = ncols_;
  for (std::size_t c = 0; c < ncols_; ++c)
    if (!v[c].is_zero()) {
      lead = c;
      break;
    }
  if (lead == ncols_)
    return false;
  Rational inv = v[lead].inverse();
  SparseVec nr;
  for (std::size_t c = lead; c < ncols_; ++c)
    if (!v[c].is_zero())
      nr.emplace_back(c, c == lead ? Rational(1) : v[c] * inv);
  // clear the new pivot column from the existing rows
  for (auto &[p, row] : rows_) {
    auto it = std::lower_bound(row.begin(), row.end(), lead,
                               [](const auto &e, std::size_t c) { return e.first < c; });
    if (it == row.end() || it->first != lead)
      continue;
    Rational f = it->second;
    SparseVec merged;
    merged.reserve(row.size() + nr.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < nr.size()) {
      if (j == nr.size() || (i < row.size() && row[i].first < nr[j].first)) {
        merged.push_back(row[i++]);
      } else if (i == row.size() || nr[j].first < row[i].first) {
        merged.emplace_back(nr[j].first, -(f * nr[j].second));
        ++j;
      } else {
        Rational x = row[i].second - f * nr[j].second;
        if (!x.is_zero())
          merged.emplace_back(row[i].first, x);
        ++i;
        ++j;
      }
    }
    row = std::move(merged);
  }
  auto pos = std::lower_bound(rows_.begin(), rows_.end(), lead,
                              [](const auto &e, std::size_t c) { return e.first < c; });
  rows_.insert(pos, {lead, std::move(nr)});
  return true;
}

bool RowReducer::add(const SparseVec &row) {
  Vec d(ncols_);
  for (const auto &[c, x] : row) {
    if (c >= ncols_)
      throw MathError("column index out of range in row reduction");
    d[c] += x;
  }
  return add(d);
}

std::vector<std::size_t> RowReducer::pivots() const {
  std::vector<std::size_t> p;
  for (const auto &r : rows_)
    p.push_back(r.first);
  return p;
}

Mat RowReducer::rref() const {
  Mat m;
  for (const auto &[p, row] : rows_) {
    Vec d(ncols_);
    for (const auto &[c, x] : row)
      d[c] = x;
    m.push_back(std::move(d));
  }
  return m;
}

Mat RowReducer::nullspace() const {
  std::vector<bool> is_pivot(ncols_, false);
  for (const auto &r : rows_)
    is_pivot[r.first] = true;
  Mat basis;
  for (std::size_t f = 0; f < ncols_; ++f) {
    if (is_pivot[f])
      continue;
    Vec v(ncols_);
    v[f] = Rational(1);
    for (const auto &[p, row] : rows_) {
      auto it = std::lower_bound(row.begin(), row.end(), f,
                                 [](const auto &e, std::size_t c) { return e.first < c; });
      if (it != row.end() && it->first == f)
        v[p] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Vec RowReducer::remainder(const Vec &row) const { return reduce_dense(row); }

std::size_t rank(const Mat &rows) {
  if (rows.empty())
    return 0;
  RowReducer r(rows[0].size());
  for (const auto &v : rows)
    r.add(v);
  return r.rank();
}

Mat span_basis(const Mat &vectors) {
  if (vectors.empty())
    return {};
  RowReducer r(vectors[0].size());
  for (const auto &v : vectors)
    r.add(v);
  return r.rref();
}

std::optional<Vec> express(const Mat &basis, const Vec &v) {
  const std::size_t m = basis.size();
  const std::size_t n = v.size();
  RowReducer r(m + 1);
  for (std::size_t j = 0; j < n; ++j) {
    Vec row(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i].size() != n)
        throw MathError("vector length mismatch");
      row[i] = basis[i][j];
    }
    row[m] = v[j];
    r.add(row);
  }
  Mat rr = r.rref();
  auto piv = r.pivots();
  Vec c(m);
  for (std::size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] == m)
      return std::nullopt;
    c[piv[k]] = rr[k][m];
  }
  if (piv.size() < m)
    throw MathError("basis is linearly dependent");
  return c;
}

Mat nullspace(const Mat &m, std::size_t ncols) {
  RowReducer r(ncols);
  for (const auto &row : m)
    r.add(row);
  return r.nullspace();
}

Rational determinant(Mat m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero())
      ++p;
    if (p == n)
      return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rational inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero())
        continue;
      Rational f = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k)
        m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

} // namespace liesym
