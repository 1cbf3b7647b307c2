#pragma once

#include <optional>
#include <vector>

#include "whitney/rational.hpp"

namespace whitney {

// Small dense rational matrix. Row-major, value semantics.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static RatMat identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static RatMat from_rows(const std::vector<std::vector<Rat>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    RatMat m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c)
        throw std::invalid_argument("ragged matrix rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<Rat> row(int i) const {
    return {a_.begin() + static_cast<size_t>(i) * cols_,
            a_.begin() + static_cast<size_t>(i + 1) * cols_};
  }
  void append_row(const std::vector<Rat>& r) {
    if (cols_ == 0 && rows_ == 0) cols_ = static_cast<int>(r.size());
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("row size mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }

  bool operator==(const RatMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

inline RatMat transpose(const RatMat& m) {
  RatMat t(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

inline RatMat mat_mul(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul shape mismatch");
  RatMat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

inline std::vector<Rat> mat_vec(const RatMat& a, const std::vector<Rat>& x) {
  if (a.cols() != static_cast<int>(x.size())) throw std::invalid_argument("mat_vec shape");
  std::vector<Rat> r(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0) r[i] += a.at(i, j) * x[j];
  return r;
}

// Gauss-Jordan to reduced row echelon form. Returns the pivot columns;
// rank = pivot count.
inline std::vector<int> rref_in_place(RatMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, col) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = m.at(r, col);
    for (int j = col; j < m.cols(); ++j) m.at(r, j) /= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, col) == 0) continue;
      Rat f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

// Fraction-free (Bareiss) elimination on integers; returns the rank.
inline int rank_int_bareiss(std::vector<std::vector<Int>> a) {
  int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(a[0].size());
  Int prev = 1;
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][col] != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r) a[p].swap(a[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j)
        a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++r;
  }
  return r;
}

// Bareiss determinant of a square integer matrix.
inline Int det_int_bareiss(std::vector<std::vector<Int>> a) {
  int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    int p = -1;
    for (int i = k; i < n; ++i)
      if (a[i][k] != 0) { p = i; break; }
    if (p < 0) return 0;
    if (p != k) {
      a[p].swap(a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

// Clears denominators row by row (rank is invariant under row scaling).
inline std::vector<std::vector<Int>> integer_rows(const RatMat& m) {
  std::vector<std::vector<Int>> rows(m.rows(), std::vector<Int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (int j = 0; j < m.cols(); ++j) l = lcm(l, denominator(m.at(i, j)));
    for (int j = 0; j < m.cols(); ++j)
      rows[i][j] = numerator(m.at(i, j)) * (l / denominator(m.at(i, j)));
  }
  return rows;
}

inline int rank_of(const RatMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rank_int_bareiss(integer_rows(m));
}

// Basis of {x : Cx = 0} as rows, in deterministic echelon form
// (one row per free column of the rref).
inline RatMat nullspace(const RatMat& c) {
  RatMat m = c;
  std::vector<int> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(c.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  RatMat basis(0, c.cols());
  for (int f = 0; f < c.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(c.cols());
    v[f] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(static_cast<int>(i), f);
    basis.append_row(v);
  }
  return basis;
}

// Particular solution of Ax = b with free variables set to zero, or nullopt
// when the system is inconsistent.
inline std::optional<std::vector<Rat>> solve_particular(const RatMat& a,
                                                        const std::vector<Rat>& b) {
  RatMat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[static_cast<size_t>(i)];
  }
  std::vector<int> pivots = rref_in_place(aug);
  for (int p : pivots)
    if (p == a.cols()) return std::nullopt;
  std::vector<Rat> x(a.cols());
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(static_cast<int>(i), a.cols());
  return x;
}

// det of the Gram matrix of the given vectors (exact). Denominators are
// cleared per vector so the heavy lifting runs on integers.
inline Rat gram_det(const std::vector<std::vector<Rat>>& vecs) {
  int k = static_cast<int>(vecs.size());
  if (k == 0) return Rat(1);
  std::vector<std::vector<Int>> w(k);
  Int denom_prod = 1;
  for (int i = 0; i < k; ++i) {
    Int l = 1;
    for (const Rat& v : vecs[i]) l = lcm(l, denominator(v));
    w[i].resize(vecs[i].size());
    for (size_t j = 0; j < vecs[i].size(); ++j)
      w[i][j] = numerator(vecs[i][j]) * (l / denominator(vecs[i][j]));
    denom_prod *= l;
  }
  std::vector<std::vector<Int>> g(k, std::vector<Int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      Int s = 0;
      for (size_t t = 0; t < w[i].size(); ++t) s += w[i][t] * w[j][t];
      g[i][j] = s;
      g[j][i] = s;
    }
  Int d = det_int_bareiss(std::move(g));
  return Rat(d, denom_prod * denom_prod);
}

}  // namespace whitney
