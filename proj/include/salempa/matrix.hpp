#pragma once

// Dense exact rational matrices. The characteristic polynomial uses the
// Berkowitz algorithm (division free), so charpoly and determinant of any
// rational matrix are exact; inversion is Gauss-Jordan over Q.
// hnf_column_basis provides a Z-basis of an integer column lattice, used by
// the matrix-power integrality machinery.

#include <string>
#include <utility>
#include <vector>

#include "salempa/poly.hpp"
#include "salempa/rational.hpp"

namespace salempa {

class RatMatrix {
 public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {
    if (rows < 0 || cols < 0) throw precondition_error("negative matrix dimension");
  }
  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static RatMatrix from_rows(std::vector<std::vector<Rat>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    RatMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c) throw precondition_error("ragged matrix rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = std::move(rows[i][j]);
    }
    return m;
  }
  static RatMatrix from_int_rows(const std::vector<std::vector<long long>>& rows) {
    std::vector<std::vector<Rat>> r;
    r.reserve(rows.size());
    for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
    return from_rows(std::move(r));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  RatMatrix operator-() const {
    RatMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
  }
  friend RatMatrix operator+(const RatMatrix& x, const RatMatrix& y) {
    x.check_same_shape(y);
    RatMatrix r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
    return r;
  }
  friend RatMatrix operator-(const RatMatrix& x, const RatMatrix& y) {
    x.check_same_shape(y);
    RatMatrix r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
    return r;
  }
  friend RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
    if (x.cols_ != y.rows_) throw precondition_error("matrix product shape mismatch");
    RatMatrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const Rat& v = x.at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < y.cols_; ++j) r.at(i, j) += v * y.at(k, j);
      }
    return r;
  }
  friend RatMatrix operator*(const Rat& c, const RatMatrix& x) {
    RatMatrix r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = c * x.a_[i];
    return r;
  }

  RatMatrix transposed() const {
    RatMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = i + 1; j < cols_; ++j)
        if (at(i, j) != at(j, i)) return false;
    return true;
  }
  bool is_integral() const {
    for (const Rat& v : a_)
      if (rat_den(v) != 1) return false;
    return true;
  }
  // all entries >= floor
  bool entries_at_least(const Rat& floor_value) const {
    for (const Rat& v : a_)
      if (v < floor_value) return false;
    return true;
  }
  Rat trace() const {
    require_square();
    Rat t = 0;
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }
  Int denominator_lcm() const {
    Int l = 1;
    for (const Rat& v : a_) l = lcm_int(l, rat_den(v));
    return l;
  }

  // Exact characteristic polynomial det(xI - A), monic, by Berkowitz.
  RatPoly char_poly() const {
    require_square();
    const int n = rows_;
    if (n == 0) return RatPoly::constant(Rat(1));
    // C holds the coefficient vector of the current leading principal
    // submatrix, highest degree first.
    std::vector<Rat> C{Rat(1), -at(0, 0)};
    for (int r = 2; r <= n; ++r) {
      // Toeplitz column entries: q_k = R * B^k * Col for the r-th step
      const int m = r - 1;
      std::vector<Rat> row(m), col(m);
      for (int j = 0; j < m; ++j) row[j] = at(m, j);
      for (int i = 0; i < m; ++i) col[i] = at(i, m);
      std::vector<Rat> q(m, Rat(0));  // q[0] = R*Col, q[k] = R*B^k*Col
      std::vector<Rat> cur = col;
      for (int k = 0; k < m; ++k) {
        Rat dot = 0;
        for (int j = 0; j < m; ++j) dot += row[j] * cur[j];
        q[k] = dot;
        if (k + 1 < m) {
          std::vector<Rat> next(m, Rat(0));
          for (int i = 0; i < m; ++i) {
            if (cur[i] == 0) continue;
            for (int i2 = 0; i2 < m; ++i2) next[i2] += at(i2, i) * cur[i];
          }
          cur = std::move(next);
        }
      }
      std::vector<Rat> next(r + 1, Rat(0));
      // multiply C by the lower triangular Toeplitz column (1, -a, -q0, -q1, ...)
      for (size_t i = 0; i < C.size(); ++i) {
        next[i] += C[i];
        if (i + 1 <= static_cast<size_t>(r)) next[i + 1] -= at(m, m) * C[i];
        for (int k = 0; i + 2 + k <= static_cast<size_t>(r); ++k) next[i + 2 + k] -= q[k] * C[i];
      }
      C = std::move(next);
    }
    std::vector<Rat> coeffs(C.rbegin(), C.rend());  // lowest degree first
    return RatPoly(std::move(coeffs));
  }

  Rat det() const {
    require_square();
    RatPoly cp = char_poly();
    Rat c0 = cp.coeff(0);
    return rows_ % 2 == 0 ? c0 : -c0;
  }

  RatMatrix inverse() const {
    require_square();
    const int n = rows_;
    RatMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, n + i) = 1;
    }
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int i = col; i < n; ++i)
        if (aug.at(i, col) != 0) { piv = i; break; }
      if (piv < 0) throw precondition_error("matrix is singular");
      if (piv != col)
        for (int j = 0; j < 2 * n; ++j) std::swap(aug.at(piv, j), aug.at(col, j));
      Rat inv = Rat(1) / aug.at(col, col);
      for (int j = 0; j < 2 * n; ++j) aug.at(col, j) *= inv;
      for (int i = 0; i < n; ++i) {
        if (i == col || aug.at(i, col) == 0) continue;
        Rat f = aug.at(i, col);
        for (int j = 0; j < 2 * n; ++j) aug.at(i, j) -= f * aug.at(col, j);
      }
    }
    RatMatrix out(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
  }

  RatMatrix power(long long k) const {
    require_square();
    if (k < 0) return inverse().power(-k);
    RatMatrix result = identity(rows_);
    RatMatrix base = *this;
    while (k) {
      if (k & 1) result = result * base;
      base = base * base;
      k >>= 1;
    }
    return result;
  }

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
  void require_square() const {
    if (!is_square()) throw precondition_error("square matrix required");
  }
  void check_same_shape(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw precondition_error("matrix shape mismatch");
  }
};

// Z-basis (as columns) of the lattice spanned by the given integer columns,
// by column-style Hermite reduction. The columns must span full rank n.
inline std::vector<std::vector<Int>> hnf_column_basis(std::vector<std::vector<Int>> cols, int n) {
  for (const auto& c : cols)
    if (static_cast<int>(c.size()) != n) throw precondition_error("hnf: column size mismatch");
  std::vector<std::vector<Int>> basis;
  for (int row = 0; row < n; ++row) {
    // Euclid across all columns with a nonzero entry in this row.
    while (true) {
      int best = -1;
      for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j][row] == 0) continue;
        if (best < 0 || abs_of(cols[j][row]) < abs_of(cols[best][row])) best = static_cast<int>(j);
      }
      if (best < 0) throw precondition_error("hnf: columns do not span full rank");
      bool reduced_any = false;
      for (size_t j = 0; j < cols.size(); ++j) {
        if (static_cast<int>(j) == best || cols[j][row] == 0) continue;
        Int q = cols[j][row] / cols[best][row];  // truncated division
        if (q != 0)
          for (int i = 0; i < n; ++i) cols[j][i] -= q * cols[best][i];
        if (cols[j][row] != 0) reduced_any = true;
      }
      if (!reduced_any) {
        // pivot found; normalize sign, extract, and drop zero-row columns
        if (cols[best][row] < 0)
          for (int i = 0; i < n; ++i) cols[best][i] = -cols[best][i];
        basis.push_back(cols[best]);
        cols.erase(cols.begin() + best);
        for (size_t j = 0; j < cols.size();) {
          if (cols[j][row] != 0) throw internal_error("hnf: reduction left a nonzero entry");
          ++j;
        }
        break;
      }
    }
  }
  return basis;
}

}  // namespace salempa
