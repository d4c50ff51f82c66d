#pragma once

// Dense exact linear algebra over Q(sqrt 3).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coneforge/errors.hpp"
#include "coneforge/scalar.hpp"

namespace coneforge {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(std::size_t n) { return Vec(n); }
inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v.at(i) = Scalar(1);
  return v;
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline Vec& add_scaled(Vec& acc, const Vec& v, const Scalar& factor) {
  if (acc.size() != v.size()) throw DimensionError("vector length mismatch");
  if (factor.is_zero()) return acc;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) acc[i] += factor * v[i];
  }
  return acc;
}

inline Vec operator+(Vec a, const Vec& b) { return add_scaled(a, b, Scalar(1)); }
inline Vec operator-(Vec a, const Vec& b) { return add_scaled(a, b, Scalar(-1)); }
inline Vec operator*(const Scalar& s, Vec v) {
  for (auto& x : v) x *= s;
  return v;
}

inline Scalar dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("vector length mismatch");
  Scalar acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  }
  return acc;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }
  static Matrix diagonal(const Vec& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(std::span<const Vec> cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw DimensionError("column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  Vec row(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Scalar trace() const {
    Scalar t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }
  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }
  bool is_identity() const { return *this == identity(rows_); }
  bool is_diagonal() const {
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (r != c && !(*this)(r, c).is_zero()) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const Scalar& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Scalar& s, Matrix m) { return m *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& ark = a(r, k);
        if (ark.is_zero()) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) {
          const Scalar& bkc = b(k, c);
          if (!bkc.is_zero()) p(r, c) += ark * bkc;
        }
      }
    return p;
  }

  friend Vec operator*(const Matrix& a, const Vec& v) {
    if (a.cols_ != v.size()) throw DimensionError("matrix-vector shape mismatch");
    Vec out(a.rows_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < a.cols_; ++c)
        if (!a(r, c).is_zero() && !v[c].is_zero()) out[r] += a(r, c) * v[c];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Bilinear form value x^T B y.
inline Scalar bilinear(const Matrix& b, const Vec& x, const Vec& y) { return dot(x, b * y); }

/// Trace of a*b without forming the product.
inline Scalar trace_of_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw DimensionError("trace product shape mismatch");
  Scalar t;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!a(r, k).is_zero() && !b(k, r).is_zero()) t += a(r, k) * b(k, r);
  return t;
}

/// Fraction-free (Bareiss) elimination without pivoting. Returns the leading
/// principal minors d_1..d_k computed before the first vanishing pivot.
inline std::vector<Scalar> leading_minors(Matrix m) {
  if (!m.square()) throw DimensionError("leading minors need a square matrix");
  const std::size_t n = m.rows();
  std::vector<Scalar> minors;
  Scalar prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k).is_zero()) {
      minors.push_back(Scalar());
      break;
    }
    minors.push_back(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return minors;
}

/// Exact determinant by fraction-free Bareiss elimination with row pivoting.
inline Scalar determinant(Matrix m) {
  if (!m.square()) throw DimensionError("determinant needs a square matrix");
  const std::size_t n = m.rows();
  Scalar prev(1);
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k).is_zero()) ++piv;
    if (piv == n) return Scalar();
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign > 0 ? prev : -prev;
}

/// Positive definiteness via exact leading principal minors.
inline bool is_positive_definite(const Matrix& m) {
  if (!m.is_symmetric()) return false;
  const auto minors = leading_minors(m);
  if (minors.size() != m.rows()) return false;
  return std::all_of(minors.begin(), minors.end(), [](const Scalar& s) { return s.sign() > 0; });
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(piv, c));
    const Scalar inv = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Scalar f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return row_reduce(m).size(); }

/// Basis of {x : m x = 0}.
inline std::vector<Vec> nullspace(Matrix m) {
  const auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols());
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b, or nullopt when inconsistent.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  if (a.rows() != b.size()) throw DimensionError("right-hand side length mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.square()) throw DimensionError("inverse needs a square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = Scalar(1);
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

/// A linear subspace of coordinate space, stored as the rows of its reduced
/// echelon basis.
class Subspace {
 public:
  Subspace() = default;

  static Subspace span(std::span<const Vec> vectors, std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    if (vectors.empty()) return s;
    Matrix m(vectors.size(), ambient);
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      if (vectors[r].size() != ambient) throw DimensionError("subspace vector length mismatch");
      for (std::size_t c = 0; c < ambient; ++c) m(r, c) = vectors[r][c];
    }
    const auto pivots = row_reduce(m);
    for (std::size_t r = 0; r < pivots.size(); ++r) s.basis_.push_back(m.row(r));
    return s;
  }

  /// Span of the given coordinate axes.
  static Subspace coordinate(std::span<const std::size_t> axes, std::size_t ambient) {
    std::vector<Vec> vs;
    for (auto a : axes) {
      if (a >= ambient) throw DimensionError("coordinate index out of range");
      vs.push_back(unit_vec(ambient, a));
    }
    return span(vs, ambient);
  }

  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t ambient() const noexcept { return ambient_; }
  const std::vector<Vec>& basis() const noexcept { return basis_; }

  bool contains(const Vec& v) const {
    std::vector<Vec> all = basis_;
    all.push_back(v);
    return span(all, ambient_).dim() == dim();
  }

  /// Complement with respect to the bilinear form `gram`.
  Subspace orthogonal_complement(const Matrix& gram) const {
    if (basis_.empty()) {
      std::vector<Vec> all;
      for (std::size_t i = 0; i < ambient_; ++i) all.push_back(unit_vec(ambient_, i));
      return span(all, ambient_);
    }
    Matrix b(basis_.size(), ambient_);
    for (std::size_t r = 0; r < basis_.size(); ++r)
      for (std::size_t c = 0; c < ambient_; ++c) b(r, c) = basis_[r][c];
    return span(nullspace(b * gram), ambient_);
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
};

/// Exact echelon form built one sparse equation at a time. Equations are
/// sum_c coeff[c] * x_c = rhs.
class IncrementalSolver {
 public:
  using Row = std::map<std::size_t, Scalar>;
  enum class Outcome { independent, redundant, inconsistent };

  explicit IncrementalSolver(std::size_t unknowns) : unknowns_(unknowns) {}

  std::size_t unknowns() const noexcept { return unknowns_; }
  std::size_t rank() const noexcept { return pivots_.size(); }
  bool determined() const noexcept { return rank() == unknowns_; }

  Outcome add(Row coeffs, Scalar rhs) {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
      if (it->second.is_zero()) {
        it = coeffs.erase(it);
        continue;
      }
      auto piv = pivots_.find(it->first);
      if (piv == pivots_.end()) {
        ++it;
        continue;
      }
      const std::size_t col = it->first;
      const Scalar factor = it->second;  // pivot rows are normalised to 1
      for (const auto& [c, v] : piv->second.coeffs) {
        Scalar& slot = coeffs[c];
        slot -= factor * v;
      }
      rhs -= factor * piv->second.rhs;
      coeffs.erase(col);
      // elimination only touches columns above col
      it = coeffs.upper_bound(col);
    }
    if (coeffs.empty()) return rhs.is_zero() ? Outcome::redundant : Outcome::inconsistent;
    const std::size_t col = coeffs.begin()->first;
    const Scalar inv = coeffs.begin()->second.inverse();
    for (auto& [c, v] : coeffs) v *= inv;
    rhs *= inv;
    pivots_.emplace(col, Equation{std::move(coeffs), std::move(rhs)});
    return Outcome::independent;
  }

  /// Back substitution with free unknowns set to zero.
  Vec solution() const {
    Vec x(unknowns_);
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      Scalar v = it->second.rhs;
      for (const auto& [c, coeff] : it->second.coeffs)
        if (c != it->first) v -= coeff * x[c];
      x[it->first] = v;
    }
    return x;
  }

 private:
  struct Equation {
    Row coeffs;
    Scalar rhs;
  };
  std::size_t unknowns_;
  std::map<std::size_t, Equation> pivots_;
};

}  // namespace coneforge
