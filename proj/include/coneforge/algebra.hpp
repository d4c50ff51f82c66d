#pragma once

// Finite-dimensional algebras with involution and metric, given by exact
// structure constants e_i * e_j = sum_k c[i][j][k] e_k.

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coneforge/errors.hpp"
#include "coneforge/matrix.hpp"
#include "coneforge/report.hpp"

namespace coneforge {

enum class Side { left, right };
enum class Field { rational, sqrt3 };

inline const char* field_tag(Field f) { return f == Field::rational ? "Q" : "Qr3"; }

struct StructureEntry {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Scalar c;
};

using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

inline SparseVec sparsify(const Vec& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(i, v[i]);
  return s;
}

class Algebra {
 public:
  struct Term {
    std::size_t k;
    Scalar c;
  };

  /// Throws DomainError when the metric is not symmetric and nondegenerate,
  /// when the involution does not square to one, or when `commutative` is
  /// set for a non-commutative table.
  Algebra(std::string name, std::size_t dim, const std::vector<StructureEntry>& entries, Matrix metric,
          std::optional<Matrix> involution = std::nullopt, bool commutative = false)
      : name_(std::move(name)),
        dim_(dim),
        products_(dim * dim),
        metric_(std::move(metric)),
        involution_(involution ? std::move(*involution) : Matrix::identity(dim)),
        explicit_involution_(involution.has_value()),
        commutative_(commutative) {
    if (dim_ == 0) throw DomainError("algebra dimension must be positive");
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> acc;
    for (const auto& e : entries) {
      if (e.i >= dim_ || e.j >= dim_ || e.k >= dim_) throw DomainError("structure index out of range");
      acc[{e.i, e.j, e.k}] += e.c;
    }
    for (auto& [key, c] : acc) {
      if (c.is_zero()) continue;
      const auto [i, j, k] = key;
      products_[i * dim_ + j].push_back(Term{k, c});
    }
    validate();
    for (std::size_t r = 0; r < dim_; ++r) metric_rows_.push_back(sparsify(metric_.row(r)));
    metric_is_identity_ = metric_.is_identity();
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  const Matrix& metric() const noexcept { return metric_; }
  const Matrix& involution() const noexcept { return involution_; }
  bool has_explicit_involution() const noexcept { return explicit_involution_; }
  bool commutative() const noexcept { return commutative_; }
  bool metric_is_identity() const noexcept { return metric_is_identity_; }

  Field field() const {
    auto irrational = [](const Scalar& s) { return !s.is_rational(); };
    for (const auto& terms : products_)
      for (const auto& t : terms)
        if (irrational(t.c)) return Field::sqrt3;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c)
        if (irrational(metric_(r, c)) || irrational(involution_(r, c))) return Field::sqrt3;
    return Field::rational;
  }

  /// Nonzero terms of e_i * e_j, sorted by k.
  const std::vector<Term>& product(std::size_t i, std::size_t j) const { return products_.at(i * dim_ + j); }

  Scalar coefficient(std::size_t i, std::size_t j, std::size_t k) const {
    for (const auto& t : product(i, j))
      if (t.k == k) return t.c;
    return Scalar();
  }

  std::vector<StructureEntry> entries() const {
    std::vector<StructureEntry> out;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (const auto& t : product(i, j)) out.push_back({i, j, t.k, t.c});
    return out;
  }

  bool is_zero_product() const {
    for (const auto& p : products_)
      if (!p.empty()) return false;
    return true;
  }

  Vec multiply(const Vec& x, const Vec& y) const {
    check_len(x);
    check_len(y);
    return multiply(sparsify(x), sparsify(y));
  }

  Vec multiply(const SparseVec& x, const SparseVec& y) const {
    Vec out(dim_);
    for (const auto& [i, xi] : x)
      for (const auto& [j, yj] : y) {
        const auto& terms = product(i, j);
        if (terms.empty()) continue;
        const Scalar w = xi * yj;
        for (const auto& t : terms) out[t.k] += w * t.c;
      }
    return out;
  }

  /// L(x) (y -> x*y) or R(x) (y -> y*x) as a matrix acting on columns.
  Matrix mult_operator(const Vec& x, Side side) const {
    check_len(x);
    Matrix m(dim_, dim_);
    for (std::size_t a = 0; a < dim_; ++a) {
      if (x[a].is_zero()) continue;
      for (std::size_t col = 0; col < dim_; ++col) {
        const auto& terms = side == Side::left ? product(a, col) : product(col, a);
        for (const auto& t : terms) m(t.k, col) += x[a] * t.c;
      }
    }
    return m;
  }

  Matrix basis_operator(std::size_t i, Side side) const { return mult_operator(unit_vec(dim_, i), side); }

  /// trace L(e_i).
  Scalar trace_left(std::size_t i) const {
    Scalar t;
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& term : product(i, j))
        if (term.k == j) t += term.c;
    return t;
  }

  /// h(x, y).
  Scalar h(const Vec& x, const Vec& y) const {
    check_len(x);
    check_len(y);
    if (metric_is_identity_) return dot(x, y);
    Scalar acc;
    for (std::size_t r = 0; r < dim_; ++r) {
      if (x[r].is_zero()) continue;
      Scalar row;
      for (const auto& [c, g] : metric_rows_[r])
        if (!y[c].is_zero()) row += g * y[c];
      if (!row.is_zero()) acc += x[r] * row;
    }
    return acc;
  }

  Vec apply_involution(const Vec& x) const {
    check_len(x);
    if (!explicit_involution_) return x;
    return involution_ * x;
  }

  /// The algebra this one was tripled from, when built by `triple`.
  const std::shared_ptr<const Algebra>& source() const noexcept { return source_; }
  void set_source(std::shared_ptr<const Algebra> s) { source_ = std::move(s); }
  void set_name(std::string n) { name_ = std::move(n); }

 private:
  void check_len(const Vec& v) const {
    if (v.size() != dim_) throw DimensionError("expected a vector of length " + std::to_string(dim_));
  }

  void validate() const {
    if (metric_.rows() != dim_ || metric_.cols() != dim_) throw DimensionError("metric shape mismatch");
    if (involution_.rows() != dim_ || involution_.cols() != dim_) throw DimensionError("involution shape mismatch");
    if (!metric_.is_symmetric()) throw DomainError("metric is not symmetric");
    if (determinant(metric_).is_zero()) throw DomainError("metric is degenerate");
    if (!(involution_ * involution_).is_identity()) throw DomainError("involution does not square to the identity");
    if (commutative_) {
      for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j) {
          const auto& a = product(i, j);
          const auto& b = product(j, i);
          bool same = a.size() == b.size();
          for (std::size_t t = 0; same && t < a.size(); ++t) same = a[t].k == b[t].k && a[t].c == b[t].c;
          if (!same) throw DomainError("table flagged commutative but e_i*e_j != e_j*e_i");
        }
    }
  }

  std::string name_;
  std::size_t dim_;
  std::vector<std::vector<Term>> products_;
  Matrix metric_;
  Matrix involution_;
  bool explicit_involution_;
  bool commutative_;
  bool metric_is_identity_ = false;
  std::vector<SparseVec> metric_rows_;
  std::shared_ptr<const Algebra> source_;
};

/// Same algebra with every structure constant multiplied by `factor`.
inline Algebra scale_product(const Algebra& alg, const Scalar& factor) {
  auto entries = alg.entries();
  for (auto& e : entries) e.c *= factor;
  std::optional<Matrix> inv;
  if (alg.has_explicit_involution()) inv = alg.involution();
  return Algebra(alg.name(), alg.dim(), entries, alg.metric(), inv, alg.commutative());
}

/// Relabels basis vector i as perm[i].
inline Algebra permute_basis(const Algebra& alg, const std::vector<std::size_t>& perm) {
  const std::size_t n = alg.dim();
  if (perm.size() != n) throw DimensionError("permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw DomainError("not a permutation");
    seen[p] = true;
  }
  auto entries = alg.entries();
  for (auto& e : entries) {
    e.i = perm[e.i];
    e.j = perm[e.j];
    e.k = perm[e.k];
  }
  Matrix g(n, n);
  Matrix s(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      g(perm[r], perm[c]) = alg.metric()(r, c);
      s(perm[r], perm[c]) = alg.involution()(r, c);
    }
  std::optional<Matrix> inv;
  if (alg.has_explicit_involution()) inv = s;
  return Algebra(alg.name(), n, entries, g, inv, alg.commutative());
}

inline std::string format_tuple(std::span<const std::size_t> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t[i]);
  }
  return s + ")";
}

inline std::string format_vec(const Vec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + "]";
}

namespace detail {

/// tensor[i][j][k] = B(e_i * e_j, e_k), flattened.
inline std::vector<Scalar> form_tensor(const Algebra& alg, const Matrix& form) {
  const std::size_t n = alg.dim();
  std::vector<Scalar> t(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& term : alg.product(i, j))
        for (std::size_t k = 0; k < n; ++k)
          if (!form(term.k, k).is_zero()) t[(i * n + j) * n + k] += term.c * form(term.k, k);
  return t;
}

}  // namespace detail

/// First basis triple (i,j,k) violating B(e_i*e_j, e_k) = B(e_i, e_k*sigma(e_j)).
inline std::optional<std::array<std::size_t, 3>> invariance_violation(const Algebra& alg, const Matrix& form) {
  const std::size_t n = alg.dim();
  const auto t = detail::form_tensor(alg, form);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const Scalar& { return t[(i * n + j) * n + k]; };
  const Matrix& sigma = alg.involution();
  const bool plain = alg.commutative() && sigma.is_identity() && form.is_symmetric();
  if (plain) {
    // complete symmetry of the trilinear form; commutativity covers the rest
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        for (std::size_t k = j; k < n; ++k)
          if (at(i, j, k) != at(i, k, j) || at(i, j, k) != at(j, k, i)) return std::array{i, j, k};
    return std::nullopt;
  }
  std::vector<SparseVec> sigma_cols;
  for (std::size_t c = 0; c < n; ++c) sigma_cols.push_back(sparsify(sigma.column(c)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        // B(e_i, e_k * sigma e_j) = sum_l sigma[l][j] B(e_k * e_l, e_i)
        Scalar rhs;
        for (const auto& [l, s] : sigma_cols[j]) rhs += s * at(k, l, i);
        if (rhs != at(i, j, k)) return std::array{i, j, k};
      }
  return std::nullopt;
}

/// Whether sigma is an anti-automorphism: sigma(x*y) = sigma(y)*sigma(x).
inline std::optional<std::array<std::size_t, 2>> anti_automorphism_violation(const Algebra& alg) {
  const std::size_t n = alg.dim();
  if (!alg.has_explicit_involution()) {
    if (alg.commutative()) return std::nullopt;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec ei = unit_vec(n, i);
      const Vec ej = unit_vec(n, j);
      const Vec lhs = alg.apply_involution(alg.multiply(ei, ej));
      const Vec rhs = alg.multiply(alg.apply_involution(ej), alg.apply_involution(ei));
      if (lhs != rhs) return std::array{i, j};
    }
  return std::nullopt;
}

/// Involutive invariance of the metric.
inline Report check_metrized(const Algebra& alg) {
  Report r("metrized", true);
  const Matrix& g = alg.metric();
  const Matrix& s = alg.involution();
  if (s.transpose() * g * s != g) {
    r.pass = false;
    r.summary = "involution is not h-orthogonal";
    return r;
  }
  if (auto v = anti_automorphism_violation(alg)) {
    r.pass = false;
    r.summary = "involution is not an anti-automorphism";
    r.witness = "(i,j)=" + format_tuple(*v);
    return r;
  }
  if (auto v = invariance_violation(alg, g)) {
    r.pass = false;
    r.summary = "h(x*y,z) != h(x,z*y^sigma)";
    r.witness = "(i,j,k)=" + format_tuple(*v);
    return r;
  }
  r.summary = "h is involutively invariant";
  return r;
}

/// Left multiplication operators of the basis.
inline std::vector<Matrix> basis_operators(const Algebra& alg, Side side = Side::left) {
  std::vector<Matrix> ops;
  ops.reserve(alg.dim());
  for (std::size_t i = 0; i < alg.dim(); ++i) ops.push_back(alg.basis_operator(i, side));
  return ops;
}

/// K[i][j] = trace L(e_i) L(e_j).
inline Matrix trace_gram(const Algebra& alg) {
  const std::size_t n = alg.dim();
  const auto ops = basis_operators(alg);
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      k(i, j) = trace_of_product(ops[i], ops[j]);
      k(j, i) = k(i, j);
    }
  return k;
}

struct KillingForm {
  Matrix gram;
  bool invariant = false;
  bool nondegenerate = false;
  std::optional<std::array<std::size_t, 3>> violation;
};

inline KillingForm killing_form(const Algebra& alg) {
  KillingForm kf;
  kf.gram = trace_gram(alg);
  kf.violation = invariance_violation(alg, kf.gram);
  kf.invariant = !kf.violation.has_value();
  kf.nondegenerate = !determinant(kf.gram).is_zero();
  return kf;
}

/// Gram matrix of x -> trace L(x) L(x^sigma).
inline Matrix trace_form_twisted(const Algebra& alg) {
  const Matrix k = trace_gram(alg);
  const Matrix ks = k * alg.involution();
  Matrix q = ks + ks.transpose();
  q *= Scalar::rational(1, 2);
  return q;
}

/// The unit e with L(e) = R(e) = 1, if there is one.
inline std::optional<Vec> find_unit(const Algebra& alg) {
  const std::size_t n = alg.dim();
  // coefficient of e_i in the (k, j) entry of L(e) and R(e)
  std::vector<IncrementalSolver::Row> left(n * n);
  std::vector<IncrementalSolver::Row> right(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& t : alg.product(i, j)) left[j * n + t.k][i] += t.c;
      for (const auto& t : alg.product(j, i)) right[j * n + t.k][i] += t.c;
    }
  IncrementalSolver solver(n);
  for (std::size_t idx = 0; idx < n * n && !solver.determined(); ++idx) {
    const Scalar rhs = (idx / n == idx % n) ? Scalar(1) : Scalar();
    for (auto* rows : {&left, &right})
      if (solver.add((*rows)[idx], rhs) == IncrementalSolver::Outcome::inconsistent) return std::nullopt;
  }
  Vec e = solver.solution();
  const Matrix id = Matrix::identity(n);
  if (alg.mult_operator(e, Side::left) != id || alg.mult_operator(e, Side::right) != id) return std::nullopt;
  return e;
}

/// trace L(e_i) = 0 for every basis vector.
inline bool is_exact(const Algebra& alg) {
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (!alg.trace_left(i).is_zero()) return false;
  return true;
}

}  // namespace coneforge
