#pragma once

// Cubic forms and commutative metrized algebras: u(x) = h(x*x, x) / 6.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "coneforge/algebra.hpp"
#include "coneforge/polynomial.hpp"

namespace coneforge {

/// Commutative algebra with h(x*y, z) equal to the full polarization of 6u.
inline Algebra algebra_from_cubic(const Polynomial& u, const Matrix& metric, std::string name = "cubic") {
  const std::size_t n = metric.rows();
  if (metric.cols() != n) throw DimensionError("metric must be square");
  if (u.nvars() != n) throw DimensionError("cubic has " + std::to_string(u.nvars()) + " variables, metric has dimension " + std::to_string(n));
  if (!u.is_homogeneous(3)) throw DomainError("polynomial is not a homogeneous cubic");
  auto ginv = inverse(metric);
  if (!ginv) throw DomainError("metric is degenerate");

  // t[i][j][k] = d^3 u / dx_i dx_j dx_k; a monomial x^a contributes a! * coeff
  std::vector<Scalar> t(n * n * n);
  for (const auto& [e, c] : u.terms()) {
    std::vector<std::size_t> idx;
    long fact = 1;
    for (std::size_t v = 0; v < n; ++v)
      for (unsigned k = 1; k <= e[v]; ++k) {
        idx.push_back(v);
        fact *= static_cast<long>(k);
      }
    const Scalar value = c * Scalar(fact);
    std::sort(idx.begin(), idx.end());
    do {
      t[(idx[0] * n + idx[1]) * n + idx[2]] = value;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }

  std::vector<StructureEntry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        const Scalar& v = t[(i * n + j) * n + l];
        if (v.is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (!(*ginv)(k, l).is_zero()) entries.push_back({i, j, k, (*ginv)(k, l) * v});
      }
  return Algebra(std::move(name), n, entries, metric, std::nullopt, true);
}

/// u(x) = h(x*x, x) / 6 as an exact polynomial.
inline Polynomial cubic_from_algebra(const Algebra& alg) {
  if (!alg.commutative()) throw DomainError("cubic form needs a commutative algebra");
  if (!check_metrized(alg).pass) throw DomainError("algebra is not metrized");
  const std::size_t n = alg.dim();
  const Matrix& g = alg.metric();
  Polynomial u(n);
  const Scalar sixth = Scalar::rational(1, 6);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& term : alg.product(i, j))
        for (std::size_t k = 0; k < n; ++k) {
          if (g(term.k, k).is_zero()) continue;
          Exponent e(n, 0);
          ++e[i];
          ++e[j];
          ++e[k];
          u.add_term(e, sixth * term.c * g(term.k, k));
        }
  return u;
}

struct GradientHessian {
  Vec grad;
  Matrix hess;
};

/// h-gradient x*x/2 and h-Hessian L(x) of the cubic form.
inline GradientHessian gradient_hessian(const Algebra& alg, const Vec& x) {
  Vec g = alg.multiply(x, x);
  for (auto& c : g) c *= Scalar::rational(1, 2);
  return {std::move(g), alg.mult_operator(x, Side::left)};
}

inline Scalar trace_left(const Algebra& alg, const Vec& x) {
  Scalar t;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (!x[i].is_zero()) t += x[i] * alg.trace_left(i);
  return t;
}

/// (h(x^2,x^2) trace L(x) - h(x^2,x^3)) / 4.
inline Scalar hsiang_operator(const Algebra& alg, const Vec& x) {
  const Vec x2 = alg.multiply(x, x);
  const Vec x3 = alg.multiply(x2, x);
  Scalar v = alg.h(x2, x2) * trace_left(alg, x) - alg.h(x2, x3);
  return v * Scalar::rational(1, 4);
}

/// |Du|^2 - c |x|^4 must vanish identically.
inline Report cartan_munzner_check(const Polynomial& u, const Scalar& c) {
  if (!u.is_homogeneous(3)) throw DomainError("polynomial is not a homogeneous cubic");
  const std::size_t n = u.nvars();
  Polynomial grad2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Polynomial d = u.derivative(i);
    grad2 += d * d;
  }
  const Polynomial r2 = Polynomial::norm_squared(n);
  Polynomial residual = grad2 - c * (r2 * r2);
  Report r("cartan-munzner", residual.is_zero());
  r.summary = r.pass ? "|Du|^2 = " + c.to_string() + " |x|^4" : "|Du|^2 - " + c.to_string() + " |x|^4 is not zero";
  if (!r.pass) r.witness = "residual " + residual.to_string();
  return r;
}

}  // namespace coneforge
