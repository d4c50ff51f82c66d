#pragma once

// Radial and nonradial Hsiang identities, degeneracy, eikonal algebras and
// theta normalization.
//
// Identities of degree m in x are certified either by complete polarization
// at every nondecreasing basis m-tuple (exact) or by exact evaluation at
// seeded random integer points (Schwartz-Zippel).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coneforge/algebra.hpp"
#include "coneforge/cubic.hpp"
#include "coneforge/polarize.hpp"

namespace coneforge {

struct SweepOptions {
  /// Unset: exhaustive when dim <= exhaustive_limit.
  std::optional<bool> exhaustive;
  std::uint64_t seed = 0;
  std::size_t samples = 64;
  std::size_t exhaustive_limit = 32;

  bool use_exhaustive(std::size_t dim) const { return exhaustive.value_or(dim <= exhaustive_limit); }
};

struct HsiangReport {
  std::optional<Scalar> theta;
  std::optional<Matrix> nonradial_b;
  bool exact = false;
  bool degenerate = false;
  bool exhaustive = true;
  std::optional<Tuple> witness;
  std::optional<Vec> witness_point;

  std::string witness_text() const {
    if (witness) return "basis tuple " + format_tuple(*witness);
    if (witness_point) return "point " + format_vec(*witness_point);
    return {};
  }
};

namespace detail {

inline void require_euclidean_commutative(const Algebra& alg) {
  if (!alg.commutative()) throw DomainError("Hsiang checks need a commutative algebra");
  if (!is_positive_definite(alg.metric())) throw DomainError("metric is not positive definite");
  if (auto r = check_metrized(alg); !r.pass) throw DomainError("algebra is not metrized: " + r.summary);
}

struct QuinticParts {
  Scalar g;  // h(x^2,x^3) - h(x^2,x^2) trace L(x)
  Scalar p;  // h(x,x) h(x,x^2)
};

inline QuinticParts quintic_parts(const Algebra& alg, const std::vector<Scalar>& traces, const Vec& x) {
  const SparseVec sx = sparsify(x);
  const Vec x2 = alg.multiply(sx, sx);
  const Vec x3 = alg.multiply(sparsify(x2), sx);
  Scalar tr;
  for (const auto& [i, v] : sx) tr += v * traces[i];
  const Scalar x2x2 = alg.h(x2, x2);
  return {alg.h(x2, x3) - x2x2 * tr, alg.h(x, x) * alg.h(x, x2)};
}

inline std::vector<Scalar> left_traces(const Algebra& alg) {
  std::vector<Scalar> t;
  for (std::size_t i = 0; i < alg.dim(); ++i) t.push_back(alg.trace_left(i));
  return t;
}

/// Sorted symmetrization of t(i,j,k) = h(e_i*e_j, e_k) for a commutative algebra.
class CubicTensor {
 public:
  explicit CubicTensor(const Algebra& alg) : n_(alg.dim()), t_(detail::form_tensor(alg, alg.metric())) {}
  Scalar sym(std::size_t i, std::size_t j, std::size_t k) const {
    return (at(i, j, k) + at(k, i, j) + at(j, k, i)) * Scalar::rational(1, 3);
  }

 private:
  const Scalar& at(std::size_t i, std::size_t j, std::size_t k) const { return t_[(i * n_ + j) * n_ + k]; }
  std::size_t n_;
  std::vector<Scalar> t_;
};

inline std::size_t pair_index(std::size_t p, std::size_t q, std::size_t n) {
  // row-major upper triangle
  return p * n - p * (p + 1) / 2 + q;
}

/// b from the coefficients beta_pq of x_p x_q in b(x,x), p <= q.
inline Matrix quadratic_from_monomials(const Vec& beta, std::size_t n) {
  Matrix b(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p; q < n; ++q) {
      const Scalar& v = beta[pair_index(p, q, n)];
      if (p == q) b(p, p) = v;
      else b(p, q) = b(q, p) = v * Scalar::rational(1, 2);
    }
  return b;
}

inline IncrementalSolver::Row monomial_row(const Vec& x, const Scalar& factor) {
  const std::size_t n = x.size();
  IncrementalSolver::Row row;
  for (std::size_t p = 0; p < n; ++p) {
    if (x[p].is_zero()) continue;
    for (std::size_t q = p; q < n; ++q)
      if (!x[q].is_zero()) row[pair_index(p, q, n)] += x[p] * x[q] * factor;
  }
  return row;
}

/// Polarized coefficients of beta_pq in the quintic b(x,x) h(x,x^2) at a basis 5-tuple.
inline IncrementalSolver::Row quintic_monomial_row(const CubicTensor& t, const Tuple& tau, std::size_t n) {
  IncrementalSolver::Row row;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a + 1; b < 5; ++b) {
      std::size_t rest[3];
      std::size_t r = 0;
      for (std::size_t c = 0; c < 5; ++c)
        if (c != a && c != b) rest[r++] = tau[c];
      const Scalar tv = t.sym(rest[0], rest[1], rest[2]);
      if (tv.is_zero()) continue;
      const std::size_t p = std::min(tau[a], tau[b]);
      const std::size_t q = std::max(tau[a], tau[b]);
      const Scalar w = p == q ? Scalar::rational(1, 10) : Scalar::rational(1, 20);
      row[pair_index(p, q, n)] += w * tv;
    }
  return row;
}

inline Scalar apply_row(const IncrementalSolver::Row& row, const Vec& beta) {
  Scalar s;
  for (const auto& [i, c] : row) s += c * beta[i];
  return s;
}

}  // namespace detail

/// theta with h(x^2,x^3) - h(x^2,x^2) trace L(x) = theta h(x,x) h(x,x^2), if one exists.
inline HsiangReport radial_hsiang_check(const Algebra& alg, const SweepOptions& opt = {}) {
  detail::require_euclidean_commutative(alg);
  const std::size_t n = alg.dim();
  const auto traces = detail::left_traces(alg);
  HsiangReport rep;
  rep.exact = is_exact(alg);
  rep.exhaustive = opt.use_exhaustive(n);

  // probe for a point with h(x,x) h(x,x^2) != 0
  std::optional<Scalar> theta;
  auto probe = [&](const Vec& x) {
    const auto parts = detail::quintic_parts(alg, traces, x);
    if (parts.p.is_zero()) return false;
    theta = parts.g / parts.p;
    return true;
  };
  for (std::size_t i = 0; i < n && !theta; ++i) probe(unit_vec(n, i));
  for (std::size_t i = 0; i < n && !theta; ++i)
    for (std::size_t j = i + 1; j < n && !theta; ++j) probe(unit_vec(n, i) + unit_vec(n, j));
  for (std::uint64_t k = 0; k < 16 && !theta; ++k) probe(random_point(n, opt.seed ^ 0x9e3779b97f4a7c15ULL, k));
  const Scalar th = theta.value_or(Scalar());

  auto residual = [&](const Vec& x) {
    const auto parts = detail::quintic_parts(alg, traces, x);
    return parts.g - th * parts.p;
  };
  if (rep.exhaustive) {
    const MultisetTable<Scalar> table(n, 5, residual);
    rep.witness = first_violation(n, 5, [&](const Tuple& t) { return !table.scaled_polarization(t).is_zero(); });
  } else {
    if (auto v = first_random_violation(n, opt.samples, opt.seed, [&](const Vec& x) { return !residual(x).is_zero(); }))
      rep.witness_point = v->second;
  }
  if (!rep.witness && !rep.witness_point) {
    rep.theta = th;
    rep.degenerate = !rep.exact;
  }
  return rep;
}

/// Symmetric b with h(x^2,x^3) - h(x^2,x^2) trace L(x) = b(x,x) h(x,x^2), if one exists.
inline HsiangReport nonradial_hsiang_check(const Algebra& alg, const SweepOptions& opt = {}) {
  detail::require_euclidean_commutative(alg);
  const std::size_t n = alg.dim();
  const auto traces = detail::left_traces(alg);
  HsiangReport rep;
  rep.exact = is_exact(alg);
  rep.exhaustive = opt.use_exhaustive(n);
  const std::size_t unknowns = n * (n + 1) / 2;
  IncrementalSolver solver(unknowns);

  if (rep.exhaustive) {
    const detail::CubicTensor t(alg);
    const MultisetTable<Scalar> table(n, 5, [&](const Vec& x) { return detail::quintic_parts(alg, traces, x).g; });
    const Scalar inv120 = Scalar::rational(1, 120);
    std::optional<Vec> beta;
    for_each_tuple(n, 5, [&](const Tuple& tau) {
      const auto row = detail::quintic_monomial_row(t, tau, n);
      const Scalar rhs = table.scaled_polarization(tau) * inv120;
      if (!beta) {
        if (solver.add(row, rhs) == IncrementalSolver::Outcome::inconsistent) {
          rep.witness = tau;
          return false;
        }
        if (solver.determined()) beta = solver.solution();
        return true;
      }
      if (detail::apply_row(row, *beta) != rhs) {
        rep.witness = tau;
        return false;
      }
      return true;
    });
  } else {
    // collect equations at random points until b is pinned down, then verify on fresh points
    auto equation = [&](const Vec& x) {
      const Vec x2 = alg.multiply(x, x);
      const auto parts = detail::quintic_parts(alg, traces, x);
      return std::make_pair(detail::monomial_row(x, alg.h(x, x2)), parts.g);
    };
    std::uint64_t item = 0;
    const std::uint64_t budget = 4 * unknowns + 16;
    for (; item < budget && !solver.determined(); ++item) {
      const Vec x = random_point(n, opt.seed, item);
      auto [row, rhs] = equation(x);
      if (solver.add(row, rhs) == IncrementalSolver::Outcome::inconsistent) {
        rep.witness_point = x;
        break;
      }
    }
    if (!rep.witness_point) {
      const Vec beta = solver.solution();
      for (std::uint64_t k = 0; k < opt.samples; ++k) {
        const Vec x = random_point(n, opt.seed, item + k);
        auto [row, rhs] = equation(x);
        if (detail::apply_row(row, beta) != rhs) {
          rep.witness_point = x;
          break;
        }
      }
    }
  }
  if (!rep.witness && !rep.witness_point) {
    const Matrix b = detail::quadratic_from_monomials(solver.solution(), n);
    // radial when b is a multiple of the metric
    const Matrix& g = alg.metric();
    std::optional<Scalar> ratio;
    bool proportional = true;
    for (std::size_t r = 0; r < n && proportional; ++r)
      for (std::size_t c = 0; c < n && proportional; ++c) {
        if (g(r, c).is_zero()) {
          proportional = b(r, c).is_zero();
          continue;
        }
        const Scalar q = b(r, c) / g(r, c);
        if (!ratio) ratio = q;
        else proportional = *ratio == q;
      }
    if (proportional && ratio) rep.theta = ratio;
    rep.nonradial_b = b;
  }
  return rep;
}

struct DegeneracyResult {
  bool not_exact = false;
  bool rank_one_products = false;
  bool cube_of_linear = false;
  std::optional<Vec> omega;  // u = r (omega . x)^3
  std::optional<Scalar> r;
};

/// The three equivalent degeneracy conditions for a radial Hsiang algebra, evaluated independently.
inline DegeneracyResult degeneracy_conditions(const Algebra& alg, std::uint64_t seed = 0) {
  const std::size_t n = alg.dim();
  DegeneracyResult res;
  res.not_exact = !is_exact(alg);

  std::vector<Vec> products;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec p(n);
      for (const auto& t : alg.product(i, j)) p[t.k] = t.c;
      if (!is_zero(p)) products.push_back(std::move(p));
    }
  res.rank_one_products = Subspace::span(products, n).dim() == 1;

  const Polynomial u = cubic_from_algebra(alg);
  if (!u.is_zero()) {
    std::vector<std::vector<Polynomial>> hess(n, std::vector<Polynomial>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const Polynomial di = u.derivative(i);
      for (std::size_t j = 0; j < n; ++j) hess[i][j] = di.derivative(j);
    }
    std::optional<Vec> w;
    std::size_t best_rank = 0;
    for (std::uint64_t k = 0; k < 3; ++k) {
      const Vec x = random_point(n, seed, k);
      Matrix h(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = hess[i][j].eval(x);
      const std::size_t rk = rank(h);
      if (rk > best_rank) {
        best_rank = rk;
        for (std::size_t i = 0; i < n && rk == 1; ++i)
          if (!is_zero(h.row(i))) {
            w = h.row(i);
            break;
          }
      }
    }
    if (best_rank == 1 && w) {
      Polynomial lin(n);
      for (std::size_t i = 0; i < n; ++i) lin += (*w)[i] * Polynomial::variable(n, i);
      const Polynomial cube = lin * lin * lin;
      // r from the leading coefficient of a monomial present in the cube
      const auto& [e, c] = *cube.terms().begin();
      const Scalar r = u.coefficient(e) / c;
      if (u == r * cube) {
        res.cube_of_linear = true;
        res.omega = w;
        res.r = r;
      }
    }
  }
  return res;
}

inline Report degeneracy_check(const Algebra& alg, const HsiangReport& radial, std::uint64_t seed = 0) {
  if (!radial.theta) throw DomainError("degeneracy check needs a radial Hsiang algebra");
  const auto c = degeneracy_conditions(alg, seed);
  if (c.not_exact != c.rank_one_products || c.not_exact != c.cube_of_linear)
    throw InternalInconsistency("degeneracy conditions disagree: not exact=" + std::to_string(c.not_exact) +
                                ", rank one products=" + std::to_string(c.rank_one_products) +
                                ", cube of linear form=" + std::to_string(c.cube_of_linear));
  Report r("degeneracy", true, c.not_exact ? "degenerate: u is the cube of a linear form" : "nondegenerate");
  if (c.omega) r.notes.push_back("u = " + c.r->to_string() + " * (w.x)^3 with w = " + format_vec(*c.omega));
  return r;
}

inline Report degeneracy_check(const Algebra& alg, const SweepOptions& opt = {}) {
  return degeneracy_check(alg, radial_hsiang_check(alg, opt), opt.seed);
}

/// Rescales the product by lambda with lambda^2 = 4/(3 theta) so that theta becomes 4/3.
inline Algebra normalize_theta(const Algebra& alg, const Scalar& theta) {
  if (theta.sign() <= 0) throw DomainError("normalization needs theta > 0, got " + theta.to_string());
  const Scalar l2 = Scalar(4) / (Scalar(3) * theta);
  const auto lambda = l2.sqrt();
  if (!lambda) throw DomainError("unrepresentable scale: lambda^2 = " + l2.to_string() + " has no square root in Q(sqrt 3)");
  return scale_product(alg, *lambda);
}

inline Algebra normalize_theta(const Algebra& alg, const SweepOptions& opt = {}) {
  const auto rep = radial_hsiang_check(alg, opt);
  if (!rep.theta) throw DomainError("algebra is not a radial Hsiang algebra");
  return normalize_theta(alg, *rep.theta);
}

struct PseudocompositionResult {
  std::optional<Matrix> b;
  std::optional<Scalar> theta_prime;
  bool eikonal = false;
  std::optional<Tuple> witness;
};

/// Symmetric b with x^3 = b(x,x) x identically, if one exists.
inline PseudocompositionResult pseudocomposition_check(const Algebra& alg, std::uint64_t seed = 0) {
  if (!alg.commutative()) throw DomainError("pseudocomposition check needs a commutative algebra");
  if (auto r = check_metrized(alg); !r.pass) throw DomainError("algebra is not metrized: " + r.summary);
  const std::size_t n = alg.dim();
  const std::size_t unknowns = n * (n + 1) / 2;
  PseudocompositionResult res;
  const MultisetTable<Vec> table(n, 3, [&](const Vec& x) {
    const SparseVec sx = sparsify(x);
    const Vec x2 = alg.multiply(sx, sx);
    return alg.multiply(sparsify(x2), sx);
  });
  IncrementalSolver solver(unknowns);
  std::optional<Vec> beta;
  const Scalar sixth = Scalar::rational(1, 6);
  for_each_tuple(n, 3, [&](const Tuple& tau) {
    const Vec lhs = table.scaled_polarization(tau);
    // polarization of b(x,x) x: (1/3) sum over the choice of the free slot c
    std::vector<IncrementalSolver::Row> rows(n);
    for (std::size_t c = 0; c < 3; ++c) {
      const std::size_t a = c == 0 ? 1 : 0;
      const std::size_t b = c == 2 ? 1 : 2;
      const std::size_t p = std::min(tau[a], tau[b]);
      const std::size_t q = std::max(tau[a], tau[b]);
      const Scalar w = p == q ? Scalar::rational(1, 3) : Scalar::rational(1, 6);
      rows[tau[c]][detail::pair_index(p, q, n)] += w;
    }
    for (std::size_t l = 0; l < n; ++l) {
      const Scalar rhs = lhs[l] * sixth;
      if (rows[l].empty() && rhs.is_zero()) continue;
      if (!beta) {
        if (solver.add(rows[l], rhs) == IncrementalSolver::Outcome::inconsistent) {
          res.witness = tau;
          return false;
        }
        if (solver.determined()) beta = solver.solution();
      } else if (detail::apply_row(rows[l], *beta) != rhs) {
        res.witness = tau;
        return false;
      }
    }
    return true;
  });
  if (res.witness) return res;
  const Matrix b = detail::quadratic_from_monomials(solver.solution(), n);
  res.b = b;
  const Matrix& g = alg.metric();
  std::size_t r0 = 0;
  while (g(r0, r0).is_zero() && r0 + 1 < n) ++r0;
  if (g(r0, r0).is_zero()) return res;
  const Scalar ratio = b(r0, r0) / g(r0, r0);
  if (ratio * g == b) {
    res.theta_prime = ratio;
    res.eikonal = is_positive_definite(g);
  }
  if (res.theta_prime) {
    // h(x^3,x^2) = theta' h(x,x) h(x,x^2)
    for (std::uint64_t k = 0; k < 8; ++k) {
      const Vec x = random_point(n, seed, k);
      const Vec x2 = alg.multiply(x, x);
      const Vec x3 = alg.multiply(x2, x);
      if (alg.h(x3, x2) != *res.theta_prime * alg.h(x, x) * alg.h(x, x2))
        throw InternalInconsistency("eikonal identity fails although x^3 = b(x,x) x holds");
    }
  }
  return res;
}

}  // namespace coneforge
