#pragma once

// Floating-point pipeline: idempotents, Peirce spectra, Jordan mutation and
// 2-nilpotent search. Work happens in h-orthonormal coordinates.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coneforge/algebra.hpp"
#include "coneforge/parallel.hpp"

namespace coneforge {

/// Floating image of an algebra with a positive definite metric, in coordinates
/// x~ = C^T x where h = C C^T, so that h becomes the dot product.
class FloatAlgebra {
 public:
  explicit FloatAlgebra(const Algebra& alg) : n_(alg.dim()) {
    if (!is_positive_definite(alg.metric())) throw DomainError("numeric pipeline needs a positive definite metric");
    Eigen::MatrixXd g(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) g(i, j) = alg.metric()(i, j).to_double();
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    chol_ = llt.matrixL();
    // original coordinates of the orthonormal basis: columns of C^{-T}
    to_original_ = chol_.transpose().triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(n_, n_));
    std::vector<Eigen::MatrixXd> left(n_, Eigen::MatrixXd::Zero(n_, n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (const auto& t : alg.product(i, j)) left[i](t.k, j) += t.c.to_double();
    // L~_a = C^T L(f_a) C^{-T} with f_a = C^{-T} e_a
    const Eigen::MatrixXd ct = chol_.transpose();
    left_.assign(n_, Eigen::MatrixXd::Zero(n_, n_));
    for (std::size_t a = 0; a < n_; ++a) {
      Eigen::MatrixXd la = Eigen::MatrixXd::Zero(n_, n_);
      for (std::size_t i = 0; i < n_; ++i)
        if (to_original_(i, a) != 0.0) la += to_original_(i, a) * left[i];
      left_[a] = ct * la * to_original_;
    }
  }

  std::size_t dim() const noexcept { return n_; }

  Eigen::MatrixXd mult_operator(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (std::size_t a = 0; a < n_; ++a)
      if (x(a) != 0.0) m += x(a) * left_[a];
    return m;
  }

  Eigen::VectorXd multiply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return mult_operator(x) * y; }

  Eigen::VectorXd to_original(const Eigen::VectorXd& x) const { return to_original_ * x; }
  Eigen::VectorXd from_original(const Eigen::VectorXd& x) const { return chol_.transpose() * x; }

 private:
  std::size_t n_;
  Eigen::MatrixXd chol_;
  Eigen::MatrixXd to_original_;
  std::vector<Eigen::MatrixXd> left_;
};

namespace detail {

inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t item) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(item), static_cast<std::uint32_t>(item >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

inline Eigen::VectorXd random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  Eigen::VectorXd x(n);
  do {
    for (std::size_t i = 0; i < n; ++i) x(i) = dist(rng);
  } while (x.norm() < 1e-12);
  return x.normalized();
}

}  // namespace detail

struct Idempotent {
  Eigen::VectorXd c;  // original coordinates
  double residual = 0;
};

/// Idempotents from maxima of u on the unit sphere, polished by Newton's method.
inline std::vector<Idempotent> find_idempotent(const FloatAlgebra& fa, std::size_t restarts, std::uint64_t seed,
                                               double tolerance = 1e-10) {
  const std::size_t n = fa.dim();
  std::vector<std::optional<Eigen::VectorXd>> found(restarts);
  parallel_items(restarts, [&](std::size_t item, std::size_t) {
    auto rng = detail::seeded_rng(seed, item);
    Eigen::VectorXd x = detail::random_unit(n, rng);
    // ascent x <- normalize(x + x^2/|x^2|); a fixed point has x^2 = mu x with mu = 6u(x) > 0
    for (int it = 0; it < 5000; ++it) {
      const Eigen::VectorXd x2 = fa.multiply(x, x);
      const double norm2 = x2.norm();
      if (norm2 < 1e-300) return;
      const double mu = x2.dot(x);
      if ((x2 - mu * x).norm() <= 1e-12 * norm2 && mu > 0) break;
      x = (x + x2 / norm2).normalized();
    }
    const double mu = fa.multiply(x, x).dot(x);
    if (!(mu > 1e-12)) return;
    Eigen::VectorXd c = x / mu;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    for (int it = 0; it < 100; ++it) {
      const Eigen::VectorXd f = fa.multiply(c, c) - c;
      if (f.norm() <= tolerance * 1e-2) break;
      const Eigen::MatrixXd j = 2.0 * fa.mult_operator(c) - id;
      const Eigen::VectorXd step = j.completeOrthogonalDecomposition().solve(f);
      c -= step;
      if (step.norm() <= 1e-16 * std::max(1.0, c.norm())) break;
    }
    if ((fa.multiply(c, c) - c).norm() <= tolerance) found[item] = c;
  });
  std::vector<Idempotent> out;
  for (const auto& c : found) {
    if (!c) continue;
    const bool dup = std::any_of(out.begin(), out.end(),
                                 [&](const Idempotent& o) { return (fa.from_original(o.c) - *c).norm() <= 1e-6; });
    if (dup) continue;
    out.push_back({fa.to_original(*c), (fa.multiply(*c, *c) - *c).norm()});
  }
  return out;
}

inline std::vector<Idempotent> find_idempotent(const Algebra& alg, std::size_t restarts, std::uint64_t seed) {
  return find_idempotent(FloatAlgebra(alg), restarts, seed);
}

struct EigenCluster {
  double value = 0;
  std::size_t multiplicity = 0;
  Eigen::MatrixXd vectors;  // orthonormal coordinates, one column per eigenvector
};

struct PeirceData {
  Eigen::VectorXd c;
  double residual = 0;
  std::vector<EigenCluster> clusters;
  std::optional<long> n1;
  std::optional<long> n2;
  std::optional<long> d;
  double idempotent_norm = 0;
  bool spectrum_ok = false;
  bool dimensions_ok = false;
  std::vector<std::string> notes;

  std::size_t multiplicity(double value) const {
    for (const auto& cl : clusters)
      if (std::abs(cl.value - value) <= 1e-6) return cl.multiplicity;
    return 0;
  }
};

/// Peirce spectrum of L(c), clustered within `cluster_tol` and matched to {1, -1, -1/2, 1/2}.
inline PeirceData peirce(const FloatAlgebra& fa, const Eigen::VectorXd& c_original, double cluster_tol = 1e-6) {
  const std::size_t n = fa.dim();
  PeirceData pd;
  pd.c = c_original;
  const Eigen::VectorXd c = fa.from_original(c_original);
  pd.residual = (fa.multiply(c, c) - c).norm();
  if (pd.residual > 1e-8) throw DomainError("idempotent residual " + std::to_string(pd.residual) + " exceeds 1e-8");
  pd.idempotent_norm = c.squaredNorm();
  Eigen::MatrixXd lc = fa.mult_operator(c);
  lc = 0.5 * (lc + lc.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lc);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && vals(static_cast<Eigen::Index>(j)) - vals(static_cast<Eigen::Index>(j - 1)) <= cluster_tol) ++j;
    EigenCluster cl;
    cl.multiplicity = j - i;
    cl.value = vals.segment(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - i)).mean();
    cl.vectors = vecs.middleCols(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - i));
    pd.clusters.push_back(std::move(cl));
    i = j;
  }
  const double allowed[] = {1.0, -1.0, -0.5, 0.5};
  auto matches = [&](double scale) {
    return std::all_of(pd.clusters.begin(), pd.clusters.end(), [&](const EigenCluster& cl) {
      return std::any_of(std::begin(allowed), std::end(allowed),
                         [&](double a) { return std::abs(cl.value - scale * a) <= cluster_tol; });
    });
  };
  pd.spectrum_ok = matches(1.0);
  if (!pd.spectrum_ok) {
    double top = 0;
    for (const auto& cl : pd.clusters) top = std::max(top, std::abs(cl.value));
    if (top > 0 && matches(top)) pd.notes.push_back("spectrum matches a uniform scaling of {1, -1, -1/2, 1/2}");
    else pd.notes.push_back("spectrum does not match {1, -1, -1/2, 1/2}");
    return pd;
  }
  const auto m1 = static_cast<long>(pd.multiplicity(1.0));
  const auto n1 = static_cast<long>(pd.multiplicity(-1.0));
  const auto n2 = static_cast<long>(pd.multiplicity(-0.5));
  const auto mh = static_cast<long>(pd.multiplicity(0.5));
  pd.n1 = n1;
  pd.n2 = n2;
  pd.dimensions_ok = m1 == 1 && mh == 2 * n1 + n2 - 2 && static_cast<long>(n) == 3 * n1 + 2 * n2 - 1;
  if (!pd.dimensions_ok) pd.notes.push_back("Peirce dimensions violate n = 3 n1 + 2 n2 - 1");
  if (n2 >= 2 && (n2 - 2) % 3 == 0) pd.d = (n2 - 2) / 3;
  return pd;
}

inline PeirceData peirce(const Algebra& alg, const Eigen::VectorXd& c) { return peirce(FloatAlgebra(alg), c); }

struct JordanResult {
  std::size_t dim = 0;
  bool closed = false;
  double closure_residual = 0;
  bool jordan_identity = false;
  double jordan_residual = 0;
  std::size_t trace_form_rank = 0;
  double scale = 1;  // product rescaling applied so that h(c,c) = 3/4

  Report to_report() const {
    Report r("jordan", closed && jordan_identity);
    r.summary = "dim B_c = " + std::to_string(dim) + ", closure residual " + std::to_string(closure_residual) +
                ", Jordan residual " + std::to_string(jordan_residual) + ", trace form rank " +
                std::to_string(trace_form_rank);
    return r;
  }
};

/// Jordan algebra on B_c = A_c(1) + A_c(-1/2) with
/// x*y = xy/2 + h(x,c)y + h(y,c)x - 2h(xy,c)c, after rescaling to h(c,c) = 3/4.
inline JordanResult jordan_mutation(const FloatAlgebra& fa, const PeirceData& pd, std::uint64_t seed = 0,
                                    std::size_t samples = 20) {
  if (!pd.spectrum_ok) throw DomainError("Jordan mutation needs the four-point Peirce spectrum");
  const std::size_t n = fa.dim();
  JordanResult res;
  std::vector<Eigen::VectorXd> basis;
  for (const auto& cl : pd.clusters)
    if (std::abs(cl.value - 1.0) <= 1e-6 || std::abs(cl.value + 0.5) <= 1e-6)
      for (Eigen::Index k = 0; k < cl.vectors.cols(); ++k) basis.push_back(cl.vectors.col(k));
  const std::size_t m = basis.size();
  res.dim = m;
  Eigen::MatrixXd b(n, m);
  for (std::size_t i = 0; i < m; ++i) b.col(static_cast<Eigen::Index>(i)) = basis[i];

  // lambda^2 = 4/(3 theta) with theta = 1/h(c,c)
  const double lambda = std::sqrt(4.0 * pd.idempotent_norm / 3.0);
  res.scale = lambda;
  const Eigen::VectorXd c = fa.from_original(pd.c) / lambda;
  auto prod = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) { return Eigen::VectorXd(lambda * fa.multiply(x, y)); };
  auto star = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::VectorXd xy = prod(x, y);
    return Eigen::VectorXd(0.5 * xy + x.dot(c) * y + y.dot(c) * x - 2.0 * xy.dot(c) * c);
  };

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const Eigen::VectorXd p = prod(basis[i], basis[j]);
      res.closure_residual = std::max(res.closure_residual, (p - b * (b.transpose() * p)).norm());
    }
  res.closed = res.closure_residual <= 1e-8;

  // L*(x) in B-coordinates
  auto star_op = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd op(m, m);
    for (std::size_t j = 0; j < m; ++j) op.col(static_cast<Eigen::Index>(j)) = b.transpose() * star(x, basis[j]);
    return op;
  };
  auto rng = detail::seeded_rng(seed, 0x10dau);
  std::normal_distribution<double> dist;
  for (std::size_t s = 0; s < samples && m > 0; ++s) {
    Eigen::VectorXd coeff(m);
    for (std::size_t i = 0; i < m; ++i) coeff(static_cast<Eigen::Index>(i)) = dist(rng);
    const Eigen::VectorXd x = b * coeff;
    const Eigen::VectorXd x2 = star(x, x);
    const Eigen::MatrixXd lx = star_op(x);
    const Eigen::MatrixXd lx2 = star_op(x2);
    const double scale = std::max(1.0, lx.norm() * lx2.norm());
    res.jordan_residual = std::max(res.jordan_residual, (lx * lx2 - lx2 * lx).norm() / scale);
  }
  res.jordan_identity = res.jordan_residual <= 1e-7;

  Eigen::MatrixXd tf(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) tf(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = star_op(star(basis[i], basis[j])).trace();
  if (m > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(tf);
    const auto& sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-8 * std::max(1.0, sv(0))) ++res.trace_form_rank;
  }
  return res;
}

/// Unit vectors with |x*x| <= 1e-8 found by Levenberg-Marquardt on the sphere.
inline std::vector<Eigen::VectorXd> nilpotent_search(const FloatAlgebra& fa, std::size_t restarts, std::uint64_t seed) {
  const std::size_t n = fa.dim();
  std::vector<std::optional<Eigen::VectorXd>> found(restarts);
  parallel_items(restarts, [&](std::size_t item, std::size_t) {
    auto rng = detail::seeded_rng(seed, item ^ 0x2000000000ULL);
    Eigen::VectorXd x = detail::random_unit(n, rng);
    double mu = 1e-3;
    double f = fa.multiply(x, x).squaredNorm();
    for (int it = 0; it < 500 && f > 1e-20; ++it) {
      const Eigen::VectorXd r = fa.multiply(x, x);
      Eigen::MatrixXd j = 2.0 * fa.mult_operator(x);
      // restrict to the tangent space of the sphere
      const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - x * x.transpose();
      j = j * proj;
      const Eigen::MatrixXd a = j.transpose() * j + mu * Eigen::MatrixXd::Identity(n, n);
      const Eigen::VectorXd step = a.ldlt().solve(-(j.transpose() * r));
      const Eigen::VectorXd cand = (x + proj * step).normalized();
      const double fc = fa.multiply(cand, cand).squaredNorm();
      if (fc < f) {
        x = cand;
        f = fc;
        mu = std::max(mu * 0.3, 1e-12);
      } else {
        mu *= 10;
        if (mu > 1e8) break;
      }
    }
    if (std::sqrt(f) <= 1e-8) found[item] = fa.to_original(x);
  });
  std::vector<Eigen::VectorXd> out;
  for (const auto& x : found) {
    if (!x) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Eigen::VectorXd& o) {
      return (o - *x).norm() <= 1e-6 || (o + *x).norm() <= 1e-6;
    });
    if (!dup) out.push_back(*x);
  }
  return out;
}

inline std::vector<Eigen::VectorXd> nilpotent_search(const Algebra& alg, std::size_t restarts, std::uint64_t seed) {
  return nilpotent_search(FloatAlgebra(alg), restarts, seed);
}

}  // namespace coneforge
