#pragma once

// Quasicomposition identity x(x^s(xy)) = h(x,x) xy and the defect.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coneforge/algebra.hpp"
#include "coneforge/polarize.hpp"

namespace coneforge {

struct DefectReport {
  bool is_quasicomposition = false;
  std::optional<long> delta;
  std::optional<std::string> witness;
  std::vector<long> kernel_dim_samples;
  std::string summary;

  Report to_report() const {
    Report r("quasicomposition", is_quasicomposition, summary);
    r.delta = delta;
    r.witness = witness;
    if (!kernel_dim_samples.empty()) {
      std::string s = "dim ker L(x^s)L(x) at sample points:";
      for (auto k : kernel_dim_samples) s += " " + std::to_string(k);
      r.notes.push_back(s);
    }
    return r;
  }
};

namespace detail {

/// Column l is x(x^s(x e_l)) - h(x,x) x e_l.
inline Matrix quasicomposition_defect(const Algebra& alg, const Vec& x) {
  const std::size_t n = alg.dim();
  const SparseVec sx = sparsify(x);
  const SparseVec sxs = sparsify(alg.apply_involution(x));
  const Scalar hxx = alg.h(x, x);
  Matrix m(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    const Vec xy = alg.multiply(sx, SparseVec{{l, Scalar(1)}});
    if (is_zero(xy)) continue;
    const Vec inner = alg.multiply(sxs, sparsify(xy));
    const Vec outer = alg.multiply(sx, sparsify(inner));
    for (std::size_t k = 0; k < n; ++k) m(k, l) = outer[k] - hxx * xy[k];
  }
  return m;
}

}  // namespace detail

/// Dimension of ker L(x^s) L(x).
inline long twisted_kernel_dim(const Algebra& alg, const Vec& x) {
  const Matrix m = alg.mult_operator(alg.apply_involution(x), Side::left) * alg.mult_operator(x, Side::left);
  return static_cast<long>(alg.dim() - rank(m));
}

/// Sweeps i <= j <= k for the polarized identity; on success derives delta from
/// the twisted trace form and cross-checks it against kernel dimensions.
inline DefectReport quasicomposition_check(const Algebra& alg, std::uint64_t seed = 0) {
  DefectReport rep;
  if (auto m = check_metrized(alg); !m.pass) {
    rep.summary = "not metrized: " + m.summary;
    rep.witness = m.witness;
    return rep;
  }
  const std::size_t n = alg.dim();
  auto violation = first_violation(n, 3, [&](const Tuple& t) {
    std::vector<Vec> args;
    for (auto i : t) args.push_back(unit_vec(n, i));
    const Matrix p = multilinearize<Matrix>([&](const Vec& x) { return detail::quasicomposition_defect(alg, x); },
                                            std::span<const Vec>(args));
    return !p.is_zero();
  });
  if (violation) {
    std::vector<Vec> args;
    for (auto i : *violation) args.push_back(unit_vec(n, i));
    const Matrix p = multilinearize<Matrix>([&](const Vec& x) { return detail::quasicomposition_defect(alg, x); },
                                            std::span<const Vec>(args));
    std::size_t l = 0;
    while (l < n && is_zero(p.column(l))) ++l;
    rep.summary = "x(x^s(xy)) != h(x,x) xy";
    rep.witness = "x-tuple " + format_tuple(*violation) + ", y = e" + std::to_string(l);
    return rep;
  }
  rep.is_quasicomposition = true;
  if (n > 24) throw InternalInconsistency("quasicomposition algebra of dimension " + std::to_string(n) + " > 24");

  const Matrix q = trace_form_twisted(alg);
  const Matrix& g = alg.metric();
  std::optional<Scalar> s;
  for (std::size_t r = 0; r < n && !s; ++r)
    for (std::size_t c = 0; c < n && !s; ++c)
      if (!g(r, c).is_zero()) s = q(r, c) / g(r, c);
  if (!s || *s * g != q) throw InternalInconsistency("twisted trace form is not a multiple of the metric");
  const Scalar d = Scalar(static_cast<long>(n)) - *s;
  if (!d.is_integer()) throw InternalInconsistency("defect " + d.to_string() + " is not an integer");
  rep.delta = d.rational_part().get_num().get_si();

  for (std::uint64_t item = 0; rep.kernel_dim_samples.size() < 3; ++item) {
    const Vec x = random_point(n, seed, item);
    if (is_zero(x) || alg.h(x, x).is_zero()) continue;
    rep.kernel_dim_samples.push_back(twisted_kernel_dim(alg, x));
  }
  for (auto k : rep.kernel_dim_samples)
    if (k != *rep.delta)
      throw InternalInconsistency("defect " + std::to_string(*rep.delta) + " from the trace form but kernel dimension " +
                                  std::to_string(k));
  rep.summary = "quasicomposition with defect " + std::to_string(*rep.delta);
  return rep;
}

}  // namespace coneforge
