#pragma once

// Polar decompositions A = A0 + A1 and Killing metrizability.

#include <cstddef>
#include <optional>
#include <string>

#include "coneforge/algebra.hpp"
#include "coneforge/cubic.hpp"

namespace coneforge {

struct PolarReport {
  bool pass = false;
  bool mutant = false;
  std::size_t dim0 = 0;
  std::size_t dim1 = 0;
  std::string failed_axiom;
  std::optional<std::string> witness;

  Report to_report() const {
    Report r("polar", pass);
    r.summary = "dim A0 = " + std::to_string(dim0) + ", dim A1 = " + std::to_string(dim1);
    if (pass) r.summary += mutant ? ", mutant" : ", regular";
    else r.summary += ", fails axiom " + failed_axiom;
    r.witness = witness;
    return r;
  }
};

/// Checks the four polar axioms for the given zero block and the Killing trace
/// formula trace L(x)^2 = h(x0,x0) dim A1 + 2 h(x1,x1) dim A0.
inline PolarReport verify_polar(const Algebra& alg, const Subspace& a0) {
  if (!alg.commutative()) throw DomainError("polar decompositions need a commutative algebra");
  if (a0.ambient() != alg.dim()) throw DimensionError("zero block lives in the wrong space");
  if (a0.dim() == 0 || a0.dim() == alg.dim()) throw DomainError("zero block must be a proper nonzero subspace");
  const Subspace a1 = a0.orthogonal_complement(alg.metric());
  PolarReport rep;
  rep.dim0 = a0.dim();
  rep.dim1 = a1.dim();
  const auto& b0 = a0.basis();
  const auto& b1 = a1.basis();
  auto fail = [&](std::string axiom, std::string witness) {
    rep.failed_axiom = std::move(axiom);
    rep.witness = std::move(witness);
    return rep;
  };

  for (std::size_t i = 0; i < b0.size(); ++i)
    for (std::size_t j = i; j < b0.size(); ++j)
      if (!is_zero(alg.multiply(b0[i], b0[j])))
        return fail("(i) A0*A0 = 0", "a" + std::to_string(i) + " * a" + std::to_string(j) + " = " +
                                         format_vec(alg.multiply(b0[i], b0[j])));
  for (std::size_t i = 0; i < b1.size(); ++i)
    for (std::size_t j = i; j < b1.size(); ++j)
      if (!a0.contains(alg.multiply(b1[i], b1[j])))
        return fail("(ii) A1*A1 in A0", "b" + std::to_string(i) + " * b" + std::to_string(j));
  // polarized x(xy) = h(x,x) y over pairs of A0 basis vectors
  for (std::size_t i = 0; i < b0.size(); ++i)
    for (std::size_t j = i; j < b0.size(); ++j) {
      const Scalar hij = alg.h(b0[i], b0[j]);
      for (std::size_t k = 0; k < b1.size(); ++k) {
        Vec lhs = alg.multiply(b0[i], alg.multiply(b0[j], b1[k])) + alg.multiply(b0[j], alg.multiply(b0[i], b1[k]));
        add_scaled(lhs, b1[k], Scalar(-2) * hij);
        if (!is_zero(lhs))
          return fail("(iii) x(xy) = h(x,x)y",
                      "a" + std::to_string(i) + ", a" + std::to_string(j) + ", b" + std::to_string(k));
      }
    }
  if (b0.size() == 1 && !trace_left(alg, b0[0]).is_zero()) return fail("(iv) trace L(x) = 0 on A0", "a0");

  const Matrix kappa = trace_gram(alg);
  const Scalar d0(static_cast<long>(rep.dim0));
  const Scalar d1(static_cast<long>(rep.dim1));
  std::vector<Vec> all = b0;
  all.insert(all.end(), b1.begin(), b1.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i; j < all.size(); ++j) {
      const bool in0i = i < b0.size();
      const bool in0j = j < b0.size();
      Scalar expect;
      if (in0i && in0j) expect = alg.h(all[i], all[j]) * d1;
      else if (!in0i && !in0j) expect = Scalar(2) * alg.h(all[i], all[j]) * d0;
      if (bilinear(kappa, all[i], all[j]) != expect)
        return fail("trace formula", "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  rep.pass = true;
  rep.mutant = rep.dim1 == 2 * rep.dim0;
  return rep;
}

/// Killing form invariant and nondegenerate; with n2 known, infers exceptional or mutant.
inline Report killing_metrized_check(const Algebra& alg, std::optional<long> n2 = std::nullopt) {
  const auto kf = killing_form(alg);
  Report r("killing", kf.invariant && kf.nondegenerate);
  if (!kf.invariant) {
    r.summary = "Killing form is not invariant";
    r.witness = "(i,j,k)=" + format_tuple(*kf.violation);
  } else if (!kf.nondegenerate) {
    r.summary = "Killing form is degenerate";
  } else {
    r.summary = "Killing metrized";
  }
  // kappa = s H when proportional
  const Matrix& g = alg.metric();
  std::optional<Scalar> s;
  for (std::size_t i = 0; i < alg.dim() && !s; ++i)
    for (std::size_t j = 0; j < alg.dim() && !s; ++j)
      if (!g(i, j).is_zero()) s = kf.gram(i, j) / g(i, j);
  if (s && *s * g == kf.gram) r.notes.push_back("kappa = " + s->to_string() + " h");
  if (r.pass && n2) {
    r.n2 = n2;
    r.notes.push_back(*n2 == 2 ? "inferred mutant (Killing metrized with n2 = 2)"
                               : "inferred exceptional (Killing metrized with n2 != 2)");
  }
  return r;
}

/// The scalar s with Killing form = s h, if proportional.
inline std::optional<Scalar> killing_ratio(const Algebra& alg) {
  const Matrix k = trace_gram(alg);
  const Matrix& g = alg.metric();
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = 0; j < alg.dim(); ++j)
      if (!g(i, j).is_zero()) {
        const Scalar s = k(i, j) / g(i, j);
        if (s * g == k) return s;
        return std::nullopt;
      }
  return std::nullopt;
}

}  // namespace coneforge
