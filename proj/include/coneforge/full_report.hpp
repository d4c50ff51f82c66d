#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>

#include "coneforge/algebra.hpp"
#include "coneforge/hsiang.hpp"
#include "coneforge/numeric.hpp"
#include "coneforge/polar.hpp"
#include "coneforge/quasicomposition.hpp"

namespace coneforge {

struct ReportOptions {
  SweepOptions sweep;
  bool peirce = false;
  std::size_t restarts = 20;
  std::uint64_t seed = 0;
  /// Polynomial-identity checks whose cost grows like dim^5 run only up to this size.
  std::size_t heavy_limit = 32;
};

namespace detail {

inline std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

inline std::string fixed(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed << v;
  return os.str();
}

}  // namespace detail

inline Report hsiang_report(const HsiangReport& h, bool radial) {
  Report r(radial ? "hsiang" : "nonradial", radial ? h.theta.has_value() : h.nonradial_b.has_value());
  r.theta = h.theta;
  if (radial) {
    r.summary = h.theta ? "radial Hsiang with theta = " + h.theta->to_string() : "no constant theta";
    if (h.theta) r.notes.push_back(h.degenerate ? "degenerate" : "nondegenerate");
  } else if (h.nonradial_b) {
    r.summary = "nonradial Hsiang, b found";
    std::string rows;
    for (std::size_t i = 0; i < h.nonradial_b->rows(); ++i) rows += (i ? "; " : "") + format_vec(h.nonradial_b->row(i));
    r.notes.push_back("b = [" + rows + "]");
  } else {
    r.summary = "no symmetric b";
  }
  if (!h.exhaustive) r.notes.push_back("randomized sweep");
  const std::string w = h.witness_text();
  if (!w.empty()) r.witness = w;
  return r;
}

inline Report eikonal_report(const PseudocompositionResult& p) {
  Report r("eikonal", p.eikonal);
  r.theta = p.theta_prime;
  if (p.witness) {
    r.summary = "no b with x^3 = b(x,x) x";
    r.witness = "basis tuple " + format_tuple(*p.witness);
  } else if (p.eikonal) {
    r.summary = "eikonal with theta' = " + p.theta_prime->to_string();
  } else {
    r.summary = "pseudocomposition, b not proportional to a Euclidean h";
  }
  return r;
}

/// Runs every applicable check; failing checks are recorded, not thrown.
/// The top-level verdict fails only when two routes to the same quantity disagree
/// (Peirce data of a Hsiang algebra, idempotent length, defect versus d,
/// degeneracy).
inline Report full_report(const Algebra& alg, const ReportOptions& opt = {}) {
  Report top("report", true, alg.name() + ", dim " + std::to_string(alg.dim()) + ", field " + field_tag(alg.field()));
  const std::size_t n = alg.dim();
  top.notes.push_back(find_unit(alg) ? "unital" : "not unital");
  top.notes.push_back(is_exact(alg) ? "exact" : "not exact");

  const Report metrized = check_metrized(alg);
  top.children.push_back(metrized);
  const bool euclidean = is_positive_definite(alg.metric());

  if (metrized.pass) {
    const auto qc = quasicomposition_check(alg, opt.seed);
    top.children.push_back(qc.to_report());
    if (qc.delta) top.delta = qc.delta;
  }

  std::optional<Scalar> theta;
  std::optional<long> n2;
  const bool hsiang_applicable = alg.commutative() && metrized.pass && euclidean;
  if (hsiang_applicable && n <= opt.heavy_limit) {
    SweepOptions sw = opt.sweep;
    sw.seed = opt.seed;
    const auto radial = radial_hsiang_check(alg, sw);
    top.children.push_back(hsiang_report(radial, true));
    theta = radial.theta;
    top.theta = theta;
    if (radial.theta) top.children.push_back(degeneracy_check(alg, radial, opt.seed));
    else top.children.push_back(hsiang_report(nonradial_hsiang_check(alg, sw), false));
    top.children.push_back(eikonal_report(pseudocomposition_check(alg, opt.seed)));
  } else if (hsiang_applicable) {
    SweepOptions sw = opt.sweep;
    sw.seed = opt.seed;
    const auto radial = radial_hsiang_check(alg, sw);
    top.children.push_back(hsiang_report(radial, true));
    theta = radial.theta;
    top.theta = theta;
    top.notes.push_back("nonradial and eikonal checks skipped above dimension " + std::to_string(opt.heavy_limit));
  }

  if (opt.peirce && euclidean) {
    const FloatAlgebra fa(alg);
    const auto idem = find_idempotent(fa, opt.restarts, opt.seed);
    Report pr("peirce", !idem.empty());
    if (idem.empty()) {
      pr.summary = "no idempotent found";
    } else {
      const PeirceData pd = peirce(fa, idem.front().c);
      pr.pass = pd.spectrum_ok && pd.dimensions_ok;
      pr.n1 = pd.n1;
      pr.n2 = pd.n2;
      pr.d = pd.d;
      n2 = pd.n2;
      std::string spec = "spectrum";
      for (const auto& cl : pd.clusters)
        spec += " " + detail::fixed(cl.value) + "^" + std::to_string(cl.multiplicity);
      pr.summary = spec + ", |c|^2 = " + detail::fixed(pd.idempotent_norm) + ", residual " + detail::sci(idem.front().residual);
      pr.notes = pd.notes;
      pr.notes.push_back(std::to_string(idem.size()) + " distinct idempotents");
      top.n1 = pd.n1;
      top.n2 = pd.n2;
      top.d = pd.d;
      if (theta && theta->sign() > 0) {
        const double target = 1.0 / theta->to_double();
        double worst = 0;
        for (const auto& c : idem) worst = std::max(worst, std::abs(fa.from_original(c.c).squaredNorm() - target));
        Report len("idempotent-length", worst <= 1e-8, "max |h(c,c) - 1/theta| = " + detail::sci(worst));
        pr.children.push_back(len);
      }
    }
    top.children.push_back(pr);
  }

  top.children.push_back(killing_metrized_check(alg, n2));

  if (const auto& src = alg.source()) {
    const auto sq = quasicomposition_check(*src, opt.seed);
    if (sq.delta && top.d) {
      Report cross("hurwitz-defect", *sq.delta == *top.d,
                   "delta(" + src->name() + ") = " + std::to_string(*sq.delta) + ", d = " + std::to_string(*top.d));
      top.children.push_back(cross);
    } else if (sq.delta) {
      top.notes.push_back("source " + src->name() + " has defect " + std::to_string(*sq.delta));
    }
  }
  static const std::set<std::string> cross_checks{"degeneracy", "peirce", "hurwitz-defect"};
  for (const auto& c : top.children) {
    if (!cross_checks.count(c.check)) continue;
    if (c.check == "peirce" && !theta) continue;
    top.pass = top.pass && c.pass;
    for (const auto& g : c.children) top.pass = top.pass && g.pass;
  }
  return top;
}

}  // namespace coneforge
