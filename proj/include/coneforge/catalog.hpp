#pragma once

// Concrete algebras: Hurwitz and para-Hurwitz, cross products, the color
// algebra, Clifford systems and their polar algebras, Cartan cubics, triples.

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "coneforge/algebra.hpp"
#include "coneforge/cubic.hpp"
#include "coneforge/errors.hpp"
#include "coneforge/polynomial.hpp"

namespace coneforge {

/// Hurwitz-Radon number: 8a + 2^b for m = 2^(4a+b) * odd, 0 <= b <= 3.
inline long rho(long m) {
  if (m < 1) throw DomainError("rho needs a positive integer");
  long e = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++e;
  }
  return 8 * (e / 4) + (1L << (e % 4));
}

namespace detail {

using IVec = std::vector<long>;

inline IVec cd_conj(IVec x) {
  for (std::size_t i = 1; i < x.size(); ++i) x[i] = -x[i];
  return x;
}

// (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))
inline IVec cd_mul(const IVec& x, const IVec& y) {
  if (x.size() == 1) return {x[0] * y[0]};
  const std::size_t h = x.size() / 2;
  const IVec a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
  const IVec c(y.begin(), y.begin() + h), d(y.begin() + h, y.end());
  const IVec ac = cd_mul(a, c), db = cd_mul(cd_conj(d), b);
  const IVec da = cd_mul(d, a), bc = cd_mul(b, cd_conj(c));
  IVec out(x.size());
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = ac[i] - db[i];
    out[h + i] = da[i] + bc[i];
  }
  return out;
}

inline IVec cd_unit(std::size_t d, std::size_t i) {
  IVec v(d, 0);
  v[i] = 1;
  return v;
}

inline void check_hurwitz_dim(long d) {
  if (d != 1 && d != 2 && d != 4 && d != 8)
    throw DomainError("Hurwitz dimension must be 1, 2, 4 or 8, got " + std::to_string(d));
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

inline Matrix blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  const std::size_t n = a.rows();
  Matrix out(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = a(i, j);
      out(i, n + j) = b(i, j);
      out(n + i, j) = c(i, j);
      out(n + i, n + j) = d(i, j);
    }
  return out;
}

}  // namespace detail

/// Cayley-Dickson table on R^d with h(x,x) = n(x); `para` gives x*y = conj(x) conj(y).
inline Algebra hurwitz(long d, bool para = false) {
  detail::check_hurwitz_dim(d);
  const auto n = static_cast<std::size_t>(d);
  std::vector<StructureEntry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto x = detail::cd_unit(n, i);
      auto y = detail::cd_unit(n, j);
      if (para) {
        x = detail::cd_conj(x);
        y = detail::cd_conj(y);
      }
      const auto p = detail::cd_mul(x, y);
      for (std::size_t k = 0; k < n; ++k)
        if (p[k] != 0) entries.push_back({i, j, k, Scalar(p[k])});
    }
  static const char* names[] = {"", "R", "C", "", "H", "", "", "", "O"};
  if (para) {
    const std::string name = d == 2 ? "paraC" : "paraH(" + std::to_string(d) + ")";
    return Algebra(name, n, entries, Matrix::identity(n), Matrix::identity(n), d <= 2);
  }
  Vec conj(n, Scalar(-1));
  conj[0] = Scalar(1);
  return Algebra(names[d], n, entries, Matrix::identity(n), Matrix::diagonal(conj), d <= 2);
}

inline Algebra para_complex() { return hurwitz(2, true); }

/// R^3 cross product, or the imaginary octonions with x*y = (xy - yx)/2.
inline Algebra cross_product(long dim) {
  std::vector<StructureEntry> entries;
  if (dim == 3) {
    const std::size_t cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    for (const auto& c : cyc) {
      entries.push_back({c[0], c[1], c[2], Scalar(1)});
      entries.push_back({c[1], c[0], c[2], Scalar(-1)});
    }
  } else if (dim == 7) {
    const Algebra oct = hurwitz(8);
    for (std::size_t i = 1; i < 8; ++i)
      for (std::size_t j = 1; j < 8; ++j)
        for (std::size_t k = 1; k < 8; ++k) {
          const Scalar c = (oct.coefficient(i, j, k) - oct.coefficient(j, i, k)) * Scalar::rational(1, 2);
          if (!c.is_zero()) entries.push_back({i - 1, j - 1, k - 1, c});
        }
  } else {
    throw DomainError("cross products exist only in dimensions 3 and 7, got " + std::to_string(dim));
  }
  const auto n = static_cast<std::size_t>(dim);
  return Algebra("cross" + std::to_string(dim), n, entries, Matrix::identity(n), Scalar(-1) * Matrix::identity(n));
}

/// (x',x'')(y',y'') = (x'y' - x''y'', -x'y'' - x''y') on R^3 x R^3 with cross products.
inline Algebra vector_color() {
  const Algebra cross = cross_product(3);
  std::vector<StructureEntry> entries;
  for (const auto& e : cross.entries()) {
    entries.push_back({e.i, e.j, e.k, e.c});
    entries.push_back({e.i + 3, e.j + 3, e.k, -e.c});
    entries.push_back({e.i, e.j + 3, e.k + 3, -e.c});
    entries.push_back({e.i + 3, e.j, e.k + 3, -e.c});
  }
  return Algebra("color", 6, entries, Matrix::identity(6), Scalar(-1) * Matrix::identity(6));
}

struct CliffordSystem {
  std::size_t p = 0;
  std::size_t q = 0;
  std::vector<Matrix> matrices;
};

/// First failure of A_i^T = A_i and A_i A_j + A_j A_i = 2 delta_ij I, if any.
inline std::optional<std::string> clifford_violation(const std::vector<Matrix>& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_symmetric()) return "A" + std::to_string(i + 1) + " is not symmetric";
    for (std::size_t j = i; j < a.size(); ++j) {
      Matrix ac = a[i] * a[j] + a[j] * a[i];
      Matrix expect(ac.rows(), ac.cols());
      if (i == j) expect = Scalar(2) * Matrix::identity(ac.rows());
      if (ac != expect) return "A" + std::to_string(i + 1) + ", A" + std::to_string(j + 1) + " violate the anticommutation relation";
    }
  }
  return std::nullopt;
}

/// rho(p) - 1 anticommuting skew complex structures on R^p.
inline std::vector<Matrix> complex_structures(std::size_t p) {
  std::size_t odd = p;
  std::size_t e = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++e;
  }
  std::vector<Matrix> js;
  const auto base = static_cast<long>(1L << (e % 4));
  if (base > 1) {
    const Algebra f = hurwitz(base);
    for (std::size_t i = 1; i < static_cast<std::size_t>(base); ++i) js.push_back(f.basis_operator(i, Side::left));
  }
  std::size_t dim = static_cast<std::size_t>(base);
  if (e >= 4) {
    const Algebra oct = hurwitz(8);
    const Matrix id8 = Matrix::identity(8);
    const Matrix zero8(8, 8);
    std::vector<Matrix> f;
    for (std::size_t i = 1; i < 8; ++i) {
      const Matrix l = oct.basis_operator(i, Side::left);
      f.push_back(detail::blocks(l, zero8, zero8, Scalar(-1) * l));
    }
    f.push_back(detail::blocks(zero8, Scalar(-1) * id8, id8, zero8));
    Matrix omega = Matrix::identity(16);
    for (const auto& m : f) omega = omega * m;
    for (std::size_t step = 0; step < e / 4; ++step) {
      std::vector<Matrix> next;
      const Matrix id = Matrix::identity(dim);
      for (const auto& m : f) next.push_back(detail::kron(m, id));
      for (const auto& j : js) next.push_back(detail::kron(omega, j));
      js = std::move(next);
      dim *= 16;
    }
  }
  if (odd > 1) {
    const Matrix id = Matrix::identity(odd);
    for (auto& j : js) j = detail::kron(j, id);
  }
  return js;
}

/// Symmetric Clifford system A_1..A_q on R^(2p); needs q - 1 <= rho(p).
inline CliffordSystem clifford_system(long p, long q) {
  if (p < 1 || q < 1) throw DomainError("clifford(p,q) needs positive p and q");
  const long r = rho(p);
  if (q - 1 > r)
    throw DomainError("q−1 ≤ ρ(p) violated: ρ(" + std::to_string(p) + ")=" + std::to_string(r));
  const auto pp = static_cast<std::size_t>(p);
  const Matrix id = Matrix::identity(pp);
  const Matrix zero(pp, pp);
  CliffordSystem sys{pp, static_cast<std::size_t>(q), {}};
  sys.matrices.push_back(detail::blocks(id, zero, zero, Scalar(-1) * id));
  if (q >= 2) sys.matrices.push_back(detail::blocks(zero, id, id, zero));
  const auto js = complex_structures(pp);
  for (long k = 0; k + 2 < q; ++k) {
    const Matrix& j = js.at(static_cast<std::size_t>(k));
    sys.matrices.push_back(detail::blocks(zero, j, Scalar(-1) * j, zero));
  }
  if (auto v = clifford_violation(sys.matrices)) throw InternalInconsistency("Clifford construction: " + *v);
  return sys;
}

/// Algebra of u = (1/2) sum_k z_k <A_k y, y> on R^(2p) x R^q (y block first).
inline Algebra polar_from_clifford(const CliffordSystem& sys) {
  if (auto v = clifford_violation(sys.matrices)) throw DomainError("not a Clifford system: " + *v);
  const std::size_t m = 2 * sys.p;
  const std::size_t n = m + sys.q;
  std::vector<StructureEntry> entries;
  for (std::size_t k = 0; k < sys.q; ++k) {
    const Matrix& a = sys.matrices[k];
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        if (a(r, c).is_zero()) continue;
        entries.push_back({r, c, m + k, a(r, c)});
        // e_c * z_k = A_k e_c
        entries.push_back({c, m + k, r, a(r, c)});
        entries.push_back({m + k, c, r, a(r, c)});
      }
  }
  const std::string name = "clifford(" + std::to_string(sys.p) + "," + std::to_string(sys.q) + ")";
  return Algebra(name, n, entries, Matrix::identity(n), std::nullopt, true);
}

struct CartanCubic {
  Polynomial u;
  Algebra alg;
};

/// Isoparametric cubic on (z1, z2, z3, x_a, x_b) in F_d^3 x R^2.
inline CartanCubic cartan_cubic(long d) {
  if (d != 0) detail::check_hurwitz_dim(d);
  const auto dd = static_cast<std::size_t>(d);
  const std::size_t n = 3 * dd + 2;
  const std::size_t xa = 3 * dd;
  const std::size_t xb = xa + 1;
  auto var = [n](std::size_t i) { return Polynomial::variable(n, i); };
  auto block_norm = [&](std::size_t block) {
    Polynomial s(n);
    for (std::size_t i = 0; i < dd; ++i) s += var(block * dd + i) * var(block * dd + i);
    return s;
  };
  const Scalar r3 = Scalar::sqrt3();
  Polynomial u = var(xb) * var(xb) * var(xb);
  Polynomial inner = block_norm(0) + block_norm(1) - Scalar(2) * block_norm(2) - Scalar(2) * (var(xa) * var(xa));
  u += Scalar::rational(3, 2) * (var(xb) * inner);
  u += (Scalar::rational(3, 2) * r3) * (var(xa) * (block_norm(1) - block_norm(0)));
  if (dd > 0) {
    const Algebra f = hurwitz(d);
    for (std::size_t i = 0; i < dd; ++i)
      for (std::size_t j = 0; j < dd; ++j)
        for (const auto& t : f.product(i, j)) {
          // Re((e_i e_j) e_k) is the e_0 coefficient
          for (std::size_t k = 0; k < dd; ++k) {
            const Scalar re = t.c * f.coefficient(t.k, k, 0);
            if (re.is_zero()) continue;
            Exponent e(n, 0);
            ++e[i];
            ++e[dd + j];
            ++e[2 * dd + k];
            u.add_term(e, Scalar(3) * r3 * re);
          }
        }
  }
  Algebra alg = algebra_from_cubic(u, Matrix::identity(n), "cartan(" + std::to_string(d) + ")");
  return {std::move(u), std::move(alg)};
}

/// Commutative algebra on A x A x A with cyclic products of conjugates.
inline Algebra triple(const Algebra& alg) {
  if (auto v = anti_automorphism_violation(alg))
    throw DomainError("tripling needs an involution that reverses products; fails at (i,j)=" + format_tuple(*v));
  const std::size_t n = alg.dim();
  const Matrix& s = alg.involution();
  std::vector<Vec> conj;
  for (std::size_t i = 0; i < n; ++i) conj.push_back(s.column(i));
  // conj(x_a) conj(y_b) lands in block `target`
  auto pieces = [&](std::size_t bx, std::size_t by) -> long {
    if (bx == by) return -1;
    return static_cast<long>(3 - bx - by);
  };
  std::vector<StructureEntry> entries;
  for (std::size_t bx = 0; bx < 3; ++bx)
    for (std::size_t by = 0; by < 3; ++by) {
      const long target = pieces(bx, by);
      if (target < 0) continue;
      // component `target` reads x_{t+2} y_{t+1} + y_{t+2} x_{t+1} (indices mod 3)
      const auto t = static_cast<std::size_t>(target);
      const bool x_first = bx == (t + 2) % 3;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Vec prod = x_first ? alg.multiply(conj[i], conj[j]) : alg.multiply(conj[j], conj[i]);
          for (std::size_t k = 0; k < n; ++k)
            if (!prod[k].is_zero()) entries.push_back({bx * n + i, by * n + j, t * n + k, prod[k]});
        }
    }
  Matrix g(3 * n, 3 * n);
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) g(b * n + r, b * n + c) = alg.metric()(r, c);
  Algebra out("triple(" + alg.name() + ")", 3 * n, entries, g, std::nullopt, true);
  out.set_source(std::make_shared<const Algebra>(alg));
  return out;
}

/// Catalog members that are quasicomposition algebras, smallest first within each family.
inline std::vector<std::string> quasicomposition_catalog() {
  return {"R", "C", "H", "O", "paraC", "cross3", "cross7", "color"};
}

namespace detail {

class CatalogParser {
 public:
  explicit CatalogParser(std::string_view text) : text_(text) {}

  Algebra run() {
    Algebra a = item();
    skip();
    if (pos_ < text_.size()) throw ParseError("unexpected trailing text", pos_);
    return a;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected a catalog name", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }
  long integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || pos_ - start > 6) throw ParseError("expected an integer", start);
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  Algebra item() {
    const std::string name = ident();
    if (name == "R") return hurwitz(1);
    if (name == "C") return hurwitz(2);
    if (name == "H") return hurwitz(4);
    if (name == "O") return hurwitz(8);
    if (name == "paraC") return para_complex();
    if (name == "cross3") return cross_product(3);
    if (name == "cross7") return cross_product(7);
    if (name == "color") return vector_color();
    if (name == "paraH") {
      expect('(');
      const long d = integer();
      expect(')');
      return hurwitz(d, true);
    }
    if (name == "cartan") {
      expect('(');
      const long d = integer();
      expect(')');
      return cartan_cubic(d).alg;
    }
    if (name == "clifford") {
      expect('(');
      const long p = integer();
      expect(',');
      const long q = integer();
      expect(')');
      return polar_from_clifford(clifford_system(p, q));
    }
    if (name == "triple") {
      expect('(');
      Algebra inner = item();
      expect(')');
      return triple(inner);
    }
    throw DomainError("unknown catalog name '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// R, C, H, O, paraC, paraH(d), cross3, cross7, color, clifford(p,q), cartan(d), triple(<name>).
inline Algebra construct(std::string_view spec) { return detail::CatalogParser(spec).run(); }

}  // namespace coneforge
