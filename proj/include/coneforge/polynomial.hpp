#pragma once

// Sparse multivariate polynomials over Q(sqrt 3).
//
// Text form: terms joined by '+', each `coeff*x1^a*x2^b` with 1-based
// variables; exponent 1 is omitted and two-part coefficients are wrapped in
// parentheses, e.g. "(0+3/2r3)*x1*x4^2+-3*x2". The parser also accepts '-'
// between terms and a bare monomial with implied coefficient 1.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "coneforge/errors.hpp"
#include "coneforge/matrix.hpp"

namespace coneforge {

using Exponent = std::vector<unsigned>;

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Scalar& c) {
    Polynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  /// x_i, 0-based index.
  static Polynomial variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DimensionError("variable index out of range");
    Exponent e(nvars, 0);
    e[i] = 1;
    Polynomial p(nvars);
    p.add_term(e, Scalar(1));
    return p;
  }
  /// sum_i x_i^2.
  static Polynomial norm_squared(std::size_t nvars) {
    Polynomial p(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
      Exponent e(nvars, 0);
      e[i] = 2;
      p.add_term(e, Scalar(1));
    }
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const std::map<Exponent, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Scalar coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar() : it->second;
  }

  void add_term(const Exponent& e, const Scalar& c) {
    if (e.size() != nvars_) throw DimensionError("exponent length does not match variable count");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Total degree; -1 for the zero polynomial.
  long degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total(e));
    return d;
  }

  bool is_homogeneous(long d) const {
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return total(t.first) == d; });
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Scalar& s, Polynomial p) { return p *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_arity(b);
    Polynomial out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// d/dx_i, 0-based index.
  Polynomial derivative(std::size_t i) const {
    if (i >= nvars_) throw DimensionError("derivative index out of range");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      --d[i];
      out.add_term(d, c * Scalar(static_cast<long>(e[i])));
    }
    return out;
  }

  Scalar eval(const Vec& x) const {
    if (x.size() != nvars_) throw DimensionError("evaluation point has wrong length");
    Scalar acc;
    for (const auto& [e, c] : terms_) {
      Scalar t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
      acc += t;
    }
    return acc;
  }

  double eval(const std::vector<double>& x) const {
    if (x.size() != nvars_) throw DimensionError("evaluation point has wrong length");
    double acc = 0;
    for (const auto& [e, c] : terms_) {
      double t = c.to_double();
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
      acc += t;
    }
    return acc;
  }

  /// Terms in graded lexicographic order, highest first.
  std::vector<std::pair<Exponent, Scalar>> ordered_terms() const {
    std::vector<std::pair<Exponent, Scalar>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      const long da = total(a.first);
      const long db = total(b.first);
      if (da != db) return da > db;
      return a.first > b.first;
    });
    return v;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : ordered_terms()) {
      if (!first) out += '+';
      first = false;
      if (c.is_rational()) out += c.to_string();
      else out += "(" + c.to_string() + ")";
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        out += "*x" + std::to_string(i + 1);
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
      }
    }
    return out;
  }

  /// nvars = 0 infers the count from the largest variable index.
  static Polynomial parse(std::string_view text, std::size_t nvars = 0);

 private:
  static long total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0L); }
  void check_arity(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw DimensionError("polynomials have different variable counts");
  }

  std::size_t nvars_ = 0;
  std::map<Exponent, Scalar> terms_;
};

namespace detail {

class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view text) : text_(text) {}

  struct RawTerm {
    Scalar coeff;
    std::map<std::size_t, unsigned> powers;
  };

  std::vector<RawTerm> run() {
    std::vector<RawTerm> terms;
    skip();
    if (at_end()) fail("empty polynomial");
    bool negate = false;
    if (peek() == '-' || peek() == '+') {
      negate = peek() == '-';
      ++pos_;
      skip();
    }
    for (;;) {
      RawTerm t = term();
      if (negate) t.coeff = -t.coeff;
      terms.push_back(std::move(t));
      skip();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      negate = peek() == '-';
      ++pos_;
      skip();
      if (!at_end() && (peek() == '-' || peek() == '+')) {
        if (peek() == '-') negate = !negate;
        ++pos_;
        skip();
      }
    }
    return terms;
  }

  std::size_t max_var() const noexcept { return max_var_; }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n')) ++pos_;
  }
  bool digit() const { return !at_end() && peek() >= '0' && peek() <= '9'; }

  unsigned long number() {
    if (!digit()) fail("expected digit");
    unsigned long v = 0;
    while (digit()) {
      v = v * 10 + static_cast<unsigned long>(peek() - '0');
      if (v > 1000000) fail("number too large");
      ++pos_;
    }
    return v;
  }

  RawTerm term() {
    RawTerm t;
    t.coeff = Scalar(1);
    bool need_factor = true;
    if (peek() == '(') {
      const std::size_t open = pos_;
      const std::size_t close = text_.find(')', open);
      if (close == std::string_view::npos) fail("unclosed '('");
      try {
        t.coeff = Scalar::parse(text_.substr(open + 1, close - open - 1));
      } catch (const ParseError& e) {
        throw ParseError("bad coefficient", open + 1 + e.position());
      }
      pos_ = close + 1;
      need_factor = false;
    } else if (digit()) {
      const std::size_t start = pos_;
      while (!at_end() && (digit() || peek() == '/')) ++pos_;
      if (text_.substr(pos_, 2) == "r3") pos_ += 2;
      try {
        t.coeff = Scalar::parse(text_.substr(start, pos_ - start));
      } catch (const ParseError& e) {
        throw ParseError("bad coefficient", start + e.position());
      }
      need_factor = false;
    }
    skip();
    if (!need_factor) {
      if (at_end() || peek() != '*') return t;
      ++pos_;
      skip();
    }
    for (;;) {
      if (at_end() || peek() != 'x') fail("expected variable");
      ++pos_;
      const std::size_t at = pos_;
      const unsigned long idx = number();
      if (idx == 0) throw ParseError("variables are numbered from 1", at);
      unsigned long power = 1;
      skip();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip();
        power = number();
      }
      t.powers[idx - 1] += static_cast<unsigned>(power);
      max_var_ = std::max<std::size_t>(max_var_, idx);
      skip();
      if (at_end() || peek() != '*') return t;
      ++pos_;
      skip();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t max_var_ = 0;
};

}  // namespace detail

inline Polynomial Polynomial::parse(std::string_view text, std::size_t nvars) {
  detail::PolynomialParser parser(text);
  const auto raw = parser.run();
  if (nvars == 0) nvars = parser.max_var();
  if (parser.max_var() > nvars) throw DimensionError("polynomial uses more variables than declared");
  Polynomial p(nvars);
  for (const auto& t : raw) {
    Exponent e(nvars, 0);
    for (const auto& [i, k] : t.powers) e[i] += k;
    p.add_term(e, t.coeff);
  }
  return p;
}

}  // namespace coneforge
