#pragma once

// Exact elements of the quadratic field Q(sqrt 3).

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "coneforge/errors.hpp"

namespace coneforge {

/// a + b*sqrt(3) with a, b arbitrary-precision rationals, always canonical.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class a, mpq_class b = 0) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static Scalar rational(long num, long den = 1) {
    if (den == 0) throw DivisionByZero();
    return Scalar(mpq_class(num, den));
  }
  static Scalar sqrt3() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& rational_part() const noexcept { return a_; }
  const mpq_class& sqrt3_part() const noexcept { return b_; }

  bool is_zero() const noexcept { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const noexcept { return sgn(b_) == 0; }
  bool is_integer() const { return is_rational() && a_.get_den() == 1; }

  /// Exact sign of a + b*sqrt(3).
  int sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // opposite signs: compare a^2 with 3 b^2
    const mpq_class lhs = a_ * a_;
    const mpq_class rhs = 3 * b_ * b_;
    const int c = cmp(lhs, rhs);
    return c > 0 ? sa : -sa;  // c == 0 is impossible, sqrt 3 is irrational
  }

  /// Algebraic conjugate a - b*sqrt(3).
  Scalar conjugate() const { return Scalar(a_, -b_); }
  /// Field norm a^2 - 3 b^2, a rational that vanishes only at zero.
  mpq_class norm() const { return a_ * a_ - 3 * b_ * b_; }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) return Scalar(1 / a_);
    const mpq_class n = norm();
    return Scalar(a_ / n, -b_ / n);
  }

  double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(3.0); }

  Scalar& operator+=(const Scalar& o) {
    a_ += o.a_;
    if (sgn(o.b_) != 0) b_ += o.b_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    a_ -= o.a_;
    if (sgn(o.b_) != 0) b_ -= o.b_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (sgn(b_) == 0 && sgn(o.b_) == 0) {
      a_ *= o.a_;
      return *this;
    }
    mpq_class a = a_ * o.a_ + 3 * b_ * o.b_;
    mpq_class b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw DivisionByZero();
    if (o.is_rational()) {
      a_ /= o.a_;
      if (sgn(b_) != 0) b_ /= o.a_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  friend Scalar operator-(const Scalar& x) { return Scalar(-x.a_, -x.b_); }

  friend bool operator==(const Scalar& x, const Scalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  /// Square root inside Q(sqrt 3), if one exists; the nonnegative root is returned.
  std::optional<Scalar> sqrt() const;

  /// Text form: `rat`, `rat+rat r3` or `rat-rat r3` (no spaces), e.g. "3/2+1r3".
  std::string to_string() const;
  static Scalar parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

 private:
  mpq_class a_;
  mpq_class b_;
};

namespace detail {

inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn;
  mpz_class rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace detail

inline std::optional<Scalar> Scalar::sqrt() const {
  if (sign() < 0) return std::nullopt;
  if (is_zero()) return Scalar();
  if (is_rational()) {
    if (auto r = detail::rational_sqrt(a_)) return Scalar(*r);
    if (auto r = detail::rational_sqrt(a_ / 3)) return Scalar(mpq_class(0), *r);
    return std::nullopt;
  }
  // (x + y r3)^2 = x^2 + 3y^2 + 2xy r3  =>  x^2 = (a +- sqrt(a^2 - 3b^2)) / 2
  auto disc = detail::rational_sqrt(norm());
  if (!disc) return std::nullopt;
  for (const mpq_class& x2 : {mpq_class((a_ + *disc) / 2), mpq_class((a_ - *disc) / 2)}) {
    auto x = detail::rational_sqrt(x2);
    if (!x || sgn(*x) == 0) continue;
    Scalar root(*x, b_ / (2 * *x));
    if (root.sign() < 0) root = -root;
    if (root * root == *this) return root;
  }
  return std::nullopt;
}

inline std::string Scalar::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string out = a_.get_str();
  out += sgn(b_) > 0 ? '+' : '-';
  out += mpq_class(abs(b_)).get_str();
  out += "r3";
  return out;
}

namespace detail {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  Scalar run() {
    skip_space();
    if (at_end()) fail("empty scalar");
    mpq_class first = rational(true);
    if (accept_r3()) {
      finish();
      return Scalar(mpq_class(0), first);
    }
    skip_space();
    if (at_end()) return Scalar(first);
    const char op = text_[pos_];
    if (op != '+' && op != '-') fail("expected '+' or '-'");
    ++pos_;
    skip_space();
    mpq_class second = rational(false);
    if (!accept_r3()) fail("expected 'r3'");
    finish();
    return Scalar(first, op == '-' ? mpq_class(-second) : second);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  bool at_end() const { return pos_ >= text_.size(); }
  void skip_space() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  void finish() {
    skip_space();
    if (!at_end()) fail("unexpected trailing character");
  }
  bool accept_r3() {
    if (text_.substr(pos_, 2) == "r3") {
      pos_ += 2;
      return true;
    }
    return false;
  }
  std::string digits() {
    const std::size_t start = pos_;
    while (!at_end() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (pos_ == start) fail("expected digit");
    return std::string(text_.substr(start, pos_ - start));
  }
  mpq_class rational(bool allow_sign) {
    bool negative = false;
    if (!at_end() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      if (!allow_sign) fail("unexpected sign");
      negative = text_[pos_] == '-';
      ++pos_;
    }
    mpz_class num(digits());
    mpz_class den(1);
    if (!at_end() && text_[pos_] == '/') {
      ++pos_;
      const std::size_t at = pos_;
      den = mpz_class(digits());
      if (den == 0) throw ParseError("zero denominator", at);
    }
    mpq_class q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Scalar Scalar::parse(std::string_view text) { return detail::ScalarParser(text).run(); }

}  // namespace coneforge
