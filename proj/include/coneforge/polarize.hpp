#pragma once

// Complete polarization of homogeneous maps and sweeps over basis multisets.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "coneforge/errors.hpp"
#include "coneforge/matrix.hpp"
#include "coneforge/parallel.hpp"

namespace coneforge {

namespace detail {

inline void accumulate(Scalar& acc, const Scalar& v, bool negate) {
  if (negate) acc -= v;
  else acc += v;
}
inline void accumulate(Vec& acc, const Vec& v, bool negate) {
  if (acc.empty()) acc.resize(v.size());
  add_scaled(acc, v, negate ? Scalar(-1) : Scalar(1));
}
inline void accumulate(Matrix& acc, const Matrix& v, bool negate) {
  if (acc.rows() == 0) acc = Matrix(v.rows(), v.cols());
  if (negate) acc -= v;
  else acc += v;
}

inline void scale(Scalar& v, const Scalar& f) { v *= f; }
inline void scale(Vec& v, const Scalar& f) {
  for (auto& x : v) x *= f;
}
inline void scale(Matrix& v, const Scalar& f) { v *= f; }

inline Scalar inverse_factorial(std::size_t m) {
  mpz_class f = 1;
  for (std::size_t i = 2; i <= m; ++i) f *= static_cast<unsigned long>(i);
  return Scalar(mpq_class(mpz_class(1), f));
}

}  // namespace detail

/// T(x_1..x_m) = (1/m!) sum over nonempty S of (-1)^(m-|S|) F(sum_{i in S} x_i).
template <class Value, class F>
Value multilinearize(F&& f, std::span<const Vec> args) {
  const std::size_t m = args.size();
  if (m == 0) throw DomainError("polarization needs at least one argument");
  if (m > 20) throw DomainError("polarization degree too large");
  const std::size_t n = args[0].size();
  Value acc{};
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    Vec point(n);
    std::size_t size = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) {
        add_scaled(point, args[i], Scalar(1));
        ++size;
      }
    detail::accumulate(acc, f(point), (m - size) % 2 == 1);
  }
  detail::scale(acc, detail::inverse_factorial(m));
  return acc;
}

using Tuple = std::vector<std::size_t>;

/// Calls fn(tuple) for every nondecreasing tuple of length m over [first_lo, n)
/// whose first entry equals `first`, in lexicographic order. Stops when fn returns false.
template <class Fn>
bool for_each_tuple_from(std::size_t n, std::size_t m, std::size_t first, Fn&& fn) {
  Tuple t(m, first);
  for (;;) {
    if (!fn(static_cast<const Tuple&>(t))) return false;
    std::size_t pos = m;
    while (pos > 1 && t[pos - 1] == n - 1) --pos;
    if (pos <= 1) return true;
    const std::size_t v = t[pos - 1] + 1;
    for (std::size_t q = pos - 1; q < m; ++q) t[q] = v;
  }
}

/// Every nondecreasing tuple of length m over [0, n), lexicographic.
template <class Fn>
void for_each_tuple(std::size_t n, std::size_t m, Fn&& fn) {
  for (std::size_t first = 0; first < n; ++first)
    if (!for_each_tuple_from(n, m, first, fn)) return;
}

inline std::uint64_t multiset_key(std::span<const std::size_t> sorted) {
  std::uint64_t key = 0;
  for (auto i : sorted) key = (key << 8) | static_cast<std::uint64_t>(i + 1);
  return key;
}

/// Values of F at every point e_{i1} + ... + e_{ik}, 1 <= k <= m, keyed by multiset.
template <class Value>
class MultisetTable {
 public:
  using Evaluator = std::function<Value(const Vec&)>;

  MultisetTable(std::size_t n, std::size_t m, const Evaluator& f) : n_(n), m_(m) {
    if (m == 0 || m > 8) throw DomainError("multiset sweeps support degrees 1..8");
    if (n >= 255) throw DomainError("multiset sweeps support dimension below 255");
    std::vector<Tuple> keys;
    for (std::size_t k = 1; k <= m; ++k) for_each_tuple(n, k, [&](const Tuple& t) {
        keys.push_back(t);
        return true;
      });
    values_.resize(keys.size());
    index_.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) index_.emplace(multiset_key(keys[i]), i);
    parallel_items(keys.size(), [&](std::size_t item, std::size_t) {
      Vec point(n);
      for (auto i : keys[item]) point[i] += Scalar(1);
      values_[item] = f(point);
    });
  }

  std::size_t dim() const noexcept { return n_; }
  std::size_t degree() const noexcept { return m_; }
  std::size_t size() const noexcept { return values_.size(); }

  const Value& at(std::span<const std::size_t> sorted) const { return values_[index_.at(multiset_key(sorted))]; }

  /// m! times the polarization at the basis tuple; zero exactly when the polarization is.
  Value scaled_polarization(std::span<const std::size_t> tuple) const {
    const std::size_t m = tuple.size();
    Value acc{};
    std::size_t sub[8];
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      std::size_t size = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (1u << i)) sub[size++] = tuple[i];
      detail::accumulate(acc, at(std::span<const std::size_t>(sub, size)), (m - size) % 2 == 1);
    }
    return acc;
  }

  Value polarization(std::span<const std::size_t> tuple) const {
    Value v = scaled_polarization(tuple);
    detail::scale(v, detail::inverse_factorial(tuple.size()));
    return v;
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<Value> values_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Lexicographically first nondecreasing m-tuple over [0, n) with violates(tuple),
/// searched in parallel over the first index.
template <class Pred>
std::optional<Tuple> first_violation(std::size_t n, std::size_t m, Pred&& violates) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> best{none};
  std::vector<std::optional<Tuple>> found(n);
  parallel_items(n, [&](std::size_t first, std::size_t) {
    if (best.load() < first) return;
    for_each_tuple_from(n, m, first, [&](const Tuple& t) {
      if (best.load(std::memory_order_relaxed) < first) return false;
      if (!violates(t)) return true;
      found[first] = t;
      std::size_t cur = best.load();
      while (first < cur && !best.compare_exchange_weak(cur, first)) {
      }
      return false;
    });
  });
  const std::size_t b = best.load();
  if (b == none) return std::nullopt;
  return found[b];
}

/// Deterministic integer point in [-bound, bound]^n for (seed, item).
inline Vec random_point(std::size_t n, std::uint64_t seed, std::uint64_t item, long bound = 7) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(item), static_cast<std::uint32_t>(item >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<long> dist(-bound, bound);
  Vec x(n);
  for (auto& c : x) c = Scalar(dist(rng));
  return x;
}

/// First item in [0, count) with violates(random_point(item)); parallel, deterministic.
template <class Pred>
std::optional<std::pair<std::size_t, Vec>> first_random_violation(std::size_t n, std::size_t count,
                                                                  std::uint64_t seed, Pred&& violates) {
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> best{none};
  parallel_items(count, [&](std::size_t item, std::size_t) {
    if (best.load() < item) return;
    if (!violates(random_point(n, seed, item))) return;
    std::size_t cur = best.load();
    while (item < cur && !best.compare_exchange_weak(cur, item)) {
    }
  });
  const std::size_t b = best.load();
  if (b == none) return std::nullopt;
  return std::make_pair(b, random_point(n, seed, b));
}

}  // namespace coneforge
