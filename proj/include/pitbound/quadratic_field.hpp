#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "pitbound/arith.hpp"
#include "pitbound/errors.hpp"

namespace pitbound {

/// a + b*omega, with omega = sqrt(d) or (1 + sqrt(d))/2 according to d mod 4.
struct QInt {
  i64 a = 0;
  i64 b = 0;
  friend bool operator==(const QInt&, const QInt&) = default;
};

enum class SplitType { split, inert, ramified };

inline const char* to_string(SplitType s) {
  switch (s) {
    case SplitType::split: return "split";
    case SplitType::inert: return "inert";
    case SplitType::ramified: return "ramified";
  }
  return "?";
}

/// Imaginary quadratic field Q(sqrt(d)), d < 0 squarefree.
class QuadraticField {
 public:
  static QuadraticField make(i64 d) {
    if (d >= 0) throw DomainError("d must be negative, got " + std::to_string(d));
    if (!is_squarefree(d)) throw DomainError("d must be squarefree, got " + std::to_string(d));
    QuadraticField k;
    k.d_ = d;
    k.half_integral_ = ((d % 4) + 4) % 4 == 1;
    k.disc_ = k.half_integral_ ? d : 4 * d;
    k.units_ = d == -1 ? 4 : (d == -3 ? 6 : 2);
    return k;
  }

  i64 d() const { return d_; }
  i64 discriminant() const { return disc_; }
  u64 abs_discriminant() const { return static_cast<u64>(-disc_); }
  int unit_count() const { return units_; }
  bool half_integral_basis() const { return half_integral_; }

  bool class_number_one() const {
    static constexpr i64 heegner[] = {-1, -2, -3, -7, -11, -19, -43, -67, -163};
    for (i64 h : heegner)
      if (h == d_) return true;
    return false;
  }

  /// omega^2 = omega_linear * omega + omega_constant.
  i64 omega_linear() const { return half_integral_ ? 1 : 0; }
  i64 omega_constant() const { return half_integral_ ? (d_ - 1) / 4 : d_; }

  i64 norm(QInt x) const {
    if (half_integral_) return x.a * x.a + x.a * x.b + (1 - d_) / 4 * x.b * x.b;
    return x.a * x.a - d_ * x.b * x.b;
  }

  QInt conjugate(QInt x) const { return half_integral_ ? QInt{x.a + x.b, -x.b} : QInt{x.a, -x.b}; }

  QInt mul(QInt x, QInt y) const {
    const i64 bb = x.b * y.b;
    return {x.a * y.a + bb * omega_constant(), x.a * y.b + x.b * y.a + bb * omega_linear()};
  }

  /// Product reduced mod n, components in [0, n).
  QInt mul_mod(QInt x, QInt y, i64 n) const {
    const auto red = [n](__int128 v) {
      const __int128 r = v % n;
      return static_cast<i64>(r < 0 ? r + n : r);
    };
    const __int128 bb = static_cast<__int128>(x.b) * y.b;
    return {red(static_cast<__int128>(x.a) * y.a + bb * omega_constant()),
            red(static_cast<__int128>(x.a) * y.b + static_cast<__int128>(x.b) * y.a + bb * omega_linear())};
  }

  std::vector<QInt> units() const {
    if (d_ == -1) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    if (d_ == -3) return {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    return {{1, 0}, {-1, 0}};
  }

  /// x divides y in O_K.
  bool divides(QInt x, QInt y) const {
    const i64 n = norm(x);
    const QInt q = mul(y, conjugate(x));
    return q.a % n == 0 && q.b % n == 0;
  }

 private:
  i64 d_ = -1;
  i64 disc_ = -4;
  int units_ = 4;
  bool half_integral_ = false;
};

inline SplitType splitting_type(u64 p, const QuadraticField& k) {
  if (!is_prime(p)) throw DomainError("splitting_type requires a prime, got " + std::to_string(p));
  const int s = kronecker(k.discriminant(), p);
  if (s == 0) return SplitType::ramified;
  return s == 1 ? SplitType::split : SplitType::inert;
}

namespace detail {

// Canonical order on generators: least nonnegative b, then least |a|, positive a first.
inline auto generator_key(QInt x) { return std::make_tuple(x.b < 0, x.b < 0 ? -x.b : x.b, x.a < 0 ? -x.a : x.a, x.a < 0); }

inline bool generator_less(QInt x, QInt y) { return generator_key(x) < generator_key(y); }

// Canonical generators of the ideal above p and of its conjugate, from the
// full list of elements of norm p.
inline std::array<QInt, 2> pick_generators(const std::vector<QInt>& sols, const QuadraticField& k) {
  QInt first = sols.front();
  for (QInt s : sols)
    if (generator_less(s, first)) first = s;
  bool have_second = false;
  QInt second = first;
  for (QInt s : sols) {
    if (k.divides(first, s)) continue;  // same ideal
    if (!have_second || generator_less(s, second)) second = s;
    have_second = true;
  }
  return {first, second};
}

inline std::vector<QInt> associates_and_conjugates(QInt g, const QuadraticField& k) {
  std::vector<QInt> out;
  for (QInt u : k.units()) {
    out.push_back(k.mul(u, g));
    out.push_back(k.mul(u, k.conjugate(g)));
  }
  return out;
}

}  // namespace detail

/// Every element of norm p, found by sweeping b over its admissible range
/// and solving the norm form exactly for a. Reference implementation.
inline std::vector<QInt> norm_solutions_bruteforce(u64 p, const QuadraticField& k) {
  std::vector<QInt> out;
  const u64 dd = static_cast<u64>(-k.d());
  if (!k.half_integral_basis()) {
    // a^2 + |d| b^2 = p
    for (u64 b = 0; dd * b * b <= p; ++b) {
      u64 a = 0;
      if (!is_square(p - dd * b * b, &a)) continue;
      for (i64 sa : {1, -1})
        for (i64 sb : {1, -1}) {
          QInt x{sa * static_cast<i64>(a), sb * static_cast<i64>(b)};
          bool seen = false;
          for (QInt y : out) seen = seen || y == x;
          if (!seen) out.push_back(x);
        }
    }
    return out;
  }
  // (2a + b)^2 + |d| b^2 = 4p
  for (u64 b = 0; dd * b * b <= 4 * p; ++b) {
    u64 s = 0;
    if (!is_square(4 * p - dd * b * b, &s)) continue;
    for (i64 sb : {1, -1})
      for (i64 ss : {1, -1}) {
        const i64 bb = sb * static_cast<i64>(b);
        const i64 twice_a = ss * static_cast<i64>(s) - bb;
        if (twice_a % 2 != 0) continue;
        QInt x{twice_a / 2, bb};
        bool seen = false;
        for (QInt y : out) seen = seen || y == x;
        if (!seen) out.push_back(x);
      }
  }
  return out;
}

/// One element of norm p by Cornacchia's algorithm, for p split or ramified
/// and p not dividing 2d. Returns false if none is found.
inline bool cornacchia_solution(u64 p, const QuadraticField& k, QInt& out) {
  const u64 dd = static_cast<u64>(-k.d());
  if (p == 2 || dd % p == 0) return false;
  const u64 m = k.half_integral_basis() ? 4 * p : p;
  u64 r = sqrt_mod((p - dd % p) % p, p);
  if (k.half_integral_basis()) {
    if ((r & 1) != (dd & 1)) r = p - r;
  } else if (2 * r < p) {
    r = p - r;
  }
  u64 a = k.half_integral_basis() ? 2 * p : p;
  u64 b = r;
  const u64 limit = isqrt(m);
  while (b > limit) {
    const u64 t = a % b;
    a = b;
    b = t;
  }
  const u64 rest = m - b * b;
  if (rest % dd != 0) return false;
  u64 y = 0;
  if (!is_square(rest / dd, &y)) return false;
  if (k.half_integral_basis()) {
    // x = 2a' + b', y = b'
    const i64 xa = static_cast<i64>(b) - static_cast<i64>(y);
    if (xa % 2 != 0) return false;
    out = {xa / 2, static_cast<i64>(y)};
  } else {
    out = {static_cast<i64>(b), static_cast<i64>(y)};
  }
  return k.norm(out) == static_cast<i64>(p);
}

/// Canonical generator of a prime ideal above p (K of class number one).
/// Split primes have two ideals; `conjugate` selects the second one in
/// canonical order. Inert primes return p itself.
inline QInt generator_of_prime_ideal(u64 p, bool conjugate, const QuadraticField& k, bool use_fast_path = true) {
  if (!k.class_number_one())
    throw UnsupportedFieldError("generators need a class-number-one field, d = " + std::to_string(k.d()));
  const SplitType type = splitting_type(p, k);
  if (type == SplitType::inert) return {static_cast<i64>(p), 0};
  std::vector<QInt> sols;
  QInt g;
  if (use_fast_path && cornacchia_solution(p, k, g))
    sols = detail::associates_and_conjugates(g, k);
  else
    sols = norm_solutions_bruteforce(p, k);
  if (sols.empty()) throw DomainError("no element of norm " + std::to_string(p));
  const auto pair = detail::pick_generators(sols, k);
  return (conjugate && type == SplitType::split) ? pair[1] : pair[0];
}

}  // namespace pitbound
