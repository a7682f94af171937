#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "pitbound/arith.hpp"
#include "pitbound/errors.hpp"
#include "pitbound/explicit_bounds.hpp"
#include "pitbound/quadratic_field.hpp"
#include "pitbound/ray_class_group.hpp"
#include "pitbound/sieve.hpp"
#include "pitbound/summation.hpp"

namespace pitbound {

/// A prime ideal p together with an exponent m; `norm` is N(p)^m.
struct PrimeIdealPower {
  u64 p = 0;
  SplitType split = SplitType::split;
  u64 norm_base = 0;
  int exponent = 1;
  u64 norm = 0;
  double mangoldt_weight = 0.0;
  bool conjugate = false;
  std::optional<int> class_index;
};

struct EnumerationOptions {
  double x_cap = 1e10;
  u64 segment_size = kDefaultSegmentSize;
  bool parallel = true;
};

namespace detail {

inline u64 norm_limit(double x_max, const EnumerationOptions& opts) {
  if (!(x_max >= 0.0) || !std::isfinite(x_max)) throw DomainError("x_max must be finite and nonnegative");
  if (x_max > opts.x_cap)
    throw ResourceError("x_max = " + std::to_string(x_max) + " exceeds the enumeration cap " +
                        std::to_string(opts.x_cap));
  // Largest integer norm strictly below x_max.
  const double c = std::ceil(x_max);
  return c >= 1.0 ? static_cast<u64>(c) - 1 : 0;
}

inline void emit_prime(u64 p, const QuadraticField& k, std::vector<PrimeIdealPower>& out, u64 limit) {
  const SplitType s = splitting_type(p, k);
  const u64 base = s == SplitType::inert ? p * p : p;
  const double w = std::log(static_cast<double>(base));
  const int copies = s == SplitType::split ? 2 : 1;
  for (int c = 0; c < copies; ++c) {
    u64 norm = base;
    for (int m = 1; norm <= limit; ++m) {
      out.push_back({p, s, base, m, norm, w, c == 1, std::nullopt});
      if (norm > limit / base) break;
      norm *= base;
    }
  }
}

inline bool enumeration_less(const PrimeIdealPower& x, const PrimeIdealPower& y) {
  return std::tie(x.norm, x.p, x.conjugate, x.exponent) < std::tie(y.norm, y.p, y.conjugate, y.exponent);
}

}  // namespace detail

/// Streams every prime ideal power with N(p)^m < x_max to `sink`, in
/// ascending norm with ties broken by (p, conjugate flag, m). Split primes
/// appear twice, once per conjugate ideal.
template <class Sink>
void for_each_prime_ideal_power(double x_max, const QuadraticField& k, Sink&& sink,
                                const EnumerationOptions& opts = {}) {
  const u64 limit = detail::norm_limit(x_max, opts);
  if (limit < 2) return;

  // Entries whose norm is a proper prime power: few, so build them up front.
  std::vector<PrimeIdealPower> powers;
  for (u64 p : simple_primes(isqrt(limit) + 1)) {
    std::vector<PrimeIdealPower> all;
    detail::emit_prime(p, k, all, limit);
    for (auto& e : all)
      if (e.norm != p) powers.push_back(e);
  }
  std::sort(powers.begin(), powers.end(), detail::enumeration_less);
  std::size_t next_power = 0;

  const auto flush_powers_below = [&](u64 norm) {
    while (next_power < powers.size() && powers[next_power].norm < norm) sink(std::as_const(powers[next_power++]));
  };

  // Norm-p entries come from a segmented sieve, batch by batch, so memory
  // stays bounded by one batch of segments.
  const std::vector<u64> base = simple_primes(isqrt(limit) + 2);
  const u64 seg = opts.segment_size;
  if (seg == 0) throw DomainError("segment size must be positive");
  const u64 top = limit + 1;
  const u64 segments = (top + seg - 1) / seg;
  const u64 batch = opts.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1;

  for (u64 first = 0; first < segments; first += batch) {
    const u64 count = std::min(batch, segments - first);
    std::vector<std::vector<u64>> parts(count);
    const auto run = [&](u64 i) {
      const u64 lo = (first + i) * seg;
      parts[i] = sieve_segment(lo, std::min(top, lo + seg), base);
    };
    if (count == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (u64 i = 0; i < count; ++i) pool.emplace_back(run, i);
      for (auto& t : pool) t.join();
    }
    for (const auto& part : parts)
      for (u64 p : part) {
        flush_powers_below(p);
        const SplitType s = splitting_type(p, k);
        if (s == SplitType::inert) continue;
        const double w = std::log(static_cast<double>(p));
        sink(PrimeIdealPower{p, s, p, 1, p, w, false, std::nullopt});
        if (s == SplitType::split) sink(PrimeIdealPower{p, s, p, 1, p, w, true, std::nullopt});
      }
  }
  flush_powers_below(top);
}

inline std::vector<PrimeIdealPower> enumerate_prime_ideal_powers(double x_max, const QuadraticField& k,
                                                                 const EnumerationOptions& opts = {}) {
  std::vector<PrimeIdealPower> out;
  for_each_prime_ideal_power(x_max, k, [&](const PrimeIdealPower& e) { out.push_back(e); }, opts);
  return out;
}

/// Class of p^m in the ray class group, or nullopt when p divides the modulus.
inline std::optional<int> class_of_power(const PrimeIdealPower& e, const RayClassGroup& g) {
  const i64 n = g.modulus();
  if (n > 1 && std::gcd(static_cast<i64>(e.p % static_cast<u64>(n)), n) != 1) return std::nullopt;
  const QuadraticField& k = g.field();
  const QInt gen = generator_of_prime_ideal(e.p, e.conjugate, k);
  QInt acc = g.reduce({1, 0});
  const QInt base = g.reduce(gen);
  for (int i = 0; i < e.exponent; ++i) acc = k.mul_mod(acc, base, n);
  return g.class_of(acc);
}

/// psi(x, X) for every class X at once.
struct PsiByClass {
  double x = 0.0;
  i64 modulus = 1;
  int class_count = 1;
  std::vector<double> per_class;
  /// Mass of prime ideals dividing the modulus, left out of every class.
  double skipped = 0.0;
  double total = 0.0;  ///< sum over classes plus skipped mass
};

namespace detail {

// One pass over norms below x_max; `bucket` receives (entry, class or nullopt).
template <class F>
void classified_pass(double x_max, const QuadraticField& k, i64 n, F&& bucket, const EnumerationOptions& opts) {
  if (n == 1) {
    for_each_prime_ideal_power(x_max, k, [&](const PrimeIdealPower& e) { bucket(e, std::optional<int>(0)); }, opts);
    return;
  }
  const RayClassGroup g = RayClassGroup::make(k, n);
  for_each_prime_ideal_power(x_max, k, [&](const PrimeIdealPower& e) { bucket(e, class_of_power(e, g)); }, opts);
}

inline int class_count_for(const QuadraticField& k, i64 n) { return n == 1 ? 1 : RayClassGroup::make(k, n).order(); }

}  // namespace detail

inline PsiByClass psi_by_class(double x, const QuadraticField& k, i64 n, const EnumerationOptions& opts = {}) {
  if (!(x >= 2.0)) throw DomainError("psi requires x >= 2");
  if (n < 1) throw DomainError("modulus must be positive");
  PsiByClass r;
  r.x = x;
  r.modulus = n;
  r.class_count = detail::class_count_for(k, n);
  std::vector<NeumaierSum> sums(static_cast<std::size_t>(r.class_count));
  NeumaierSum skipped;
  NeumaierSum total;
  detail::classified_pass(
      x, k, n,
      [&](const PrimeIdealPower& e, std::optional<int> cls) {
        total.add(e.mangoldt_weight);
        if (cls)
          sums[static_cast<std::size_t>(*cls)].add(e.mangoldt_weight);
        else
          skipped.add(e.mangoldt_weight);
      },
      opts);
  for (const auto& s : sums) r.per_class.push_back(s.value());
  r.skipped = skipped.value();
  r.total = total.value();
  return r;
}

/// psi(x, X): sum of log N(p) over N(p)^m < x in class X (all classes when
/// `class_index` is empty). Prime ideals dividing n are left out when n > 1.
inline double psi_empirical(double x, std::optional<int> class_index, const QuadraticField& k, i64 n,
                            const EnumerationOptions& opts = {}) {
  const PsiByClass r = psi_by_class(x, k, n, opts);
  if (!class_index) return r.total - r.skipped;
  if (*class_index < 0 || *class_index >= r.class_count)
    throw DomainError("class index " + std::to_string(*class_index) + " out of range");
  return r.per_class[static_cast<std::size_t>(*class_index)];
}

/// Psi(x, X) over the closed window x <= N(p)^m <= 2x, together with its
/// difference from psi(2x, X) - psi(x, X) (the mass at norm exactly 2x).
struct BigPsiResult {
  double value = 0.0;
  double endpoint_discrepancy = 0.0;
};

inline BigPsiResult big_psi_empirical(double x, std::optional<int> class_index, const QuadraticField& k, i64 n,
                                      const EnumerationOptions& opts = {}) {
  if (!(x >= 2.0)) throw DomainError("Psi requires x >= 2");
  if (n < 1) throw DomainError("modulus must be positive");
  const int classes = detail::class_count_for(k, n);
  if (class_index && (*class_index < 0 || *class_index >= classes))
    throw DomainError("class index " + std::to_string(*class_index) + " out of range");
  const double hi = 2.0 * x;
  NeumaierSum window;
  NeumaierSum at_end;
  detail::classified_pass(
      std::floor(hi) + 1.0, k, n,
      [&](const PrimeIdealPower& e, std::optional<int> cls) {
        const double norm = static_cast<double>(e.norm);
        if (norm < x || norm > hi) return;
        if (!cls) return;
        if (class_index && *cls != *class_index) return;
        window.add(e.mangoldt_weight);
        if (norm == hi) at_end.add(e.mangoldt_weight);
      },
      opts);
  return {window.value(), at_end.value()};
}

/// Truncated Dirichlet series of zeta_K'/zeta_K at s = sigma + i t and a
/// bound on the omitted tail.
struct LogDerivative {
  std::complex<double> value;
  double tail_bound = 0.0;
  double x_cut = 0.0;
};

/// Bound on sum_{N(a) >= X} Lambda(a) N(a)^{-sigma}. Ideals of norm n carry
/// total weight at most 2 Lambda(n) <= 2 log n, and n^{-sigma} log n is
/// decreasing for n >= 3, so the sum is at most
/// 2 (X^{-sigma} log X + int_X^inf y^{-sigma} log y dy).
inline double logderiv_tail_bound(double sigma, double x_cut) {
  const double lx = std::log(x_cut);
  const double s1 = sigma - 1.0;
  return 2.0 * (std::exp(-sigma * lx) * lx + std::exp(-s1 * lx) * (lx / s1 + 1.0 / (s1 * s1)));
}

inline LogDerivative logderiv_empirical(double sigma, double t, const QuadraticField& k, double x_cut,
                                        const EnumerationOptions& opts = {}) {
  if (!(sigma >= 1.5)) throw DomainError("logderiv requires sigma >= 1.5");
  if (!(x_cut >= 1e3)) throw DomainError("logderiv requires x_cut >= 1000");
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  NeumaierSum re;
  NeumaierSum im;
  for_each_prime_ideal_power(
      x_cut, k,
      [&](const PrimeIdealPower& e) {
        const double ln = std::log(static_cast<double>(e.norm));
        const double mag = e.mangoldt_weight * std::exp(-sigma * ln);
        re.add(-mag * std::cos(t * ln));
        im.add(mag * std::sin(t * ln));
      },
      opts);
  return {{re.value(), im.value()}, logderiv_tail_bound(sigma, x_cut), x_cut};
}

/// |zeta_K'/zeta_K(s) + 1/(s - 1)| bounded by the measured truncation plus
/// its tail, against phi0(t) for the field with f = (1).
struct LogDerivativeCheck {
  LogDerivative series;
  double measured = 0.0;  ///< |truncated + 1/(s - 1)| + tail_bound
  double bound = 0.0;     ///< phi0(t)
  double slack_factor = 0.0;
  /// |Delta_K| < 9: the majorant's hypotheses do not hold and it is evaluated formally.
  bool outside_hypotheses = false;
};

inline LogDerivativeCheck logderiv_check(double sigma, double t, const QuadraticField& k, double x_cut,
                                         const ZetaContext& ctx = {}, const EnumerationOptions& opts = {}) {
  LogDerivativeCheck c;
  c.series = logderiv_empirical(sigma, t, k, x_cut, opts);
  const std::complex<double> s{sigma, t};
  c.measured = std::abs(c.series.value + 1.0 / (s - 1.0)) + c.series.tail_bound;
  const FieldParameters params = FieldParameters::unchecked(k.abs_discriminant(), 1, 1, 1);
  c.outside_hypotheses = !params.satisfies_hypotheses();
  c.bound = phi0_unchecked(t, params, ctx.with_kind(CharacterKind::principal_character()));
  c.slack_factor = c.bound / c.measured;
  return c;
}

}  // namespace pitbound
