#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pitbound/errors.hpp"

namespace pitbound {

/// Real branches of the Lambert W function.
enum class WBranch { principal, minus_one };

/// Two-sided envelope of -W_{-1}(-e^{-u-1}).
struct WEnvelope {
  double lower;
  double upper;
};

namespace detail {

// e split into a double and its rounding error, so that 1 + e*x keeps its
// low-order bits near the branch point x = -1/e.
inline constexpr double kEHi = 2.718281828459045;
inline constexpr double kELo = 1.4456468917292502e-16;

inline double one_plus_ex(double x) { return std::fma(kEHi, x, 1.0) + kELo * x; }

// Puiseux series of W about the branch point in p = +-sqrt(2(1 + e x)).
inline double branch_series(double p) {
  static constexpr double c[] = {-1.0,
                                 1.0,
                                 -1.0 / 3.0,
                                 11.0 / 72.0,
                                 -43.0 / 540.0,
                                 769.0 / 17280.0,
                                 -221.0 / 8505.0,
                                 680863.0 / 43545600.0,
                                 -1963.0 / 204120.0,
                                 226287557.0 / 37623398400.0};
  double acc = 0.0;
  for (int k = 9; k >= 0; --k) acc = acc * p + c[k];
  return acc;
}

// Halley iteration on w e^w = x.
inline double halley(double w, double x) {
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (f == 0.0 || wp1 == 0.0) return w;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) return w;
  }
  return w;
}

// Newton iteration on w + log|w| = s, used where e^w under/overflows.
// sign = -1 solves for w <= -1 (branch -1), +1 for w > 0 (principal, large x).
inline double newton_log_form(double w, double s, double sign) {
  for (int iter = 0; iter < 100; ++iter) {
    const double g = w + std::log(sign * w) - s;
    const double dg = 1.0 + 1.0 / w;
    if (dg == 0.0) return w;
    const double step = g / dg;
    double next = w - step;
    if (sign < 0 && next > -1.0) next = 0.5 * (w - 1.0);
    if (sign > 0 && next <= 0.0) next = 0.5 * w;
    w = next;
    if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) return w;
  }
  return w;
}

}  // namespace detail

/// Envelope 1 + sqrt(2u) + (2/3)u < -W_{-1}(-e^{-u-1}) < 1 + sqrt(2u) + u, valid for u > 0.
inline WEnvelope neg_wm1_of_exp(double u) {
  if (!(u > 0.0)) throw DomainError("envelope requires u > 0");
  const double root = std::sqrt(2.0 * u);
  return {1.0 + root + (2.0 / 3.0) * u, 1.0 + root + u};
}

/// -W_{-1}(-e^{-u-1}) for u >= 0, computed without forming e^{-u-1}
/// so that large u does not underflow.
inline double neg_wm1_of_exp_value(double u) {
  if (!(u >= 0.0)) throw DomainError("u must be >= 0");
  if (u == 0.0) return 1.0;
  // 1 + e x with x = -e^{-u-1} equals -expm1(-u).
  const double q = -std::expm1(-u);
  if (q < 1e-3) {
    const double w = detail::branch_series(-std::sqrt(2.0 * q));
    return -detail::halley(w, -std::exp(-u - 1.0));
  }
  const WEnvelope env = neg_wm1_of_exp(u);
  const double w0 = -0.5 * (env.lower + env.upper);
  return -detail::newton_log_form(w0, -u - 1.0, -1.0);
}

/// Real Lambert W: the solution of W e^W = x on the requested branch.
///
/// principal is defined on [-1/e, inf) with W >= -1; minus_one on [-1/e, 0)
/// with W <= -1. Points slightly below -1/e (within rounding of the branch
/// point) are treated as the branch point.
inline double lambert_w(WBranch branch, double x) {
  if (std::isnan(x)) throw DomainError("lambert_w: NaN argument");
  const double q = detail::one_plus_ex(x);
  if (q < -4.0 * std::numeric_limits<double>::epsilon())
    throw DomainError("lambert_w: argument below -1/e");
  if (q <= 0.0) return -1.0;

  if (branch == WBranch::minus_one) {
    if (x >= 0.0) throw DomainError("lambert_w: branch -1 requires x < 0");
    if (q < 1e-3) return detail::halley(detail::branch_series(-std::sqrt(2.0 * q)), x);
    const double s = std::log(-x);
    const double u = -s - 1.0;
    const WEnvelope env = neg_wm1_of_exp(u);
    double w = detail::newton_log_form(-0.5 * (env.lower + env.upper), s, -1.0);
    // Polish in the direct form while e^w stays normal.
    if (w > -700.0) w = detail::halley(w, x);
    return w;
  }

  if (x == 0.0) return 0.0;
  if (q < 1e-3) return detail::halley(detail::branch_series(std::sqrt(2.0 * q)), x);
  if (x > std::numbers::e) {
    const double lx = std::log(x);
    const double w = detail::newton_log_form(lx - std::log(lx), lx, 1.0);
    return w < 700.0 ? detail::halley(w, x) : w;
  }
  // Winitzki's global approximation as a starting point.
  const double l1 = std::log1p(x);
  const double w0 = l1 * (1.0 - std::log1p(l1) / (2.0 + l1));
  return detail::halley(w0, x);
}

}  // namespace pitbound
