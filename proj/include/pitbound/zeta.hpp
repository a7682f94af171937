#pragma once

#include <cmath>

#include "pitbound/errors.hpp"

namespace pitbound {

/// Riemann zeta on the real half-line s > 1 by Euler-Maclaurin summation.
/// Absolute error is far below 1e-10 for every s > 1.
inline double zeta_riemann(double s) {
  if (!(s > 1.0)) throw DomainError("zeta_riemann requires s > 1");
  constexpr int N = 12;
  // B_{2k} / (2k)! for k = 1..10
  static constexpr double bernoulli_over_factorial[] = {
      1.0 / 12.0,
      -1.0 / 720.0,
      1.0 / 30240.0,
      -1.0 / 1209600.0,
      1.0 / 47900160.0,
      -5.284190138687493e-10,
      1.3382536530684679e-11,
      -3.3896802963225827e-13,
      8.586062056277845e-15,
      -2.174868698558062e-16};

  double sum = 0.0;
  for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  const double nd = static_cast<double>(N);
  const double n_pow = std::pow(nd, -s);
  sum += nd * n_pow / (s - 1.0) + 0.5 * n_pow;

  // rising factor s (s+1) ... (s+2k-2) times N^{-s-2k+1}
  double factor = s * n_pow / nd;
  for (int k = 1; k <= 10; ++k) {
    sum += bernoulli_over_factorial[k - 1] * factor;
    factor *= (s + 2.0 * k - 1.0) * (s + 2.0 * k) / (nd * nd);
  }
  return sum;
}

}  // namespace pitbound
