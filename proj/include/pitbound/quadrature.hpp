#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pitbound/errors.hpp"
#include "pitbound/summation.hpp"

namespace pitbound {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t subdivisions = 0;
};

struct QuadratureOptions {
  std::size_t max_subdivisions = 1'000'000;
  int min_depth = 4;
  /// Absolute floor on the tolerance, for integrals that vanish.
  double abs_floor = 1e-300;
};

/// Adaptive Simpson on [a, b]. Each panel is accepted when the two-half
/// estimate agrees with the whole-panel estimate to within 15 times its
/// share of the tolerance; the accepted value carries the Richardson term.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double rel_err, const QuadratureOptions& opts = {}) {
  struct Panel {
    double a, b, fa, fm, fb, whole;
    int depth;
  };
  const auto simpson = [](double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  };

  // Coarse pass to scale the relative tolerance.
  constexpr int coarse_panels = 64;
  double coarse = 0.0;
  {
    const double h = (b - a) / coarse_panels;
    for (int i = 0; i < coarse_panels; ++i) {
      const double lo = a + i * h;
      const double hi = lo + h;
      coarse += simpson(lo, hi, f(lo), f(0.5 * (lo + hi)), f(hi));
    }
  }
  const double tol = std::max(rel_err * std::abs(coarse), opts.abs_floor);

  const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  std::vector<Panel> stack{{a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 0}};
  NeumaierSum total;
  NeumaierSum error;
  std::size_t subdivisions = 0;

  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + mid);
    const double rm = 0.5 * (mid + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(p.a, mid, p.fa, flm, p.fm);
    const double right = simpson(mid, p.b, p.fm, frm, p.fb);
    const double diff = left + right - p.whole;
    const double local_tol = tol * (p.b - p.a) / (b - a);
    if (p.depth >= opts.min_depth && (std::abs(diff) <= 15.0 * local_tol || mid == p.a || mid == p.b)) {
      total.add(left + right + diff / 15.0);
      error.add(std::abs(diff) / 15.0);
      continue;
    }
    if (++subdivisions > opts.max_subdivisions)
      throw ConvergenceError("adaptive quadrature exceeded " + std::to_string(opts.max_subdivisions) +
                             " subdivisions");
    stack.push_back({mid, p.b, p.fm, frm, p.fb, right, p.depth + 1});
    stack.push_back({p.a, mid, p.fa, flm, p.fm, left, p.depth + 1});
  }
  return {total.value(), error.value(), subdivisions};
}

/// int_T^inf f(t) t^{-2} dt for T >= 1 and f of at most polylogarithmic growth.
///
/// The substitution t = T / (1 - v)^2 maps the range onto [0, 1] with
/// integrand 2 (1 - v) f(t) / T, which tends to 0 at v = 1.
template <class F>
QuadratureResult tail_integral_detailed(F&& f, double T, double rel_err, const QuadratureOptions& opts = {}) {
  if (!(T >= 1.0)) throw DomainError("tail_integral requires T >= 1");
  if (!(rel_err > 0.0)) throw DomainError("tail_integral requires rel_err > 0");
  const auto g = [&](double v) {
    if (v >= 1.0) return 0.0;
    const double s = 1.0 - v;
    const double t = T / (s * s);
    if (!std::isfinite(t)) return 0.0;
    return 2.0 * s * f(t) / T;
  };
  return adaptive_simpson(g, 0.0, 1.0, rel_err, opts);
}

template <class F>
double tail_integral(F&& f, double T, double rel_err, const QuadratureOptions& opts = {}) {
  return tail_integral_detailed(std::forward<F>(f), T, rel_err, opts).value;
}

}  // namespace pitbound
