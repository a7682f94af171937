#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pitbound/errors.hpp"
#include "pitbound/field_params.hpp"
#include "pitbound/lambert_w.hpp"
#include "pitbound/zeta.hpp"

namespace pitbound {

/// Free parameters of the logarithmic-derivative majorants and of the
/// T-substitution: eta in (0, 1/4], w in [1, A0/B), plus the character kind.
class ZetaContext {
 public:
  ZetaContext() : ZetaContext(make()) {}

  static ZetaContext make(double eta = AnalyticConstants::default_eta, double w = AnalyticConstants::default_w,
                          CharacterKind kind = {}) {
    if (!(eta > 0.0 && eta <= 0.25)) throw DomainError("eta must lie in (0, 1/4]");
    if (!(w >= 1.0 && w < AnalyticConstants::w_limit()))
      throw DomainError("w must lie in [1, A0/B) = [1, " + std::to_string(AnalyticConstants::w_limit()) + ")");
    ZetaContext ctx(eta, w, kind);
    return ctx;
  }

  double eta() const { return eta_; }
  double w() const { return w_; }
  CharacterKind kind() const { return kind_; }
  /// zeta(1 + eta), cached.
  double zeta_one_plus_eta() const { return zeta_1_eta_; }

  ZetaContext with_kind(CharacterKind kind) const {
    ZetaContext copy = *this;
    copy.kind_ = kind;
    return copy;
  }

 private:
  ZetaContext(double eta, double w, CharacterKind kind)
      : eta_(eta), w_(w), kind_(kind), zeta_1_eta_(zeta_riemann(1.0 + eta)) {}

  double eta_;
  double w_;
  CharacterKind kind_;
  double zeta_1_eta_;
};

namespace detail {

inline double phi0_impl(double t, const FieldParameters& params, const ZetaContext& ctx, bool checked) {
  using C = AnalyticConstants;
  const CharacterKind principal = CharacterKind::principal_character();
  const double L = checked ? big_L(t, params, principal) : big_L_unchecked(t, params, principal);
  const double at = std::abs(t);
  const double r2 = params.r2d();
  const double eta = ctx.eta();
  const double first = std::log(L) + std::log(at + 4.0) + r2 * (1.0 + eta) * std::log(at + 2.0) +
                       2.0 * r2 * std::log1p(C::A3 * L);
  const double second =
      std::log(C::A3) + 0.5 * (1.0 + eta) * params.log_disc_nf() + 2.0 * r2 * std::log(ctx.zeta_one_plus_eta());
  return 32.0 * first + 32.0 * second + 8.0 * C::A3 * r2 * L + C::A4 * r2 / L;
}

inline double phi_impl(double t, const FieldParameters& params, const ZetaContext& ctx, bool checked) {
  using C = AnalyticConstants;
  const CharacterKind nonprincipal{false, ctx.kind().imprimitive};
  const double L = checked ? big_L(t, params, nonprincipal) : big_L_unchecked(t, params, nonprincipal);
  const double at = std::abs(t);
  const double r2 = params.r2d();
  const double eta = ctx.eta();
  const double first = 2.0 * r2 * std::log1p(C::A3 * L) + r2 * (1.0 + 2.0 * eta) * std::log(at + 2.0);
  const double log_a_frak = std::log(a_frak(params));
  const double second = std::log(1.4) + std::log1p(ctx.kind().eps_chi()) + (1.0 + 2.0 * eta) * log_a_frak +
                        2.0 * r2 * std::log(ctx.zeta_one_plus_eta());
  return 32.0 * first + 32.0 * second + 4.0 * C::A3 * r2 * L + C::A4 * r2 / L;
}

}  // namespace detail

/// Majorant of |zeta'/zeta(s, chi0) + 1/(s-1)| in the strip
/// 1 - A1/(6 L(t)) <= sigma <= 3. L is evaluated with E0 = 1.
inline double phi0(double t, const FieldParameters& params, const ZetaContext& ctx = {}) {
  return detail::phi0_impl(t, params, ctx, true);
}

/// phi0 without the |Delta| >= 9 / L >= 2.097 checks; the printed formula
/// evaluated verbatim for fields outside the hypotheses.
inline double phi0_unchecked(double t, const FieldParameters& params, const ZetaContext& ctx = {}) {
  return detail::phi0_impl(t, params, ctx, false);
}

/// Majorant of |zeta'/zeta(s, chi)| for chi != chi0. L is evaluated with
/// E0 = 0; epsilon_chi is taken from ctx.kind().
inline double phi(double t, const FieldParameters& params, const ZetaContext& ctx = {}) {
  return detail::phi_impl(t, params, ctx, true);
}

/// Printed coefficients of the closed forms for c1, c2, c3.
struct TheoremCoefficients {
  static constexpr double c2_main = 10756.659;
  static constexpr double c2_cond = 5541.374;
  static constexpr double c3_main = 14665.542;
  static constexpr double c3_cond = 7555.065;
  static constexpr double c1_main = 36997.123;
  static constexpr double c1_cond = 19064.499;
  static constexpr double c1_exp_main = 1.933;  // printed 3/(2 A0)
  static constexpr double c1_exp_cond = 1.289;  // printed 1/A0
  static constexpr double c1_factor = 2.077;    // printed bound on 2 sqrt(1 + log 2 / log x)
  static constexpr double lower_exponent = 0.0432;
  static constexpr double upper_exponent = 0.0459;
  static constexpr double x0_scale = 23.148;  // printed 1/0.0432
  static constexpr double x0_shift = 0.117;   // printed 0.0432 e
  static constexpr double min_x_scale = 116.0;
};

struct Theorem2Constants {
  double c2;
  double c3;
};

namespace detail {

// (main |Delta|^{main_exp/r2} + cond |Delta|^{cond_exp/r2} N(f)^{1/r2} h*) r2^2 log(|Delta| N(f))
inline double two_term_constant(const FieldParameters& p, double main, double main_exp, double cond,
                                double cond_exp) {
  const double r2 = p.r2d();
  const double term_main = main * std::exp(main_exp / r2 * p.log_disc());
  const double term_cond = cond * std::exp(cond_exp / r2 * p.log_disc() + p.log_nf() / r2) * p.hstar();
  return (term_main + term_cond) * r2 * r2 * p.log_disc_nf();
}

}  // namespace detail

/// Closed forms for c2 and c3 of the psi(x, X) bounds.
inline Theorem2Constants theorem2_constants(const FieldParameters& params) {
  using C = AnalyticConstants;
  using K = TheoremCoefficients;
  const double e_main = 3.0 / (2.0 * C::A0);
  const double e_cond = 1.0 / C::A0;
  return {detail::two_term_constant(params, K::c2_main, e_main, K::c2_cond, e_cond),
          detail::two_term_constant(params, K::c3_main, e_main, K::c3_cond, e_cond)};
}

enum class ConstantMode { printed, derived };

/// c1 of the Psi(x, X) lower bound. printed evaluates the stated closed form
/// with its rounded exponents; derived returns 2.077 c2 + c3.
inline double theorem1_constant(const FieldParameters& params, ConstantMode mode = ConstantMode::printed) {
  using K = TheoremCoefficients;
  if (mode == ConstantMode::printed)
    return detail::two_term_constant(params, K::c1_main, K::c1_exp_main, K::c1_cond, K::c1_exp_cond);
  const Theorem2Constants c = theorem2_constants(params);
  return K::c1_factor * c.c2 + c.c3;
}

/// log-scale validity threshold for the psi(x, X) bounds.
struct MinLogX {
  double printed;       ///< 116 r2 log(2 |Delta|^{1/(A0 r2)} N(f)^{1/r2})
  double substitution;  ///< (c4^{-1} log(2 / c0))^2
  double log_x;         ///< max of the two
};

/// c4 = 1 / sqrt(2 w r2).
inline double c4(const FieldParameters& params, const ZetaContext& ctx = {}) {
  return 1.0 / std::sqrt(2.0 * ctx.w() * params.r2d());
}

/// (c4^{-1} log(2/c0))^2: the smallest log x for which T + 1 = c0 exp(c4 sqrt(log x)) >= 2.
inline double substitution_floor(const FieldParameters& params, const ZetaContext& ctx = {}) {
  const double l = std::log(2.0 / c0(params, ctx.kind()));
  return 2.0 * ctx.w() * params.r2d() * l * l;
}

inline MinLogX theorem2_min_x(const FieldParameters& params, const ZetaContext& ctx = {}) {
  using C = AnalyticConstants;
  const double r2 = params.r2d();
  const double inner = std::log(2.0) + params.log_disc() / (C::A0 * r2) + params.log_nf() / r2;
  MinLogX out;
  out.printed = TheoremCoefficients::min_x_scale * r2 * inner;
  out.substitution = substitution_floor(params, ctx);
  out.log_x = std::max(out.printed, out.substitution);
  return out;
}

/// Bounds on psi(x, X) expressed as multiples of x (x itself is usually far
/// beyond double range, so everything is carried on the log scale).
struct PsiBounds {
  double log_x;
  double main;   ///< 1 / h*
  double lower;  ///< lower bound / x
  double upper;  ///< upper bound / x
};

/// Error-term weight (log x)^{1/2} exp(-a r2^{-1/2} sqrt(log x)).
inline double error_weight(double log_x, double exponent, double r2) {
  const double root = std::sqrt(log_x);
  return root * std::exp(-exponent / std::sqrt(r2) * root);
}

inline PsiBounds psi_bounds(double log_x, const FieldParameters& params, const ZetaContext& ctx = {}) {
  const MinLogX min_x = theorem2_min_x(params, ctx);
  if (!(log_x >= min_x.log_x))
    throw ThresholdError("log x = " + std::to_string(log_x) + " is below the validity threshold " +
                         std::to_string(min_x.log_x));
  const Theorem2Constants c = theorem2_constants(params);
  const double h = params.hstar();
  const double r2 = params.r2d();
  PsiBounds b;
  b.log_x = log_x;
  b.main = 1.0 / h;
  b.lower = (1.0 - c.c2 * error_weight(log_x, TheoremCoefficients::lower_exponent, r2)) / h;
  b.upper = (1.0 + c.c3 * error_weight(log_x, TheoremCoefficients::upper_exponent, r2)) / h;
  return b;
}

enum class ThresholdMode { paper, rigorous };

/// log x threshold as a function of u = log(c1 sqrt(r2) / (shift eps)).
/// paper: (23.148 sqrt(r2) (1 + sqrt(2u) + 2u/3))^2.
/// rigorous: ((1/0.0432) sqrt(r2) (1 + sqrt(2u) + u))^2.
inline double threshold_from_u(double u, double r2, ThresholdMode mode) {
  if (!(u > 0.0)) throw DomainError("threshold requires u > 0, got " + std::to_string(u));
  const WEnvelope env = neg_wm1_of_exp(u);
  const double scale =
      mode == ThresholdMode::paper ? TheoremCoefficients::x0_scale : 1.0 / TheoremCoefficients::lower_exponent;
  const double y = mode == ThresholdMode::paper ? env.lower : env.upper;
  const double root = scale * std::sqrt(r2) * y;
  return root * root;
}

/// u entering the threshold for a given epsilon and mode.
inline double threshold_u(double epsilon, const FieldParameters& params, ThresholdMode mode) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  const double r2 = params.r2d();
  if (mode == ThresholdMode::paper) {
    const double c1 = theorem1_constant(params, ConstantMode::printed);
    return std::log(c1 * std::sqrt(r2) / (TheoremCoefficients::x0_shift * epsilon));
  }
  const double c1 = std::max(theorem1_constant(params, ConstantMode::printed),
                             theorem1_constant(params, ConstantMode::derived));
  return std::log(c1 * std::sqrt(r2) / (TheoremCoefficients::lower_exponent * std::numbers::e * epsilon));
}

/// Threshold x0 (as log x) beyond which Psi(x, X) >= x (1 - eps) / h*.
inline double threshold_x0(double epsilon, const FieldParameters& params, ThresholdMode mode = ThresholdMode::paper) {
  return threshold_from_u(threshold_u(epsilon, params, mode), params.r2d(), mode);
}

/// Psi(x, X) >= x (1 - eps) / h*, returned as a multiple of x.
inline double big_psi_lower(double log_x, const FieldParameters& params, double epsilon,
                            ThresholdMode mode = ThresholdMode::paper) {
  const double floor = threshold_x0(epsilon, params, mode);
  if (!(log_x >= floor))
    throw ThresholdError("log x = " + std::to_string(log_x) + " is below x0 (log) = " + std::to_string(floor));
  return (1.0 - epsilon) / params.hstar();
}

/// Constants of the tail-integral lemmas, each the coefficient of
/// T^{-1} log(e (T + 4)) (or T^{-1} for c7's term).
struct LemmaConstants {
  static constexpr double c5_coef = 1.09;
  static constexpr double c6_coef = 11.605;
  static constexpr double c8_coef = 1138.428;
  static constexpr double c9_coef = 821.212;
  static constexpr double phi_substitution = 230.911;
  static constexpr double phi0_substitution = 412.531;
};

/// log(|Delta| N(f)^{A0 (1 - E0)}).
inline double log_disc_nf_a0(const FieldParameters& p, CharacterKind kind) {
  return p.log_disc() + AnalyticConstants::A0 * (1.0 - kind.e0()) * p.log_nf();
}

inline double c5(const FieldParameters& p, CharacterKind kind) {
  return LemmaConstants::c5_coef * p.r2d() * log_disc_nf_a0(p, kind);
}

inline double c6(const FieldParameters& p, CharacterKind kind) {
  return LemmaConstants::c6_coef * p.r2d() * p.r2d() * log_disc_nf_a0(p, kind);
}

/// log(A3 (1 + 1/(2.097 A3))); bounds log(1 + A3 L) - log L for L >= 2.097.
inline double c7() {
  using C = AnalyticConstants;
  return std::log(C::A3 * (1.0 + 1.0 / (C::L_floor * C::A3)));
}

inline double c8(const FieldParameters& p) {
  return LemmaConstants::c8_coef * p.r2d() * p.r2d() * (p.log_disc() + 0.625 * p.log_nf());
}

inline double c9(const FieldParameters& p) {
  return LemmaConstants::c9_coef * p.r2d() * p.r2d() * p.log_disc_nf();
}

/// T from T + 1 = c0 exp(c4 sqrt(log x)).
inline double substitution_T(double log_x, const FieldParameters& params, const ZetaContext& ctx = {}) {
  return c0(params, ctx.kind()) * std::exp(c4(params, ctx) * std::sqrt(log_x)) - 1.0;
}

}  // namespace pitbound
