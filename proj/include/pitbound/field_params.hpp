#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "pitbound/errors.hpp"

namespace pitbound {

/// Fixed numerical constants of the zero-free region and of the
/// logarithmic-derivative majorants.
struct AnalyticConstants {
  static constexpr double A0 = 0.7761;
  static constexpr double A1 = 0.0795;
  static constexpr double A2 = 0.962088;  // printed value of 1 - A1/2.097
  static constexpr double A3 = 75.472;
  static constexpr double A4 = 0.010;
  static constexpr double B = A1 / 6.0;
  // Printed roundings of B; kept for ledger comparison only.
  static constexpr double B_printed_short = 0.0133;
  static constexpr double B_printed_long = 0.01325;
  // Lower bound asserted for L(t).
  static constexpr double L_floor = 2.097;
  // Constant used inside the growth estimates for zeta(s, chi); documentation only.
  static constexpr double C1_israilov = 0.1875463;

  static constexpr double default_eta = 0.25;
  static constexpr double default_w = 58.0;

  /// Largest admissible w (exclusive): A0 / B.
  static constexpr double w_limit() { return A0 / B; }
};

/// Character attributes entering the bounds: E0 (principal) and
/// epsilon_chi (imprimitive).
struct CharacterKind {
  bool principal = false;
  bool imprimitive = false;

  constexpr double e0() const { return principal ? 1.0 : 0.0; }
  constexpr double eps_chi() const { return imprimitive ? 1.0 : 0.0; }

  static constexpr CharacterKind principal_character() { return {true, false}; }
  static constexpr CharacterKind primitive_nonprincipal() { return {false, false}; }
};

/// (|Delta|, r2, N(f), h*_f) for a totally imaginary field of degree 2 r2.
class FieldParameters {
 public:
  /// Validates |Delta| >= 9 and positivity of the remaining entries.
  static FieldParameters make(std::uint64_t abs_discriminant, int r2, std::uint64_t conductor_norm,
                              std::uint64_t class_number) {
    if (abs_discriminant < 9)
      throw DomainError("|Delta| must be >= 9, got " + std::to_string(abs_discriminant));
    return unchecked(abs_discriminant, r2, conductor_norm, class_number);
  }

  /// Skips the |Delta| >= 9 requirement. Used when a printed formula is
  /// evaluated outside its hypotheses on purpose (small empirical fields).
  static FieldParameters unchecked(std::uint64_t abs_discriminant, int r2, std::uint64_t conductor_norm,
                                   std::uint64_t class_number) {
    if (abs_discriminant < 1) throw DomainError("|Delta| must be positive");
    if (r2 < 1) throw DomainError("r2 must be >= 1, got " + std::to_string(r2));
    if (conductor_norm < 1) throw DomainError("N(f) must be >= 1");
    if (class_number < 1) throw DomainError("h* must be >= 1");
    FieldParameters p;
    p.abs_discriminant_ = abs_discriminant;
    p.r2_ = r2;
    p.conductor_norm_ = conductor_norm;
    p.class_number_ = class_number;
    return p;
  }

  std::uint64_t abs_discriminant() const { return abs_discriminant_; }
  int r2() const { return r2_; }
  std::uint64_t conductor_norm() const { return conductor_norm_; }
  std::uint64_t class_number() const { return class_number_; }

  bool satisfies_hypotheses() const { return abs_discriminant_ >= 9; }

  double log_disc() const { return std::log(static_cast<double>(abs_discriminant_)); }
  double log_nf() const { return std::log(static_cast<double>(conductor_norm_)); }
  /// log(|Delta| N(f)).
  double log_disc_nf() const { return log_disc() + log_nf(); }
  double r2d() const { return static_cast<double>(r2_); }
  double hstar() const { return static_cast<double>(class_number_); }

  friend bool operator==(const FieldParameters&, const FieldParameters&) = default;

 private:
  FieldParameters() = default;

  std::uint64_t abs_discriminant_ = 9;
  int r2_ = 1;
  std::uint64_t conductor_norm_ = 1;
  std::uint64_t class_number_ = 1;
};

/// L(t) without the L >= 2.097 check.
inline double big_L_unchecked(double t, const FieldParameters& params, CharacterKind kind) {
  using C = AnalyticConstants;
  const double at = std::abs(t);
  return params.log_disc() + C::A0 * (2.0 * params.r2d() * std::log1p(at) + (1.0 - kind.e0()) * params.log_nf());
}

/// L(t) = log|Delta| + A0 log((|t|+1)^{2 r2} N(f)^{1-E0}).
///
/// Throws DomainError when the value falls under 2.097, which only happens
/// for parameters outside the theorem's hypotheses.
inline double big_L(double t, const FieldParameters& params, CharacterKind kind) {
  const double value = big_L_unchecked(t, params, kind);
  if (!(value >= AnalyticConstants::L_floor))
    throw DomainError("L(t) = " + std::to_string(value) + " is below 2.097");
  return value;
}

/// Boundary of the zero-free region, 1 - A1 / L(t).
inline double zero_free_sigma(double t, const FieldParameters& params, CharacterKind kind) {
  return 1.0 - AnalyticConstants::A1 / big_L(t, params, kind);
}

/// A(f) = (2 pi)^{-r2} sqrt(|Delta| N(f)).
inline double a_frak(const FieldParameters& params) {
  const double log_value = -params.r2d() * std::log(2.0 * std::numbers::pi) + 0.5 * params.log_disc_nf();
  return std::exp(log_value);
}

/// c0 = |Delta|^{-1/(2 A0 r2)} N(f)^{-(1-E0)/(2 r2)}.
inline double c0(const FieldParameters& params, CharacterKind kind) {
  using C = AnalyticConstants;
  const double r2 = params.r2d();
  return std::exp(-params.log_disc() / (2.0 * C::A0 * r2) - (1.0 - kind.e0()) * params.log_nf() / (2.0 * r2));
}

}  // namespace pitbound
