#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pitbound/explicit_bounds.hpp"
#include "pitbound/field_params.hpp"

namespace pitbound {

/// How a printed constant is used: as an upper bound (safe when printed >=
/// derived), a lower bound (safe when printed <= derived) or a plain value.
enum class Sense { upper, lower, value };

/// One constant of the chain. `value` is the printed closed form evaluated
/// at the ledger's parameters; `derived` and `printed` are the compared pair
/// (a coefficient or a value, as described by `note`).
struct LedgerEntry {
  std::string name;
  double value = 0.0;
  double derived = 0.0;
  std::optional<double> printed;
  std::optional<double> relative_gap;
  std::string location;
  std::string note;
  Sense sense = Sense::value;
  int printed_decimals = 0;
  bool flagged = false;
  /// "exact", "conservative" or "deficient"; empty when nothing is printed.
  std::string direction;
};

/// A detected internal inconsistency among printed values.
struct LedgerDiscrepancy {
  std::string name;
  std::string description;
  double magnitude = 0.0;  ///< relative size of the disagreement
};

struct BoundLedger {
  FieldParameters params = FieldParameters::make(9, 1, 1, 1);
  double eta = AnalyticConstants::default_eta;
  double w = AnalyticConstants::default_w;
  double e0 = 0.0;
  double reference_log_x = 0.0;
  std::vector<LedgerEntry> entries;
  std::vector<LedgerDiscrepancy> discrepancies;

  const LedgerEntry* find(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

/// Relative tolerance for printed-vs-derived reconciliation; gaps above it are flagged.
inline constexpr double kLedgerFlagTolerance = 1e-2;

namespace detail {

class LedgerBuilder {
 public:
  explicit LedgerBuilder(BoundLedger& ledger) : ledger_(ledger) {}

  // Entry without a printed counterpart.
  void value(std::string name, double v, std::string location, std::string note = {}) {
    LedgerEntry e;
    e.name = std::move(name);
    e.value = v;
    e.derived = v;
    e.location = std::move(location);
    e.note = std::move(note);
    ledger_.entries.push_back(std::move(e));
  }

  void compare(std::string name, double value, double derived, double printed, int decimals, Sense sense,
               std::string location, std::string note = {}) {
    LedgerEntry e;
    e.name = std::move(name);
    e.value = value;
    e.derived = derived;
    e.printed = printed;
    e.printed_decimals = decimals;
    e.sense = sense;
    e.location = std::move(location);
    e.note = std::move(note);
    const double gap = std::abs(derived - printed) / std::abs(printed);
    e.relative_gap = gap;
    e.flagged = gap > kLedgerFlagTolerance;

    // The printed value is "exact" when it is a rounding of the derived one.
    const double half_unit = 0.5 * std::pow(10.0, -decimals);
    const bool is_rounding = std::abs(derived - printed) <= half_unit * (1.0 + 1e-9);
    if (is_rounding)
      e.direction = "exact";
    else if (sense == Sense::upper)
      e.direction = printed >= derived ? "conservative" : "deficient";
    else if (sense == Sense::lower)
      e.direction = printed <= derived ? "conservative" : "deficient";
    else
      e.direction = "deficient";

    if (!is_rounding && (e.direction == "deficient" || e.flagged)) {
      ledger_.discrepancies.push_back(
          {e.name,
           "printed " + format(printed) + " vs derived " + format(derived) + " (" + e.direction +
               (e.flagged ? ", gap above 1%" : "") + ")",
           gap});
    }
    ledger_.entries.push_back(std::move(e));
  }

  static std::string format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
  }

 private:
  BoundLedger& ledger_;
};

}  // namespace detail

/// Evaluates the full constant chain at `params`. Constants that depend on
/// x are evaluated at the validity threshold of the psi bounds. Each
/// coefficient is compared with its one-step recombination from the
/// printed values it is built from, using the worst-case numbers the
/// derivation fixes (log x >= 8.892, sqrt(log x) >= 2.98, w = 58).
inline BoundLedger build_ledger(const FieldParameters& params, const ZetaContext& ctx = {}) {
  using C = AnalyticConstants;
  using K = TheoremCoefficients;
  using LC = LemmaConstants;
  constexpr double pi = std::numbers::pi;
  constexpr double e = std::numbers::e;

  BoundLedger ledger;
  ledger.params = params;
  ledger.eta = ctx.eta();
  ledger.w = ctx.w();
  ledger.e0 = ctx.kind().e0();
  detail::LedgerBuilder b(ledger);

  const double r2 = params.r2d();
  const double r2_32 = std::pow(r2, 1.5);
  const double ld = params.log_disc();
  const double ldn = params.log_disc_nf();
  const double disc_main = std::exp(3.0 / (2.0 * C::A0 * r2) * ld);               // |Delta|^{3/(2 A0 r2)}
  const double disc_cond = std::exp(ld / (C::A0 * r2) + params.log_nf() / r2);  // |Delta|^{1/(A0 r2)} N(f)^{1/r2}
  const double disc_one = std::exp(ld / (C::A0 * r2));                           // |Delta|^{1/(A0 r2)}
  const double disc_half = std::exp(ld / (2.0 * C::A0 * r2) + params.log_nf() / (2.0 * r2));
  const double log_58 = ld + 0.625 * params.log_nf();  // log(|Delta| N(f)^{5/8})

  // Worst-case values fixed by the derivation.
  constexpr double log_x_min = 8.892;
  constexpr double root_log_x_min = 2.98;
  constexpr double shift_k4 = 1.917;  // log(e (4 + 1) / 2)
  const double log_5e = std::log(5.0 * e);

  const MinLogX min_x = theorem2_min_x(params, ctx);
  const double log_x = min_x.log_x;
  ledger.reference_log_x = log_x;

  // Zero-free region and majorant constants.
  b.compare("A0", C::A0, C::A0, 0.7761, 4, Sense::value, "zero-free region");
  b.compare("A1", C::A1, C::A1, 0.0795, 4, Sense::value, "zero-free region");
  b.compare("A2", 1.0 - C::A1 / C::L_floor, 1.0 - C::A1 / C::L_floor, C::A2, 6, Sense::lower, "zero-free region",
            "1 - A1/2.097");
  b.compare("A3", C::A3, C::A3, 75.472, 3, Sense::value, "logarithmic-derivative majorant");
  b.compare("A4", C::A4, C::A4, 0.010, 3, Sense::value, "logarithmic-derivative majorant");
  b.compare("B", C::B, C::B, C::B_printed_short, 4, Sense::value, "contour definition", "A1/6 against 0.0133");
  b.compare("B_alt", C::B, C::B, C::B_printed_long, 5, Sense::value, "majorant proof", "A1/6 against 0.01325");
  b.compare("zeta(5/4)", zeta_riemann(1.25), zeta_riemann(1.25), 4.596, 3, Sense::upper, "substitution lemma",
            "zeta(1 + eta) at eta = 1/4");
  const double floor_min = 2.0 * std::pow(std::log(2.0 * std::pow(9.0, 1.0 / (2.0 * C::A0))), 2);
  b.compare("log_x_floor_min", floor_min, floor_min, log_x_min, 3, Sense::lower, "substitution lemma",
            "2 (log(2 * 9^{1/(2 A0)}))^2, smallest admissible log x");
  b.compare("root_log_x_min", std::sqrt(log_x_min), std::sqrt(log_x_min), root_log_x_min, 2, Sense::lower,
            "proof of the psi bounds", "sqrt(8.892)");
  b.compare("log_shift_k4", std::log(2.5 * e), std::log(2.5 * e), shift_k4, 3, Sense::upper,
            "proof of the psi bounds", "log(e (k + 1) / 2) at k = 4");

  // Chain constants.
  const CharacterKind kind = ctx.kind();
  b.value("c0", c0(params, kind), "substitution lemma", "at the ledger's E0");
  b.value("c4", c4(params, ctx), "substitution lemma", "1 / sqrt(2 w r2)");

  const double x_l = log_disc_nf_a0(params, kind);
  b.compare("c5", c5(params, kind), 2.0 * C::A0 / x_l + 1.0 / (r2 * log_5e), LC::c5_coef, 3, Sense::upper,
            "tail integral of L(t)", "coefficient of r2 log(|Delta| N(f)^{A0(1-E0)})");

  b.value("c7", c7(), "tail integral of log(1 + A3 L)", "log(A3 (1 + 1/(2.097 A3)))");
  b.compare("c6", c6(params, kind), 2.0 * c7() / (r2 * x_l * log_5e) + 2.0 * LC::c5_coef, LC::c6_coef, 3,
            Sense::upper, "tail integral of log(1 + A3 L)", "coefficient of r2^2 log(|Delta| N(f)^{A0(1-E0)})");

  {
    const CharacterKind principal = CharacterKind::principal_character();
    const double z = zeta_riemann(1.25);
    const double constant_part = 32.0 * (std::log(C::A3) + 0.625 * params.log_disc_nf()) +
                                 64.0 * r2 * std::log(z) + C::A4 * r2 / C::L_floor;
    const double total = (40.0 * r2 + 32.0) + constant_part / log_5e +
                         (32.0 + 8.0 * C::A3 * r2) * c5(params, principal) + 32.0 * c6(params, principal);
    b.compare("c8", c8(params), total / (r2 * r2 * log_58), LC::c8_coef, 3, Sense::upper, "tail integral of phi0",
              "coefficient of r2^2 log(|Delta| N(f)^{5/8})");
  }
  {
    const CharacterKind nonprincipal{};
    const double z = zeta_riemann(1.25);
    const double constant_part =
        32.0 * std::log(2.8 * std::pow(a_frak(params), 1.5) * std::pow(z, 2.0 * r2)) + C::A4 * r2 / C::L_floor;
    const double total = constant_part / log_5e + 32.0 * c6(params, nonprincipal) + 16.0 * r2 +
                         4.0 * C::A3 * r2 * c5(params, nonprincipal);
    b.compare("c9", c9(params), total / (r2 * r2 * ldn), LC::c9_coef, 3, Sense::upper, "tail integral of phi",
              "coefficient of r2^2 log(|Delta| N(f))");
  }

  constexpr double c10_coef = 360.992;
  b.compare("c10", c10_coef * disc_main * r2_32 * ldn,
            LC::phi0_substitution * e / pi + 4.0 * e / root_log_x_min, c10_coef, 3, Sense::upper,
            "horizontal contour segments, principal character",
            "412.531 e/pi + 4 e/2.98; printed shape uses |Delta|^{3/(2 A0 r2)}");

  const double sigma_floor = 1.0 - C::B / C::L_floor;
  b.compare("C3_sigma_floor", sigma_floor, sigma_floor, 0.993, 3, Sense::lower, "vertical contour segment",
            "1 - B/2.097");
  const double arc = 1.0 / (sigma_floor * sigma_floor) + 1.0;
  b.compare("C3_integral_factor", arc, arc, 2.01, 2, Sense::upper, "vertical contour segment",
            "1/(1 - B/2.097)^2 + 1");

  constexpr double c11_coef = 73.185;
  b.compare("c11", c11_coef, 1.0 / (0.993 * (1.0 - 0.993) * 1.993) + 1.0, c11_coef, 3, Sense::upper,
            "vertical contour segment, principal character");

  constexpr double c12_coef = 267.495;
  b.compare("c12", c12_coef * r2_32 * ldn,
            2.01 * LC::phi0_substitution / pi + c11_coef / (pi * r2_32 * ldn * root_log_x_min), c12_coef, 3,
            Sense::upper, "vertical contour segment, principal character",
            "2.01 * 412.531/pi + c11/(pi r2^{3/2} log(|Delta| N(f)) 2.98)");

  constexpr double c13_coef = 348.69;
  b.compare("c13", c13_coef * disc_main * r2_32 * ldn, c12_coef + 2.0 * c10_coef / log_x_min, c13_coef, 2,
            Sense::upper, "contour total, principal character", "c12 + 2 c10 / 8.892");

  constexpr double c14_coef = 399.594;
  b.compare("c14", c14_coef * disc_cond * r2_32 * ldn, LC::phi_substitution * e / pi + 4.0 * e / root_log_x_min,
            c14_coef, 3, Sense::upper, "horizontal contour segments, non-principal characters",
            "230.911 e/pi + 4 e/2.98, by the same steps as c10");

  constexpr double c15_coef = 147.738;
  b.compare("c15", c15_coef * r2_32 * ldn, 2.01 * LC::phi_substitution / pi, c15_coef, 3, Sense::upper,
            "vertical contour segment, non-principal characters", "2.01 * 230.911 / pi");

  constexpr double c16_coef = 237.616;
  b.compare("c16", c16_coef * disc_cond * r2_32 * ldn, c15_coef + 2.0 * c14_coef / log_x_min, c16_coef, 3,
            Sense::upper, "contour total, non-principal characters", "c15 + 2 c14 / 8.892");

  constexpr double c17_coef = 724.845;
  b.compare("c17", c17_coef * disc_one * r2 * r2 * log_58,
            e / pi * LC::c8_coef * (1.0 / std::sqrt(2.0 * 58.0) + shift_k4 / root_log_x_min) +
                e / (2.0 * pi * root_log_x_min * r2 * r2 * log_58),
            c17_coef, 3, Sense::upper, "vertical tails, principal character",
            "(e/pi) c8 (1/sqrt(2w) + 1.917/2.98) + e/(2 pi 2.98 r2^2 log(|Delta| N(f)^{5/8}))");

  const double c18_value = C::B * std::sqrt(ctx.w()) / (C::A0 * std::sqrt(2.0 * r2));
  b.compare("c18", c18_value, c18_value * std::sqrt(r2), 0.0919, 4, Sense::value, "proof of the psi bounds",
            "coefficient of r2^{-1/2} in B sqrt(w)/(A0 sqrt(2 r2))");

  constexpr double c19_coef = 522.77;
  b.compare("c19", c19_coef * disc_half * r2 * r2 * ldn,
            e / pi * LC::c9_coef * (1.0 / std::sqrt(2.0 * 58.0) + shift_k4 / root_log_x_min), c19_coef, 2,
            Sense::upper, "vertical tails, non-principal characters", "(e/pi) c9 (1/sqrt(2w) + 1.917/2.98)");

  constexpr double c20_coef = 3585.536;
  const double c20_value = c20_coef * disc_main * r2 * r2 * ldn;
  b.compare("c20", c20_value, c13_coef + 2.0 * c17_coef, c20_coef, 3, Sense::upper,
            "sum of principal-character integrals", "c13 + 2 c17");

  constexpr double c21_coef = 1847.116;
  const double c21_value = c21_coef * params.hstar() * disc_cond * r2 * r2 * ldn;
  b.compare("c21", c21_value, c16_coef + 2.0 * c19_coef, c21_coef, 3, Sense::upper,
            "sum of non-principal-character integrals", "c16 + 2 c19");

  const double c22_value = c20_value + c21_value;
  b.value("c22", c22_value, "smoothed psi estimate", "c20 + c21");

  const double root = std::sqrt(log_x);
  const double c23_value = std::sqrt(1.0 - std::log(2.0) / log_x);
  const double c24_value = 1.0 / (2.0 * c22_value * root);
  const double c26_value = std::sqrt(1.0 + std::log(1.5) / log_x);
  const double c25_value = 1.0 / (2.0 * c22_value * c26_value * root);
  b.value("c23", c23_value, "lower bound for psi", "printed range 0.97 <= c23 <= 0.98; at reference log x");
  b.value("c24", c24_value, "lower bound for psi", "printed c24 <= 0.0001; at reference log x");
  b.value("c25", c25_value, "upper bound for psi", "printed c25 <= 0.001; at reference log x");
  b.value("c26", c26_value, "upper bound for psi", "printed c26 <= 1.013; at reference log x");

  // Theorem constants: coefficient recombinations.
  b.compare("c2_main", K::c2_main, 3.0 * c20_coef, K::c2_main, 3, Sense::upper, "psi bounds theorem",
            "3 * 3585.536 (c2 = c22 (3 + c24), c24 -> 0)");
  b.compare("c2_cond", K::c2_cond, 3.0 * c21_coef, K::c2_cond, 3, Sense::upper, "psi bounds theorem",
            "3 * 1847.116");
  const double c3_factor = c25_value + 5.0 * c26_value;
  b.compare("c3_ratio", K::c3_main / c20_coef, c3_factor, K::c3_main / c20_coef, 4, Sense::upper,
            "psi bounds theorem", "c25 + 5 c26 against printed c3 / c22 coefficient ratio");
  b.compare("c3_main", K::c3_main, c3_factor * c20_coef, K::c3_main, 3, Sense::upper, "psi bounds theorem",
            "(c25 + 5 c26) * 3585.536");
  b.compare("c3_cond", K::c3_cond, c3_factor * c21_coef, K::c3_cond, 3, Sense::upper, "psi bounds theorem",
            "(c25 + 5 c26) * 1847.116");
  b.compare("c1_factor", K::c1_factor, 2.0 * std::sqrt(1.0 + std::log(2.0) / log_x_min), K::c1_factor, 3,
            Sense::upper, "Psi lower-bound theorem", "2 sqrt(1 + log 2 / 8.892)");
  b.compare("c1_main", K::c1_main, K::c1_factor * K::c2_main + K::c3_main, K::c1_main, 3, Sense::upper,
            "Psi lower-bound theorem", "2.077 * 10756.659 + 14665.542");
  b.compare("c1_cond", K::c1_cond, K::c1_factor * K::c2_cond + K::c3_cond, K::c1_cond, 3, Sense::upper,
            "Psi lower-bound theorem", "2.077 * 5541.374 + 7555.065");
  b.compare("c1_exp_main", K::c1_exp_main, 3.0 / (2.0 * C::A0), K::c1_exp_main, 3, Sense::upper,
            "Psi lower-bound theorem", "3/(2 A0)");
  b.compare("c1_exp_cond", K::c1_exp_cond, 1.0 / C::A0, K::c1_exp_cond, 3, Sense::upper, "Psi lower-bound theorem",
            "1/A0");

  // Theorem constants: values at the parameters.
  const Theorem2Constants t2 = theorem2_constants(params);
  b.compare("c2", t2.c2, c22_value * (3.0 + c24_value), t2.c2, 0, Sense::upper, "psi bounds theorem",
            "c22 (3 + c24) at reference log x");
  b.compare("c3", t2.c3, c22_value * c3_factor, t2.c3, 0, Sense::upper, "psi bounds theorem",
            "c22 (c25 + 5 c26) at reference log x");
  const double c1_printed = theorem1_constant(params, ConstantMode::printed);
  b.compare("c1", c1_printed, theorem1_constant(params, ConstantMode::derived), c1_printed, 0, Sense::upper,
            "Psi lower-bound theorem", "2.077 c2 + c3");

  // Exponents and threshold constants.
  b.compare("lower_exponent", K::lower_exponent, 0.47 * c18_value * std::sqrt(r2), K::lower_exponent, 4,
            Sense::lower, "psi bounds theorem", "0.47 c18 sqrt(r2)");
  b.compare("upper_exponent", K::upper_exponent, 0.5 * c18_value * std::sqrt(r2), K::upper_exponent, 4,
            Sense::lower, "psi bounds theorem", "0.5 c18 sqrt(r2)");
  b.compare("x0_scale", K::x0_scale, 1.0 / K::lower_exponent, K::x0_scale, 3, Sense::value,
            "Psi lower-bound theorem", "1/0.0432");
  b.compare("x0_shift", K::x0_shift, K::lower_exponent * e, K::x0_shift, 3, Sense::value, "Psi lower-bound theorem",
            "0.0432 e");
  b.compare("min_x_scale", K::min_x_scale, 2.0 * ctx.w(), K::min_x_scale, 0, Sense::value, "psi bounds theorem",
            "2 w");

  // Cross-entry checks.
  if (C::B_printed_short != C::B_printed_long)
    ledger.discrepancies.push_back({"B", "B is printed as both 0.0133 and 0.01325 (A1/6 = 0.01325)",
                                    std::abs(C::B_printed_short - C::B_printed_long) / C::B});
  return ledger;
}

}  // namespace pitbound
