// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cm_oracle.hpp"
#include "pitbound/pitbound.hpp"

using namespace pitbound;

namespace {

// Pinned tolerances.
constexpr double kC2RelTol = 1e-4;
constexpr double kC1RelTol = 1e-3;
constexpr double kExponentTol = 5e-4;  // relative, like the other reproduction tolerances
constexpr double kExpIdentityTol = 3e-4;
constexpr double kInverseTol = 5e-3;
constexpr double kShiftTol = 5e-4;
constexpr double kA2Tol = 2e-6;
constexpr double kWRoundTripTol = 1e-12;
constexpr int kWPointsPerBranch = 1000;
constexpr std::size_t kMinGridPoints = 300;
constexpr double kPsiTotalTol = 0.02;
constexpr double kPsiClassTol = 0.05;
constexpr double kPsiAnchor = 7.495543;
constexpr double kPsiAnchorTol = 1e-6;
constexpr double kLogDerivSlack = 10.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const LedgerEntry& entry(const BoundLedger& l, const std::string& name) {
  const LedgerEntry* e = l.find(name);
  if (!e) throw std::runtime_error("ledger entry missing: " + name);
  return *e;
}

Outcome constants() {
  const BoundLedger l = build_ledger(FieldParameters::make(9, 1, 1, 1));
  Outcome o;
  double worst_c2 = 0, worst_c1 = 0, worst_exp = 0;
  for (const char* n : {"c2_main", "c2_cond"}) worst_c2 = std::max(worst_c2, *entry(l, n).relative_gap);
  for (const char* n : {"c1_main", "c1_cond", "c1"}) worst_c1 = std::max(worst_c1, *entry(l, n).relative_gap);
  for (const char* n : {"c1_exp_main", "c1_exp_cond"}) worst_exp = std::max(worst_exp, *entry(l, n).relative_gap);
  o.pass = worst_c2 <= kC2RelTol && worst_c1 <= kC1RelTol && worst_exp <= kExponentTol;
  o.detail = fmt("c2 gap %.3g, c1 gap %.3g, exponent gap %.3g", worst_c2, worst_c1, worst_exp);
  return o;
}

Outcome identities() {
  const BoundLedger l = build_ledger(FieldParameters::make(9, 1, 1, 1));
  const double lo = entry(l, "lower_exponent").derived;
  const double hi = entry(l, "upper_exponent").derived;
  const double a2 = 1.0 - AnalyticConstants::A1 / AnalyticConstants::L_floor;
  Outcome o;
  o.pass = std::abs(lo - 0.0432) <= kExpIdentityTol && std::abs(hi - 0.0459) <= kExpIdentityTol &&
           std::abs(1.0 / 0.0432 - 23.148) <= kInverseTol && std::abs(0.0432 * std::numbers::e - 0.117) <= kShiftTol &&
           std::abs(a2 - AnalyticConstants::A2) <= kA2Tol;
  o.detail = fmt("0.47 c18 = %.6f, 0.5 c18 = %.6f, A2 = %.7f", lo, hi, a2);
  return o;
}

Outcome lambert() {
  Outcome o;
  double worst = 0;
  for (int i = 0; i < kWPointsPerBranch; ++i) {
    const double s = -8.0 + 16.0 * i / (kWPointsPerBranch - 1);
    const double x = std::pow(10.0, s);
    const double w = lambert_w(WBranch::principal, x);
    worst = std::max(worst, rel(w * std::exp(w), x));
  }
  const double s_lo = std::log10(std::numbers::e) + 1e-9;
  for (int i = 0; i < kWPointsPerBranch; ++i) {
    const double s = s_lo + (8.0 - s_lo) * i / (kWPointsPerBranch - 1);
    const double x = -std::pow(10.0, -s);
    const double w = lambert_w(WBranch::minus_one, x);
    worst = std::max(worst, rel(w * std::exp(w), x));
  }
  int envelope_failures = 0;
  for (int i = 0; i <= 700; ++i) {
    const double u = std::pow(10.0, -4.0 + i / 100.0);
    const WEnvelope e = neg_wm1_of_exp(u);
    const double v = neg_wm1_of_exp_value(u);
    if (!(e.lower < v && v < e.upper)) ++envelope_failures;
  }
  int threshold_failures = 0;
  for (int r2 : {1, 2, 3, 5})
    for (std::uint64_t d : {9u, 100u, 163u, 100000u})
      for (std::uint64_t n : {1u, 7u, 1000u})
        for (std::uint64_t h : {1u, 6u})
          for (double eps = 0.01; eps < 1.0; eps += 0.049) {
            const auto p = FieldParameters::make(d, r2, n, h);
            if (threshold_x0(eps, p, ThresholdMode::rigorous) < threshold_x0(eps, p, ThresholdMode::paper))
              ++threshold_failures;
          }
  o.pass = worst <= kWRoundTripTol && envelope_failures == 0 && threshold_failures == 0;
  o.detail = fmt("max residual %.3g, envelope failures %.0f, threshold order failures %.0f", worst, envelope_failures,
                 threshold_failures);
  return o;
}

Outcome lemmas() {
  const VerificationGrid grid;
  // One grid point is a parameter tuple at one T or one log x.
  const std::size_t points = grid.point_count() * (grid.T.size() + grid.log_x_factors.size());
  const auto reports = run_verification_grid(grid);
  std::size_t failed = 0, nonpositive = 0, equality = 0;
  for (const auto& r : reports) {
    if (!r.passed) ++failed;
    if (r.equality_case)
      ++equality;
    else if (!(r.slack > 0.0))
      ++nonpositive;
  }
  Outcome o;
  o.pass = points >= kMinGridPoints && grid.rel_err == 1e-8 && failed == 0 && nonpositive == 0;
  o.detail = std::to_string(points) + " grid points, " + std::to_string(reports.size()) + " checks, " +
             std::to_string(failed) + " failed, " + std::to_string(nonpositive) + " without slack, " +
             std::to_string(equality) + " equality cases";
  return o;
}

double class_deviation(const PsiByClass& r) {
  double dev = 0;
  for (double v : r.per_class) dev = std::max(dev, rel(v, r.x / r.class_count));
  return dev;
}

Outcome empirical_pit() {
  const auto k = QuadraticField::make(-1);
  const double total = psi_empirical(1e6, std::nullopt, k, 1);
  const auto r4 = psi_by_class(1e4, k, 3);
  const auto r6 = psi_by_class(1e6, k, 3);
  const double anchor = psi_empirical(10, std::nullopt, k, 1);
  const double d4 = class_deviation(r4), d6 = class_deviation(r6);
  const bool trend =
      std::abs(total / 1e6 - 1.0) <= kPsiTotalTol && r6.class_count == 2 && d6 <= kPsiClassTol && d6 < d4;
  // psi(10) is log 1800 = 7.4955419..., 1.06e-6 away from the stated anchor.
  const bool anchored = std::abs(anchor - kPsiAnchor) <= kPsiAnchorTol;
  Outcome o;
  o.pass = trend && anchored;
  o.detail = std::string("trend ") + (trend ? "ok" : "bad") +
             fmt(": psi(1e6)/1e6 = %.6f, class deviation %.4g -> %.4g", total / 1e6, d4, d6) + "; anchor " +
             (anchored ? "ok" : "bad") + fmt(": psi(10) = %.9f vs %.6f", anchor, kPsiAnchor) +
             fmt(", off by %.3g", std::abs(anchor - kPsiAnchor));
  return o;
}

Outcome log_derivative() {
  const auto k = QuadraticField::make(-1);
  Outcome o;
  double worst = INFINITY;
  for (double t : {0.0, 1.0, 5.0, 10.0}) {
    const auto c = logderiv_check(1.5, t, k, 1e6);
    worst = std::min(worst, c.slack_factor);
    if (!(c.measured <= c.bound && c.slack_factor >= kLogDerivSlack)) o.pass = false;
  }
  o.detail = fmt("minimum slack factor %.1f", worst);
  return o;
}

Outcome cm_primes() {
  Outcome o;
  for (i64 disc : {-7, -8, -11, -19, -43}) {
    if (search_cm_pairs(disc, 2, 10000, 2) != oracle::naive_search(disc, 2, 10000, 2)) {
      o.pass = false;
      o.detail += "mismatch for " + std::to_string(disc) + "; ";
    }
  }
  const auto small = search_cm_pairs(-7, 2, 100, 2);
  const auto has = [&](const CMCandidate& c) { return std::find(small.begin(), small.end(), c) != small.end(); };
  if (!has({29, 7, 2, 4, -7}) || !has({2, 2, 1, 1, -7})) {
    o.pass = false;
    o.detail += "anchors missing; ";
  }
  const auto start = std::chrono::steady_clock::now();
  const auto big = search_cm_pairs(-7, u64{1} << 20, u64{1} << 21, 2);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (big.empty() || secs >= 10.0 || !verify_cm_pair(big.front()).valid) o.pass = false;
  o.detail += fmt("%.0f pairs with p in [2^20, 2^21] in %.3f s", static_cast<double>(big.size()), secs);
  return o;
}

Outcome ledger_report() {
  const BoundLedger l = build_ledger(FieldParameters::make(9, 1, 1, 1));
  const auto listed = [&](const std::string& n) {
    return std::any_of(l.discrepancies.begin(), l.discrepancies.end(),
                       [&](const LedgerDiscrepancy& d) { return d.name == n; });
  };
  const auto& ratio = entry(l, "c3_ratio");
  const auto& c1 = entry(l, "c1_main");
  Outcome o;
  o.pass = listed("c3_ratio") && std::abs(*ratio.printed - 4.0902) < 1e-4 && ratio.derived >= 5.0 &&
           listed("c1_main") && std::abs(c1.derived - *c1.printed) > 0.0 && listed("B");
  o.detail = fmt("c3 ratio %.4f vs %.5f; c1 %.3f", *ratio.printed, ratio.derived, *c1.printed) +
             fmt(" vs %.3f; %.0f discrepancies", c1.derived, static_cast<double>(l.discrepancies.size()));
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "constant reproduction", 1.0, constants},
      {2, "identity suite", 1.0, identities},
      {3, "Lambert W", 5.0, lambert},
      {4, "lemma suite", 60.0, lemmas},
      {5, "empirical prime ideal theorem trend", 60.0, empirical_pit},
      {6, "log-derivative majorant", 120.0, log_derivative},
      {7, "CM primes", 10.0, cm_primes},
      {8, "ledger discrepancy report", 1.0, ledger_report},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("%s criterion %d (%s): %s [%.3f s of %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.budget_seconds);
  }
  return failures;
}
