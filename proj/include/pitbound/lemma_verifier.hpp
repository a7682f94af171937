#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pitbound/explicit_bounds.hpp"
#include "pitbound/field_params.hpp"
#include "pitbound/quadrature.hpp"

namespace pitbound {

/// Outcome of one numerically checked inequality `measured <= bound`.
struct VerificationReport {
  std::string check_name;
  std::vector<std::pair<std::string, double>> parameters;
  double bound_value = 0.0;
  double measured_value = 0.0;
  double slack = 0.0;
  bool passed = false;
  /// The inequality is an identity at this point; zero slack is expected.
  bool equality_case = false;
};

inline constexpr double kReportTolerance = 1e-9;

inline VerificationReport make_report(std::string name, std::vector<std::pair<std::string, double>> parameters,
                                      double bound, double measured, bool equality_case = false) {
  VerificationReport r;
  r.check_name = std::move(name);
  r.parameters = std::move(parameters);
  r.bound_value = bound;
  r.measured_value = measured;
  r.slack = bound - measured;
  r.passed = measured <= bound * (1.0 + kReportTolerance);
  r.equality_case = equality_case;
  return r;
}

inline std::vector<std::pair<std::string, double>> describe(const FieldParameters& p, const ZetaContext& ctx) {
  return {{"abs_discriminant", static_cast<double>(p.abs_discriminant())},
          {"r2", p.r2d()},
          {"conductor_norm", static_cast<double>(p.conductor_norm())},
          {"E0", ctx.kind().e0()},
          {"eps_chi", ctx.kind().eps_chi()},
          {"eta", ctx.eta()},
          {"w", ctx.w()}};
}

/// Tail-integral lemmas at a single T: each exact integral against its
/// closed-form majorant.
inline std::vector<VerificationReport> check_integral_lemmas(const FieldParameters& params, double T,
                                                             const ZetaContext& ctx = {}, double rel_err = 1e-8) {
  const CharacterKind kind = ctx.kind();
  const double r2 = params.r2d();
  const double shape = std::log(std::numbers::e * (T + 4.0)) / T;  // T^{-1} log(e (T + 4))

  auto tag = describe(params, ctx);
  tag.emplace_back("T", T);
  std::vector<VerificationReport> out;

  const double i_t2 = tail_integral([](double) { return 1.0; }, T, rel_err);
  out.push_back(make_report("tail_t2", tag, 1.0 / T, i_t2, true));

  const double i_log = tail_integral([](double t) { return std::log(t + 4.0); }, T, rel_err);
  out.push_back(make_report("tail_log", tag, shape, i_log));

  const double i_L = tail_integral([&](double t) { return big_L(t, params, kind); }, T, rel_err);
  out.push_back(make_report("tail_L", tag, c5(params, kind) * shape, i_L));

  const double i_logA3 =
      tail_integral([&](double t) { return 2.0 * r2 * std::log1p(AnalyticConstants::A3 * big_L(t, params, kind)); },
                    T, rel_err);
  out.push_back(make_report("tail_log_A3L_split", tag, 2.0 * r2 * c7() / T + 2.0 * r2 * c5(params, kind) * shape,
                            i_logA3));
  out.push_back(make_report("tail_log_A3L", tag, c6(params, kind) * shape, i_logA3));

  const double i_phi0 = tail_integral([&](double t) { return phi0(t, params, ctx); }, T, rel_err);
  out.push_back(make_report("tail_phi0", tag, c8(params) * shape, i_phi0));

  const double i_phi = tail_integral([&](double t) { return phi(t, params, ctx); }, T, rel_err);
  out.push_back(make_report("tail_phi", tag, c9(params) * shape, i_phi));
  return out;
}

/// Majorants of phi and phi0 at T + 1 = c0 exp(c4 sqrt(log x)), together
/// with the substitution identity L(T) = A0 sqrt(2 r2 / w) sqrt(log x).
inline std::vector<VerificationReport> check_phi_substitution(double log_x, const FieldParameters& params,
                                                              const ZetaContext& ctx = {}) {
  const double floor = substitution_floor(params, ctx);
  if (!(log_x >= floor * (1.0 - 1e-12)))
    throw ThresholdError("log x = " + std::to_string(log_x) + " is below the substitution floor " +
                         std::to_string(floor));
  const double T = std::max(substitution_T(log_x, params, ctx), 1.0);
  const double r2 = params.r2d();
  const double scale = std::pow(r2, 1.5) * params.log_disc_nf() * std::sqrt(log_x);

  auto tag = describe(params, ctx);
  tag.emplace_back("log_x", log_x);
  tag.emplace_back("T", T);
  std::vector<VerificationReport> out;

  const double L_T = big_L(T, params, ctx.kind());
  const double L_expected = AnalyticConstants::A0 * std::sqrt(2.0 * r2 / ctx.w()) * std::sqrt(log_x);
  out.push_back(make_report("subst_L_identity", tag, L_expected, L_T, true));
  out.push_back(make_report("subst_L_floor", tag, L_T, AnalyticConstants::L_floor));
  out.push_back(make_report("subst_phi", tag, LemmaConstants::phi_substitution * scale, phi(T, params, ctx)));
  out.push_back(make_report("subst_phi0", tag, LemmaConstants::phi0_substitution * scale, phi0(T, params, ctx)));
  return out;
}

/// 1/T^k <= 2^k c0^{-k} e^{-k c4 sqrt(log x)} and
/// log(e (T + k)) <= c4 sqrt(log x) + log(e (k + 1) / 2).
inline std::vector<VerificationReport> check_T_inverse(double log_x, const FieldParameters& params,
                                                       const ZetaContext& ctx, int k) {
  if (k < 1) throw DomainError("k must be >= 1");
  const double floor = substitution_floor(params, ctx);
  if (!(log_x >= floor * (1.0 - 1e-12)))
    throw ThresholdError("log x = " + std::to_string(log_x) + " is below the substitution floor " +
                         std::to_string(floor));
  const double kd = static_cast<double>(k);
  const double c0v = c0(params, ctx.kind());
  const double c4v = c4(params, ctx);
  const double root = std::sqrt(log_x);
  const double T = c0v * std::exp(c4v * root) - 1.0;

  auto tag = describe(params, ctx);
  tag.emplace_back("log_x", log_x);
  tag.emplace_back("k", kd);
  const bool at_floor = std::abs(log_x - floor) <= 1e-12 * floor;

  std::vector<VerificationReport> out;
  const double inv = std::pow(T, -kd);
  const double inv_bound = std::pow(2.0 / c0v, kd) * std::exp(-kd * c4v * root);
  out.push_back(make_report("subst_T_inverse", tag, inv_bound, inv, at_floor));
  const double shifted = std::log(std::numbers::e * (T + kd));
  const double shifted_bound = c4v * root + std::log(std::numbers::e * (kd + 1.0) / 2.0);
  out.push_back(make_report("subst_log_shift", tag, shifted_bound, shifted));
  return out;
}

/// Parameter grid for the lemma suite. Every combination of the listed
/// values is checked.
struct VerificationGrid {
  std::vector<double> T{1, 2, 5, 10, 100};
  std::vector<int> r2{1, 2, 3};
  std::vector<std::uint64_t> abs_discriminant{9, 40, 163, 1000000};
  std::vector<std::uint64_t> conductor_norm{1, 5, 97};
  std::vector<int> principal{0, 1};
  std::vector<int> imprimitive{0, 1};
  /// log x values for the substitution lemmas, as multiples of the floor.
  std::vector<double> log_x_factors{1.0, 1.5, 4.0, 100.0};
  std::vector<int> k{1, 2, 3};
  double rel_err = 1e-8;
  double eta = AnalyticConstants::default_eta;
  double w = AnalyticConstants::default_w;

  std::size_t point_count() const {
    return r2.size() * abs_discriminant.size() * conductor_norm.size() * principal.size() * imprimitive.size();
  }
};

/// Runs every check over the grid. Parameter points are evaluated
/// concurrently; the output keeps grid order.
inline std::vector<VerificationReport> run_verification_grid(const VerificationGrid& grid, bool parallel = true) {
  struct Point {
    FieldParameters params;
    ZetaContext ctx;
  };
  std::vector<Point> points;
  for (int r2 : grid.r2)
    for (auto disc : grid.abs_discriminant)
      for (auto nf : grid.conductor_norm)
        for (int e0 : grid.principal)
          for (int eps : grid.imprimitive)
            points.push_back({FieldParameters::make(disc, r2, nf, 1),
                              ZetaContext::make(grid.eta, grid.w, CharacterKind{e0 != 0, eps != 0})});

  const auto run_point = [&grid](const Point& pt) {
    std::vector<VerificationReport> out;
    for (double T : grid.T) {
      auto r = check_integral_lemmas(pt.params, T, pt.ctx, grid.rel_err);
      out.insert(out.end(), r.begin(), r.end());
    }
    const double floor = substitution_floor(pt.params, pt.ctx);
    for (double factor : grid.log_x_factors) {
      const double log_x = floor * factor;
      auto r = check_phi_substitution(log_x, pt.params, pt.ctx);
      out.insert(out.end(), r.begin(), r.end());
      for (int k : grid.k) {
        auto q = check_T_inverse(log_x, pt.params, pt.ctx, k);
        out.insert(out.end(), q.begin(), q.end());
      }
    }
    return out;
  };

  std::vector<std::vector<VerificationReport>> per_point(points.size());
  const std::size_t workers =
      parallel ? std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), points.size()))
               : 1;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        per_point[i] = run_point(points[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<VerificationReport> all;
  for (auto& v : per_point) all.insert(all.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  return all;
}

}  // namespace pitbound
