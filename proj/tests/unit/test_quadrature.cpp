#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pitbound/quadrature.hpp"
#include "pitbound/summation.hpp"

using namespace pitbound;

TEST(Quadrature, TailIntegralClosedForms) {
  EXPECT_NEAR(tail_integral([](double) { return 1.0; }, 1.0, 1e-10), 1.0, 1e-12);
  EXPECT_NEAR(tail_integral([](double) { return 1.0; }, 10.0, 1e-10), 0.1, 1e-13);
  // int_1^inf log(t + 4) t^{-2} dt = (5/4) log 5.
  const double log_case = tail_integral([](double t) { return std::log(t + 4.0); }, 1.0, 1e-10);
  EXPECT_NEAR(log_case, 1.25 * std::log(5.0), 1e-9);
  EXPECT_NEAR(log_case, 2.01180, 1e-5);
  // int_T^inf log(t) t^{-2} dt = (log T + 1) / T.
  for (double T : {1.0, 3.0, 50.0, 1e4}) {
    const double v = tail_integral([](double t) { return std::log(t); }, T, 1e-10);
    EXPECT_NEAR(v, (std::log(T) + 1.0) / T, 1e-9 * (std::log(T) + 1.0) / T) << T;
  }
  // int_T^inf t^{-3/2} dt = 2 / sqrt(T).
  for (double T : {1.0, 7.0}) {
    const double v = tail_integral([](double t) { return std::sqrt(t); }, T, 1e-10);
    EXPECT_NEAR(v, 2.0 / std::sqrt(T), 1e-8) << T;
  }
}

TEST(Quadrature, ClosedFormOfLogTPlusFour) {
  // Antiderivative of log(t + 4) / t^2 is -log(t + 4)/t + (1/4) log(t / (t + 4)).
  for (double T : {1.0, 2.0, 5.0, 10.0, 100.0}) {
    const double exact = std::log(T + 4.0) / T - 0.25 * std::log(T / (T + 4.0));
    const double v = tail_integral([](double t) { return std::log(t + 4.0); }, T, 1e-8);
    EXPECT_NEAR(v, exact, 1e-8 * exact) << T;
  }
}

TEST(Quadrature, HalvingToleranceStaysWithinClaimedError) {
  const auto f = [](double t) { return std::log(t + 4.0) * (1.0 + 1.0 / (1.0 + t)); };
  for (double T : {1.0, 10.0}) {
    const auto a = tail_integral_detailed(f, T, 1e-8);
    const auto b = tail_integral_detailed(f, T, 5e-9);
    EXPECT_LE(std::abs(a.value - b.value), std::max(a.error_estimate, 1e-8 * std::abs(a.value)) * 2.0) << T;
  }
}

TEST(Quadrature, AdaptiveSimpsonFinite) {
  const auto r = adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(r.value, std::numbers::e - 1.0, 1e-12);
  const auto s = adaptive_simpson([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(s.value, 2.0 / 3.0, 1e-9);
}

TEST(Quadrature, Errors) {
  EXPECT_THROW(tail_integral([](double) { return 1.0; }, 0.5, 1e-8), DomainError);
  EXPECT_THROW(tail_integral([](double) { return 1.0; }, 1.0, 0.0), DomainError);
  QuadratureOptions tight;
  tight.max_subdivisions = 3;
  EXPECT_THROW(adaptive_simpson([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, 1e-12, tight),
               ConvergenceError);
}

TEST(NeumaierSum, CompensatesCancellation) {
  NeumaierSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_EQ(s.value(), 2.0);
  NeumaierSum t;
  for (int i = 0; i < 1000000; ++i) t += 0.1;
  EXPECT_NEAR(t.value(), 100000.0, 1e-9);
}
