#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pitbound/field_params.hpp"
#include "pitbound/zeta.hpp"

using namespace pitbound;

namespace {

const CharacterKind kNonPrincipal{false, false};
const CharacterKind kPrincipal{true, false};

}  // namespace

TEST(FieldParams, Validation) {
  EXPECT_THROW(FieldParameters::make(8, 1, 1, 1), DomainError);
  EXPECT_THROW(FieldParameters::make(9, 0, 1, 1), DomainError);
  EXPECT_THROW(FieldParameters::make(9, 1, 0, 1), DomainError);
  EXPECT_THROW(FieldParameters::make(9, 1, 1, 0), DomainError);
  EXPECT_NO_THROW(FieldParameters::make(9, 1, 1, 1));
  const auto small = FieldParameters::unchecked(4, 1, 1, 1);
  EXPECT_FALSE(small.satisfies_hypotheses());
}

TEST(FieldParams, Constants) {
  using C = AnalyticConstants;
  EXPECT_DOUBLE_EQ(C::B, 0.0795 / 6.0);
  EXPECT_NEAR(C::B, 0.01325, 1e-15);
  EXPECT_NEAR(C::w_limit(), 58.57, 5e-3);
  EXPECT_NEAR(1.0 - C::A1 / C::L_floor, C::A2, 2e-6);
}

TEST(FieldParams, BigLExamples) {
  const auto p9 = FieldParameters::make(9, 1, 1, 1);
  EXPECT_NEAR(big_L(0, p9, kNonPrincipal), std::log(9.0), 1e-15);
  const auto p9_5 = FieldParameters::make(9, 1, 5, 1);
  EXPECT_NEAR(big_L(0, p9_5, kPrincipal), std::log(9.0), 1e-15);
  EXPECT_NEAR(big_L(1, p9_5, kNonPrincipal), std::log(9.0) + 0.7761 * std::log(20.0), 1e-14);
  EXPECT_NEAR(big_L(1, p9_5, kNonPrincipal), 4.52221, 1e-5);
  EXPECT_THROW(big_L(0, FieldParameters::unchecked(4, 1, 1, 1), kPrincipal), DomainError);
}

TEST(FieldParams, BigLMonotone) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(0.0, 100.0);
  std::uniform_int_distribution<std::uint64_t> ud(9, 100000), un(1, 1000);
  std::uniform_int_distribution<int> ur(1, 4);
  for (int i = 0; i < 500; ++i) {
    const double t = ut(rng);
    const auto d = ud(rng), n = un(rng);
    const int r2 = ur(rng);
    const auto base = FieldParameters::make(d, r2, n, 1);
    const double v = big_L(t, base, kNonPrincipal);
    EXPECT_LT(v, big_L(t + 0.5, base, kNonPrincipal));
    EXPECT_LT(v, big_L(t, FieldParameters::make(d + 1, r2, n, 1), kNonPrincipal));
    EXPECT_LT(v, big_L(t, FieldParameters::make(d, r2, n + 1, 1), kNonPrincipal));
    EXPECT_GE(v, AnalyticConstants::L_floor);
  }
}

TEST(FieldParams, ZeroFreeSigma) {
  const auto p9 = FieldParameters::make(9, 1, 1, 1);
  EXPECT_NEAR(zero_free_sigma(0, p9, kNonPrincipal), 1.0 - 0.0795 / std::log(9.0), 1e-15);
  EXPECT_NEAR(zero_free_sigma(0, p9, kNonPrincipal), 0.963818, 1e-6);
  double prev = 0.0;
  for (double t : {0.0, 1.0, 10.0, 1e3, 1e6, 1e12}) {
    const double s = zero_free_sigma(t, p9, kNonPrincipal);
    EXPECT_LT(s, 1.0);
    EXPECT_GT(s, prev);
    EXPECT_NEAR(1.0 - s, AnalyticConstants::A1 / big_L(t, p9, kNonPrincipal), 1e-15);
    prev = s;
  }
}

TEST(FieldParams, AFrak) {
  EXPECT_NEAR(a_frak(FieldParameters::make(9, 1, 1, 1)), 3.0 / (2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(a_frak(FieldParameters::make(9, 1, 4, 1)), 6.0 / (2.0 * std::numbers::pi), 1e-15);
  for (std::uint64_t n : {1u, 3u, 17u}) {
    EXPECT_NEAR(a_frak(FieldParameters::make(40, 2, 2 * n, 1)) / a_frak(FieldParameters::make(40, 2, n, 1)),
                std::sqrt(2.0), 1e-14);
  }
}

TEST(FieldParams, C0) {
  const auto p9 = FieldParameters::make(9, 1, 1, 1);
  EXPECT_NEAR(c0(p9, kNonPrincipal), std::pow(9.0, -1.0 / (2.0 * 0.7761)), 1e-15);
  EXPECT_NEAR(c0(p9, kNonPrincipal), 0.242791, 1e-6);
  EXPECT_NEAR(c0(FieldParameters::make(9, 1, 5, 1), kNonPrincipal), 0.242791 / std::sqrt(5.0), 1e-6);
  EXPECT_DOUBLE_EQ(c0(FieldParameters::make(9, 1, 5, 1), kPrincipal), c0(p9, kPrincipal));
  for (std::uint64_t d : {9u, 10u, 163u, 1000000u})
    for (int r2 : {1, 2, 5})
      for (std::uint64_t n : {1u, 7u}) {
        EXPECT_LE(c0(FieldParameters::make(d, r2, n, 1), kNonPrincipal), 1.0);
        EXPECT_LE(c0(FieldParameters::make(d, r2, n, 1), kPrincipal), 1.0);
      }
}

TEST(Zeta, Values) {
  EXPECT_NEAR(zeta_riemann(2.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-14);
  EXPECT_NEAR(zeta_riemann(4.0), std::pow(std::numbers::pi, 4) / 90.0, 1e-14);
  EXPECT_NEAR(zeta_riemann(1.25), 4.595111825842943, 1e-12);
  EXPECT_LE(zeta_riemann(1.25), 4.596);
  EXPECT_THROW(zeta_riemann(1.0), DomainError);
}

TEST(Zeta, AgreesWithDirectSeries) {
  // Direct partial sum plus the integral tail estimate with the midpoint correction.
  for (double s : {1.5, 2.5, 3.25, 6.0}) {
    long double acc = 0.0L;
    const int n = 200000;
    for (int k = n; k >= 1; --k) acc += std::pow(static_cast<long double>(k), -static_cast<long double>(s));
    const long double tail = std::pow(static_cast<long double>(n), 1.0L - s) / (s - 1.0L) -
                             0.5L * std::pow(static_cast<long double>(n), -static_cast<long double>(s));
    EXPECT_NEAR(zeta_riemann(s), static_cast<double>(acc + tail), 1e-12) << s;
  }
  EXPECT_NEAR(zeta_riemann(3.25), 1.159151985679521, 1e-12);
}
