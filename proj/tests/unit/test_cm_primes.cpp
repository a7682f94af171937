#include <gtest/gtest.h>

#include <chrono>
#include <vector>

#include "cm_oracle.hpp"
#include "pitbound/cm_primes.hpp"

using namespace pitbound;

using pitbound::oracle::naive_search;

TEST(VerifyCM, Examples) {
  EXPECT_TRUE(verify_cm_pair({29, 7, 2, 4, -7}).valid);
  EXPECT_TRUE(verify_cm_pair({2, 2, 1, 1, -7}).valid);
  const auto bad = verify_cm_pair({29, 5, 2, 4, -7});
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.failure_reason, "divisibility");
}

TEST(VerifyCM, ClauseOrder) {
  EXPECT_EQ(verify_cm_pair({28, 5, 2, 4, -7}).failure_reason, "p_not_prime");
  EXPECT_EQ(verify_cm_pair({28, 4, 2, 4, -7}).failure_reason, "p_not_prime");
  EXPECT_EQ(verify_cm_pair({29, 4, 2, 4, -7}).failure_reason, "q_not_prime");
  EXPECT_EQ(verify_cm_pair({29, 7, 11, 4, -7}).failure_reason, "trace_bound");
  EXPECT_EQ(verify_cm_pair({29, 7, 2, 3, -7}).failure_reason, "norm_equation");
  EXPECT_EQ(verify_cm_pair({29, 7, 2, 4, 7}).failure_reason, "norm_equation");
  EXPECT_TRUE(verify_cm_pair({29, 7, 2, 4, -7}).failure_reason.empty());
}

TEST(SearchCM, MatchesNaiveOracle) {
  for (i64 disc : {-7, -8, -11, -19, -43}) {
    const auto got = search_cm_pairs(disc, 2, 10000, 2);
    const auto ref = naive_search(disc, 2, 10000, 2);
    ASSERT_EQ(got.size(), ref.size()) << disc;
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i], ref[i]) << disc << " " << i;
  }
  const auto q = search_cm_pairs(-11, 500, 3000, 100);
  EXPECT_EQ(q, naive_search(-11, 500, 3000, 100));
}

TEST(SearchCM, AnchorsAndRoundTrip) {
  const auto got = search_cm_pairs(-7, 2, 100, 2);
  const auto has = [&](const CMCandidate& c) { return std::find(got.begin(), got.end(), c) != got.end(); };
  EXPECT_TRUE(has({29, 7, 2, 4, -7}));
  EXPECT_TRUE(has({2, 2, 1, 1, -7}));
  for (const auto& c : got) {
    EXPECT_TRUE(verify_cm_pair(c).valid);
    EXPECT_EQ(4 * c.p, static_cast<u64>(c.t * c.t) + 7 * c.f * c.f);
  }
}

TEST(SearchCM, LargeRangeQuickly) {
  const auto start = std::chrono::steady_clock::now();
  const auto got = search_cm_pairs(-7, u64{1} << 20, u64{1} << 21, u64{1} << 18);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_FALSE(got.empty());
  EXPECT_LT(secs, 10.0);
  for (const auto& c : got) {
    EXPECT_TRUE(verify_cm_pair(c).valid);
    EXPECT_GE(c.q, u64{1} << 18);
  }
}

TEST(SearchCM, SerialMatchesParallel) {
  CMSearchOptions serial;
  serial.parallel = false;
  EXPECT_EQ(search_cm_pairs(-43, 2, 200000, 50, serial), search_cm_pairs(-43, 2, 200000, 50));
}

TEST(SearchCM, Errors) {
  EXPECT_THROW(search_cm_pairs(7, 2, 100, 2), DomainError);
  EXPECT_THROW(search_cm_pairs(-6, 2, 100, 2), DomainError);
  CMSearchOptions small;
  small.p_cap = 1000;
  EXPECT_THROW(search_cm_pairs(-7, 2, 2000, 2, small), ResourceError);
  EXPECT_TRUE(search_cm_pairs(-7, 100, 50, 2).empty());
  // A range with no prime of the form (t^2 + 7 f^2) / 4.
  EXPECT_TRUE(search_cm_pairs(-7, 24, 28, 2).empty());
}
