#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "pitbound/ledger.hpp"

using namespace pitbound;

namespace {

const BoundLedger& ledger9() {
  static const BoundLedger l = build_ledger(FieldParameters::make(9, 1, 1, 1));
  return l;
}

const LedgerEntry& entry(const std::string& name) {
  const LedgerEntry* e = ledger9().find(name);
  if (!e) throw std::runtime_error("missing entry " + name);
  return *e;
}

bool has_discrepancy(const std::string& name) {
  const auto& d = ledger9().discrepancies;
  return std::any_of(d.begin(), d.end(), [&](const LedgerDiscrepancy& x) { return x.name == name; });
}

}  // namespace

TEST(Ledger, SecondTheoremCoefficientsReproduce) {
  EXPECT_NEAR(entry("c2_main").derived, 3 * 3585.536, 1e-9);
  EXPECT_NEAR(entry("c2_cond").derived, 3 * 1847.116, 1e-9);
  EXPECT_LT(*entry("c2_main").relative_gap, 1e-4);
  EXPECT_LT(*entry("c2_cond").relative_gap, 1e-4);
  EXPECT_FALSE(entry("c2_main").flagged);
}

TEST(Ledger, FirstTheoremRecombination) {
  const auto& m = entry("c1_main");
  EXPECT_NEAR(m.derived, 37007.123, 1e-3);
  EXPECT_NEAR(*m.printed, 36997.123, 1e-9);
  EXPECT_LT(*m.relative_gap, 1e-3);
  EXPECT_EQ(m.direction, "deficient");
  EXPECT_LT(*entry("c1_cond").relative_gap, 1e-3);
  EXPECT_LT(*entry("c1").relative_gap, 1e-3);
}

TEST(Ledger, Exponents) {
  EXPECT_NEAR(entry("c1_exp_main").derived, 3.0 / (2.0 * 0.7761), 1e-15);
  EXPECT_LT(*entry("c1_exp_main").relative_gap, 5e-4);
  EXPECT_LT(*entry("c1_exp_cond").relative_gap, 5e-4);
  EXPECT_NEAR(entry("lower_exponent").derived, 0.0432, 3e-4);
  EXPECT_NEAR(entry("upper_exponent").derived, 0.0459, 3e-4);
  EXPECT_NEAR(entry("x0_scale").derived, 23.148, 5e-3);
  EXPECT_NEAR(entry("x0_shift").derived, 0.117, 5e-4);
  EXPECT_NEAR(entry("A2").derived, 0.962088, 2e-6);
}

TEST(Ledger, KnownInconsistenciesReported) {
  const auto& ratio = entry("c3_ratio");
  EXPECT_NEAR(ratio.printed.value(), 4.0902, 1e-4);
  EXPECT_GE(ratio.derived, 5.0);
  EXPECT_TRUE(ratio.flagged);
  EXPECT_EQ(ratio.direction, "deficient");
  EXPECT_TRUE(has_discrepancy("c3_ratio"));
  EXPECT_TRUE(has_discrepancy("c1_main"));
  EXPECT_TRUE(has_discrepancy("B"));
  EXPECT_EQ(entry("B").printed.value(), 0.0133);
  EXPECT_EQ(entry("B_alt").direction, "exact");
  // Exact roundings are never listed; B is a cross-entry check.
  for (const auto& d : ledger9().discrepancies) {
    if (d.name == "B") continue;
    const LedgerEntry* e = ledger9().find(d.name);
    if (e) {
      EXPECT_NE(e->direction, "exact") << d.name;
    }
  }
}

TEST(Ledger, DiscrepancyListIsStable) {
  std::set<std::string> names;
  for (const auto& d : ledger9().discrepancies) names.insert(d.name);
  const std::set<std::string> expected{"c6",  "c8",  "c9",  "c12",       "c14",     "c17",     "c19", "c20",
                                       "c21", "c3_ratio", "c3_main", "c3_cond", "c1_main", "c3",  "B"};
  EXPECT_EQ(names, expected);
}

TEST(Ledger, EntriesAreWellFormed) {
  const auto& l = ledger9();
  EXPECT_NEAR(l.reference_log_x, 515.8085203254, 1e-9);
  std::set<std::string> seen;
  for (const auto& e : l.entries) {
    EXPECT_TRUE(seen.insert(e.name).second) << e.name;
    EXPECT_FALSE(e.location.empty()) << e.name;
    EXPECT_TRUE(std::isfinite(e.value)) << e.name;
    EXPECT_TRUE(std::isfinite(e.derived)) << e.name;
    if (e.printed) {
      EXPECT_TRUE(e.relative_gap.has_value());
      EXPECT_EQ(e.flagged, *e.relative_gap > kLedgerFlagTolerance);
      EXPECT_FALSE(e.direction.empty());
    } else {
      EXPECT_TRUE(e.direction.empty());
    }
  }
  for (const char* name : {"c2", "c3", "c1", "c20", "c21", "c22", "c23", "c24", "c25", "c26", "zeta(5/4)"})
    EXPECT_NE(l.find(name), nullptr) << name;
}

TEST(Ledger, ValuesAtReferenceParameters) {
  EXPECT_NEAR(entry("c2").value, 1857961.834357802403, 1e-6 * 1857961.8);
  EXPECT_NEAR(entry("c3").value, 2533130.174976453005, 1e-6 * 2533130.2);
  EXPECT_NEAR(entry("c1").value, 6394610.544880891429, 1e-6 * 6394610.5);
  EXPECT_NEAR(entry("zeta(5/4)").value, 4.595111825842943, 1e-12);
}

TEST(Ledger, ScalesWithParameters) {
  const auto a = build_ledger(FieldParameters::make(40, 2, 5, 3));
  const auto* c2 = a.find("c2");
  ASSERT_NE(c2, nullptr);
  EXPECT_NEAR(c2->value, theorem2_constants(FieldParameters::make(40, 2, 5, 3)).c2, 1e-9 * c2->value);
  EXPECT_GT(a.reference_log_x, 0.0);
}
