#include <gtest/gtest.h>

#include <map>

#include "support/oracles.hpp"

using namespace schurweyl;

namespace {

// sl_2 invariants in (adjoint)^{(x)r} from the weight multiset alone:
// mult(trivial) = #(weight 0) - #(weight 2), the adjoint weights being -2, 0, 2.
long sl2_trivial_by_weights(int r) {
  std::map<long, long> count{{0, 1}};
  for (int k = 0; k < r; ++k) {
    std::map<long, long> next;
    for (auto [w, c] : count)
      for (long step : {-2L, 0L, 2L}) next[w + step] += c;
    count = next;
  }
  return count[0] - count[2];
}

}  // namespace

TEST(Derangements, SmallValues) {
  const long expected[] = {1, 0, 1, 2, 9, 44, 265, 1854, 14833};
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(derangements(k), expected[k]);
    EXPECT_EQ(derangements_by_enumeration(k), expected[k]);
  }
  EXPECT_EQ(derangements(20).get_str(), "895014631192902121");
  EXPECT_THROW(derangements(-1), InvalidArgument);
  EXPECT_THROW(derangements_by_enumeration(11), CapExceeded);
}

TEST(Derangements, TableRecurrenceAndMethods) {
  const auto t = derangement_table(30);
  ASSERT_EQ(t.entries.size(), 31u);
  EXPECT_TRUE(t.recurrence_holds());
  for (const auto& e : t.entries) EXPECT_EQ(e.method, e.k <= 8 ? "enumeration" : "formula");
  const auto j = t.to_json();
  EXPECT_EQ(j[5].dump(), R"({"k":5,"N":"44","method":"enumeration"})");
  EXPECT_EQ(derangement_table(0).to_json().dump(), R"([{"k":0,"N":"1","method":"enumeration"}])");
  EXPECT_EQ(derangement_table(10, 3).entries[4].method, "formula");
}

TEST(Derangements, RecurrenceDetectsCorruption) {
  auto t = derangement_table(6);
  t.entries[4].value += 1;
  EXPECT_FALSE(t.recurrence_holds());
}

TEST(Derangements, NearestIntegerToFactorialOverE) {
  for (int k = 1; k <= 30; ++k) {
    const auto c = nearest_integer_check(k);
    ASSERT_TRUE(c.holds) << k;
    ASSERT_LT(c.lower, c.upper);
    ASSERT_EQ(c.value, derangements(k));
  }
  EXPECT_THROW(nearest_integer_check(0), InvalidArgument);
}

TEST(Counts, FormulasMatchEnumeration) {
  for (int r = 1; r <= 6; ++r) EXPECT_EQ(diagram_count(r), static_cast<long>(enumerate_diagrams(r).size()));
  EXPECT_EQ(diagram_count(3), 15);
  EXPECT_EQ(diagram_count(0), 1);
  for (int m = 1; m <= 6; ++m)
    for (int r = 0; r <= m; ++r) {
      std::size_t n = 0;
      for_each_diagram(m, [&](const BrauerDiagram& d) { n += is_walled(d, WallContext(r, m - r)); });
      ASSERT_EQ(walled_count(r, m - r), static_cast<long>(n));
    }
  EXPECT_EQ(walled_count(4, 2), 720);
  EXPECT_EQ(walled_count(5, 0), 120);
}

TEST(Multiplicity, TrivialSmallCases) {
  for (int n = 2; n <= 5; ++n) EXPECT_EQ(multiplicity_trivial(RationalField{}, n, 1), 0u);
  EXPECT_EQ(multiplicity_trivial(RationalField{}, 4, 2), 1u);
  EXPECT_EQ(multiplicity_trivial(RationalField{}, 3, 2), 1u);
  EXPECT_EQ(multiplicity_trivial(PrimeField(kDefaultPrimeA), 4, 2), 1u);
}

TEST(Multiplicity, TrivialForSl2MatchesWeightCount) {
  for (int r = 1; r <= 6; ++r)
    EXPECT_EQ(static_cast<long>(multiplicity_trivial(RationalField{}, 2, r)), sl2_trivial_by_weights(r)) << r;
}

TEST(Multiplicity, TrivialEqualsDerangementsInTheStableRange) {
  EXPECT_EQ(multiplicity_trivial(RationalField{}, 2, 1), derangements(1));
  EXPECT_EQ(multiplicity_trivial(RationalField{}, 4, 2), derangements(2));
  EXPECT_EQ(multiplicity_trivial(RationalField{}, 6, 2), derangements(2));
  EXPECT_EQ(multiplicity_trivial(RationalField{}, 6, 3), derangements(3));
}

TEST(Multiplicity, AdjointAgreesWithInvariantsOfOneMoreFactor) {
  for (auto [n, r] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 2}}) {
    const auto adj = multiplicity_adjoint(RationalField{}, n, r);
    EXPECT_EQ(adj, multiplicity_trivial(RationalField{}, n, r + 1)) << n << "," << r;
  }
  for (int n = 2; n <= 4; ++n) EXPECT_EQ(multiplicity_adjoint(RationalField{}, n, 1), 1u);
}

TEST(Multiplicity, CapsAreReported) {
  SolverCaps caps;
  caps.exact_unknowns = 100;
  EXPECT_THROW(multiplicity_adjoint(RationalField{}, 3, 2, caps), CapExceeded);
  EXPECT_THROW(multiplicity_trivial(RationalField{}, 4, 5), CapExceeded);
}

TEST(HighestWeights, WeylDimension) {
  EXPECT_EQ(weyl_dimension({1, 0, 0}), 3);
  EXPECT_EQ(weyl_dimension({1, 0, -1}), 8);
  EXPECT_EQ(weyl_dimension({2, 0, -2}), 27);
  EXPECT_EQ(weyl_dimension({0, 0, 0, 0}), 1);
  EXPECT_EQ(weyl_dimension(adjoint_highest_weight(4)), 15);
}

TEST(HighestWeights, TableAccountsForTheWholeSpace) {
  for (auto [n, r] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}}) {
    const auto table = highest_weight_table(RationalField{}, n, r);
    Integer total = 0;
    for (const auto& e : table) total += Integer(static_cast<unsigned long>(e.multiplicity)) * e.dimension;
    Integer expected = 1;
    for (int k = 0; k < r; ++k) expected *= n * n - 1;
    EXPECT_EQ(total, expected) << n << "," << r;
  }
}

TEST(HighestWeights, SquaredMultiplicitiesGiveTheDerangedDimension) {
  const auto table = highest_weight_table(RationalField{}, 4, 2);
  std::size_t sum = 0;
  for (const auto& e : table) sum += e.multiplicity * e.multiplicity;
  EXPECT_EQ(Integer(static_cast<unsigned long>(sum)), derangements(4));
  bool found = false;
  for (const auto& e : table)
    if (e.weight == adjoint_highest_weight(4)) {
      found = true;
      EXPECT_EQ(e.multiplicity, multiplicity_adjoint(RationalField{}, 4, 2));
    }
  EXPECT_TRUE(found);
}
