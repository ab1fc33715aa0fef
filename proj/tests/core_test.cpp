// Copyright 2026 The phide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phide/core.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace {

using phide::Dataset;
using phide::ItemId;
using phide::Itemset;
using phide::PeriodSummary;
using phide::Ratio;
using phide::Thresholds;

TEST(Ratio, NormalizesAndCompares) {
  EXPECT_EQ(Ratio::of(10, 8), Ratio::of(5, 4));
  EXPECT_EQ(Ratio::of(10, 5).to_string(), "2");
  EXPECT_EQ(Ratio::of(10, 7).to_string(), "10/7");
  EXPECT_LT(Ratio::of(10, 7), Ratio::of(3, 2));
  EXPECT_GT(Ratio::of(5, 3), Ratio::of(5, 4));
  EXPECT_LE(Ratio::of(2, 1), Ratio::of(2, 1));
  EXPECT_DOUBLE_EQ(Ratio::of(5, 4).to_double(), 1.25);
}

TEST(Ratio, ParsesIntegersDecimalsAndFractions) {
  EXPECT_EQ(Ratio::parse("2"), Ratio::of(2));
  EXPECT_EQ(Ratio::parse("1.67"), Ratio::of(167, 100));
  EXPECT_EQ(Ratio::parse("1.5"), Ratio::of(3, 2));
  EXPECT_EQ(Ratio::parse("7/3"), Ratio::of(7, 3));
  EXPECT_EQ(Ratio::parse("-3/7"), Ratio::of(-3, 7));
  EXPECT_EQ(Ratio::parse("-2"), Ratio::of(-2));
  EXPECT_EQ(Ratio::parse("-0.5"), Ratio::of(-1, 2));
  EXPECT_THROW(Ratio::parse(""), phide::ConfigError);
  EXPECT_THROW(Ratio::parse("-"), phide::ConfigError);
  EXPECT_THROW(Ratio::parse("x"), phide::ConfigError);
  EXPECT_THROW(Ratio::parse("1.2.3"), phide::ConfigError);
  EXPECT_THROW(Ratio::parse("1/0"), phide::ConfigError);
  EXPECT_THROW(Ratio::parse("1.5/2"), phide::ConfigError);
}

TEST(CoreModel, TransactionUtilities) {
  Dataset d = fixtures::demo_dataset();
  ASSERT_EQ(d.size(), 10);
  const std::vector<std::int64_t> expected_tu = {171, 65, 80, 187, 169, 115, 70, 192, 96, 140};
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(phide::transaction_utility(d.transactions[i], d.utable), expected_tu[i])
        << "transaction " << (i + 1);
  }
  EXPECT_EQ(phide::total_utility(d), 1285);
}

TEST(CoreModel, ItemUtility) {
  Dataset d = fixtures::demo_dataset();
  EXPECT_EQ(phide::item_utility(4, 5, d.utable), 35);
  EXPECT_EQ(phide::item_utility(9, 2, d.utable), 20);
  EXPECT_THROW(phide::item_utility(42, 1, d.utable), phide::ParseError);
}

TEST(CoreModel, ItemsetUtilityInTransaction) {
  Dataset d = fixtures::demo_dataset();
  // {b, i} in the last transaction: 2*7 + 9*10.
  EXPECT_EQ(phide::itemset_utility_in_transaction({2, 9}, d.transactions[9], d.utable), 104);
  // {a, b, i} per occurrence.
  EXPECT_EQ(phide::itemset_utility_in_transaction({1, 2, 9}, d.transactions[0], d.utable), 103);
  EXPECT_EQ(phide::itemset_utility_in_transaction({1, 2, 9}, d.transactions[5], d.utable), 51);
  EXPECT_EQ(phide::itemset_utility_in_transaction({1, 2, 9}, d.transactions[7], d.utable), 139);
  EXPECT_EQ(phide::itemset_utility_in_transaction({1, 2, 9}, d.transactions[9], d.utable), 112);
  // Absent itemset contributes nothing.
  EXPECT_EQ(phide::itemset_utility_in_transaction({1, 2, 9}, d.transactions[1], d.utable), 0);
}

TEST(CoreModel, ItemsetUtility) {
  Dataset d = fixtures::demo_dataset();
  EXPECT_EQ(phide::itemset_utility({1, 2, 9}, d), 405);
  EXPECT_EQ(phide::itemset_utility({1, 9}, d), 440);
  EXPECT_EQ(phide::itemset_utility({2, 9}, d), 269);
  EXPECT_EQ(phide::itemset_utility({8}, d), 88);
  EXPECT_EQ(phide::itemset_utility({1}, d), 312);
}

struct SingleItemRow {
  ItemId item;
  std::vector<std::int32_t> occurrences;
  std::vector<std::int32_t> periods;
  std::int32_t min_per;
  std::int32_t max_per;
  Ratio avg_per;
  std::int32_t support;
};

TEST(CoreModel, SingleItemPeriodSummaries) {
  Dataset d = fixtures::demo_dataset();
  const std::vector<SingleItemRow> rows = {
      {1, {1, 4, 5, 6, 7, 8, 10}, {1, 3, 1, 1, 1, 1, 2, 0}, 1, 3, Ratio::of(5, 4), 7},
      {2, {1, 3, 4, 6, 8, 10}, {1, 2, 1, 2, 2, 2, 0}, 1, 2, Ratio::of(10, 7), 6},
      {3, {2, 3, 6, 8, 9, 10}, {2, 1, 3, 2, 1, 1, 0}, 1, 3, Ratio::of(10, 7), 6},
      {4, {2, 4, 5, 6, 8, 9}, {2, 2, 1, 1, 2, 1, 1}, 1, 2, Ratio::of(10, 7), 6},
      {5, {1, 2, 4, 6, 9}, {1, 1, 2, 2, 3, 1}, 1, 3, Ratio::of(5, 3), 5},
      {6, {2, 3, 4, 6, 8}, {2, 1, 1, 2, 2, 2}, 1, 2, Ratio::of(5, 3), 5},
      {7, {1, 2, 5, 6, 7, 8}, {1, 1, 3, 1, 1, 1, 2}, 1, 3, Ratio::of(10, 7), 6},
      {8, {1, 4, 7, 10}, {1, 3, 3, 3, 0}, 3, 3, Ratio::of(2), 4},
      {9, {1, 5, 6, 8, 10}, {1, 4, 1, 2, 2, 0}, 1, 4, Ratio::of(5, 3), 5},
  };
  for (const auto& row : rows) {
    PeriodSummary s = phide::period_summary({row.item}, d);
    EXPECT_EQ(s.occurrences, row.occurrences) << "item " << row.item;
    EXPECT_EQ(s.periods, row.periods) << "item " << row.item;
    EXPECT_EQ(s.min_per, row.min_per) << "item " << row.item;
    EXPECT_EQ(s.max_per, row.max_per) << "item " << row.item;
    EXPECT_EQ(s.avg_per, row.avg_per) << "item " << row.item;
    EXPECT_EQ(s.support, row.support) << "item " << row.item;
  }
}

TEST(CoreModel, PeriodSummaryDegenerateCases) {
  // No occurrences: one period spanning the whole database.
  PeriodSummary none = phide::period_summary_from_tids({}, 10);
  EXPECT_EQ(none.support, 0);
  EXPECT_EQ(none.periods, (std::vector<std::int32_t>{10}));
  EXPECT_EQ(none.max_per, 10);
  EXPECT_EQ(none.min_per, 10);
  EXPECT_EQ(none.avg_per, Ratio::of(10));

  // A single occurrence has no interior gap, so minPer falls back to maxPer.
  PeriodSummary one = phide::period_summary_from_tids({3}, 10);
  EXPECT_EQ(one.support, 1);
  EXPECT_EQ(one.periods, (std::vector<std::int32_t>{3, 7}));
  EXPECT_EQ(one.min_per, 7);
  EXPECT_EQ(one.max_per, 7);
  EXPECT_EQ(one.avg_per, Ratio::of(5));

  PeriodSummary last = phide::period_summary_from_tids({10}, 10);
  EXPECT_EQ(last.periods, (std::vector<std::int32_t>{10, 0}));
  EXPECT_EQ(last.max_per, 10);
  EXPECT_EQ(last.min_per, 10);

  // Two occurrences: exactly one interior gap.
  PeriodSummary two = phide::period_summary_from_tids({2, 9}, 10);
  EXPECT_EQ(two.periods, (std::vector<std::int32_t>{2, 7, 1}));
  EXPECT_EQ(two.min_per, 7);
  EXPECT_EQ(two.max_per, 7);
  EXPECT_EQ(two.avg_per, Ratio::of(10, 3));
}

TEST(CoreModel, PeriodInvariantsOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Dataset d = fixtures::random_small_dataset(seed);
    std::set<ItemId> items;
    for (const auto& t : d.transactions) {
      for (const auto& [id, q] : t.items) items.insert(id);
    }
    for (ItemId id : items) {
      PeriodSummary s = phide::period_summary({id}, d);
      ASSERT_GE(s.support, 1);
      EXPECT_EQ(static_cast<std::int32_t>(s.periods.size()), s.support + 1);
      std::int64_t sum = 0;
      for (auto p : s.periods) {
        EXPECT_GE(p, 0);
        sum += p;
      }
      EXPECT_EQ(sum, d.size());
      EXPECT_EQ(s.avg_per, Ratio::of(d.size(), s.support + 1));
      EXPECT_TRUE(std::is_sorted(s.occurrences.begin(), s.occurrences.end()));
      EXPECT_GE(s.min_per, 1);
      EXPECT_LE(s.max_per, d.size());
    }
  }
}

TEST(CoreModel, ThresholdValidation) {
  Thresholds thr = fixtures::demo_thresholds();
  EXPECT_NO_THROW(thr.validate());
  Thresholds bad = thr;
  bad.min_util = -1;
  EXPECT_THROW(bad.validate(), phide::ConfigError);
  bad = thr;
  bad.min_per = 0;
  EXPECT_THROW(bad.validate(), phide::ConfigError);
  bad = thr;
  bad.max_per = 0;
  EXPECT_THROW(bad.validate(), phide::ConfigError);
  bad = thr;
  bad.min_avg = Ratio::of(3);
  bad.max_avg = Ratio::of(2);
  EXPECT_THROW(bad.validate(), phide::ConfigError);
}

TEST(CoreModel, ItemsetValidation) {
  EXPECT_NO_THROW(phide::validate_itemset({1, 2, 9}));
  EXPECT_THROW(phide::validate_itemset({}), phide::ConfigError);
  EXPECT_THROW(phide::validate_itemset({2, 1}), phide::ConfigError);
  EXPECT_THROW(phide::validate_itemset({1, 1}), phide::ConfigError);
}

TEST(CoreModel, MiningPredicateBoundaries) {
  Dataset d = fixtures::demo_dataset();
  Thresholds thr = fixtures::demo_thresholds();
  PeriodSummary s = phide::period_summary({1, 7, 9}, d);
  // Utility and avgPer sit exactly on their thresholds here: u = 384 with
  // minutil 384, avgPer = 2 with maxavg 2. Both bounds are inclusive.
  Thresholds tight = thr;
  tight.min_util = 384;
  EXPECT_TRUE(phide::is_phui(384, s, tight));
  tight.min_util = 385;
  EXPECT_FALSE(phide::is_phui(384, s, tight));
  tight = thr;
  tight.max_per = 3;
  EXPECT_FALSE(phide::is_phui(384, s, tight));
  tight = thr;
  tight.min_per = 2;
  EXPECT_FALSE(phide::is_phui(384, s, tight));
}

}  // namespace
