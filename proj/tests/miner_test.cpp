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

#include "phide/miner.hpp"

#include <vector>

#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace {

using phide::Dataset;
using phide::Itemset;
using phide::PhuiRecord;
using phide::Ratio;
using phide::Thresholds;

TEST(Twu, DemoValues) {
  Dataset d = fixtures::demo_dataset();
  phide::TwuTable twu = phide::compute_twu(d);
  // Item 8 occurs in transactions 1, 4, 7 and 10: 171 + 187 + 70 + 140.
  EXPECT_EQ(twu[8], 568);
  EXPECT_EQ(twu[1], 171 + 187 + 169 + 115 + 70 + 192 + 140);
  EXPECT_EQ(twu[9], 171 + 169 + 115 + 192 + 140);
  // TWU dominates the item's own utility.
  for (const auto& [id, w] : twu) {
    EXPECT_GE(w, phide::itemset_utility({id}, d)) << "item " << id;
  }
}

struct GoldenRow {
  Itemset itemset;
  std::int64_t utility;
  std::int32_t support;
  std::int32_t min_per;
  std::int32_t max_per;
  Ratio avg_per;
};

TEST(Miner, GoldenResultOnDemoDatabase) {
  Dataset d = fixtures::demo_dataset();
  auto records = phide::mine_phuis(d, fixtures::demo_thresholds());
  const std::vector<GoldenRow> expected = {
      {{1}, 312, 7, 1, 3, Ratio::of(5, 4)},
      {{1, 2}, 369, 5, 2, 3, Ratio::of(5, 3)},
      {{1, 2, 9}, 405, 4, 2, 5, Ratio::of(2)},
      {{1, 4}, 272, 4, 1, 4, Ratio::of(2)},
      {{1, 7}, 284, 5, 1, 4, Ratio::of(5, 3)},
      {{1, 7, 9}, 384, 4, 1, 4, Ratio::of(2)},
      {{1, 9}, 440, 5, 1, 4, Ratio::of(5, 3)},
      {{2, 9}, 269, 4, 2, 5, Ratio::of(2)},
  };
  ASSERT_EQ(records.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(records[i].itemset, expected[i].itemset) << "row " << i;
    EXPECT_EQ(records[i].utility, expected[i].utility) << "row " << i;
    EXPECT_EQ(records[i].period.support, expected[i].support) << "row " << i;
    EXPECT_EQ(records[i].period.min_per, expected[i].min_per) << "row " << i;
    EXPECT_EQ(records[i].period.max_per, expected[i].max_per) << "row " << i;
    EXPECT_EQ(records[i].period.avg_per, expected[i].avg_per) << "row " << i;
  }
}

TEST(Miner, MatchesBruteForceOnDemoDatabase) {
  Dataset d = fixtures::demo_dataset();
  EXPECT_EQ(phide::mine_phuis(d, fixtures::demo_thresholds()),
            phide::mine_phuis_bruteforce(d, fixtures::demo_thresholds()));
}

TEST(Miner, MatchesBruteForceOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Dataset d = fixtures::random_small_dataset(seed);
    Thresholds thr = fixtures::random_thresholds(seed, d);
    auto fast = phide::mine_phuis(d, thr);
    auto slow = phide::mine_phuis_bruteforce(d, thr);
    ASSERT_EQ(fast, slow) << "seed " << seed << ", minutil " << thr.min_util << ", maxper "
                          << thr.max_per << ", minavg " << thr.min_avg.to_string()
                          << ", maxavg " << thr.max_avg.to_string();
  }
}

TEST(Miner, UnreachableMinutilYieldsNothing) {
  Dataset d = fixtures::demo_dataset();
  Thresholds thr = fixtures::demo_thresholds();
  thr.min_util = phide::total_utility(d) + 1;
  thr.max_per = d.size();
  thr.max_avg = Ratio::of(d.size());
  EXPECT_TRUE(phide::mine_phuis(d, thr).empty());
  EXPECT_TRUE(phide::mine_phuis_bruteforce(d, thr).empty());
}

TEST(Miner, VacuousThresholdsYieldEveryOccurringItemset) {
  Dataset d = fixtures::demo_dataset();
  Thresholds thr;
  thr.min_util = 0;
  thr.min_per = 1;
  thr.max_per = d.size();
  thr.min_avg = Ratio::of(1, d.size() + 1);
  thr.max_avg = Ratio::of(d.size());
  auto fast = phide::mine_phuis(d, thr);
  auto slow = phide::mine_phuis_bruteforce(d, thr);
  EXPECT_EQ(fast, slow);
  EXPECT_FALSE(fast.empty());
  for (const auto& r : fast) EXPECT_GE(r.period.support, 1);
}

TEST(Miner, EmptyDataset) {
  Dataset d;
  Thresholds thr = fixtures::demo_thresholds();
  EXPECT_TRUE(phide::mine_phuis(d, thr).empty());
  EXPECT_TRUE(phide::mine_phuis_bruteforce(d, thr).empty());
}

TEST(Miner, BruteForceRefusesLargeUniverse) {
  Dataset d;
  phide::Transaction t;
  for (phide::ItemId id = 1; id <= 21; ++id) {
    t.items.emplace_back(id, 1);
    d.utable[id] = 1;
  }
  d.transactions.push_back(t);
  EXPECT_THROW(phide::mine_phuis_bruteforce(d, fixtures::demo_thresholds()),
               phide::ConfigError);
}

TEST(Miner, InvalidThresholdsRejected) {
  Dataset d = fixtures::demo_dataset();
  Thresholds thr = fixtures::demo_thresholds();
  thr.min_per = 0;
  EXPECT_THROW(phide::mine_phuis(d, thr), phide::ConfigError);
}

}  // namespace
