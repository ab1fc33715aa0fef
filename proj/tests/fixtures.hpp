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

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "phide/core.hpp"
#include "phide/io.hpp"
#include "phide/rng.hpp"

// Shared test data. The ten-transaction demo database used throughout the
// suites; items 1..9 with external utilities 8,7,3,7,4,3,2,4,10 and total
// utility 1285. All expected values asserted against it were computed by
// hand from the definitions before the implementation existed.

namespace fixtures {

inline const char* kDemoTransactions =
    "1:6 2:5 5:5 7:6 8:9 9:2\n"
    "3:2 4:2 5:3 6:9 7:3\n"
    "2:8 3:5 6:3\n"
    "1:9 2:6 4:5 5:1 6:2 8:7\n"
    "1:8 4:1 7:4 9:9\n"
    "1:3 2:1 3:5 4:1 5:6 6:2 7:6 9:2\n"
    "1:5 7:5 8:5\n"
    "1:7 2:9 3:6 4:1 6:6 7:5 9:2\n"
    "3:5 4:7 5:8\n"
    "1:1 2:2 3:8 8:1 9:9\n";

inline const char* kDemoUtable =
    "1 8\n"
    "2 7\n"
    "3 3\n"
    "4 7\n"
    "5 4\n"
    "6 3\n"
    "7 2\n"
    "8 4\n"
    "9 10\n";

inline phide::Dataset demo_dataset() {
  return phide::parse_quantity_format(kDemoTransactions, kDemoUtable);
}

// Thresholds under which the demo database has exactly eight periodic
// high-utility itemsets.
inline phide::Thresholds demo_thresholds() {
  phide::Thresholds thr;
  thr.min_util = 260;
  thr.min_per = 1;
  thr.max_per = 6;
  thr.min_avg = phide::Ratio::of(1);
  thr.max_avg = phide::Ratio::of(2);
  return thr;
}

// Small random instance for oracle-equivalence and pipeline properties:
// at most 8 distinct items and at most 12 transactions.
inline phide::Dataset random_small_dataset(std::uint64_t seed) {
  std::mt19937_64 rng(phide::splitmix64(seed));
  phide::SyntheticParams p;
  p.seed = rng();
  p.n_transactions = 3 + static_cast<std::int32_t>(phide::uniform_below(rng, 10));
  p.n_items = 2 + static_cast<std::int32_t>(phide::uniform_below(rng, 7));
  p.avg_len = 1 + static_cast<std::int32_t>(
      phide::uniform_below(rng, static_cast<std::uint64_t>((p.n_items + 1) / 2)));
  p.max_qty = 1 + static_cast<std::int64_t>(phide::uniform_below(rng, 5));
  p.max_eu = 1 + static_cast<std::int64_t>(phide::uniform_below(rng, 6));
  p.periodicity_bias = 0.0;
  return phide::generate_synthetic(p);
}

// Random but sane thresholds for the same instance family. minutil >= 1 so
// hiding always terminates.
inline phide::Thresholds random_thresholds(std::uint64_t seed, const phide::Dataset& d) {
  std::mt19937_64 rng(phide::splitmix64(seed ^ 0x5eedULL));
  std::int64_t total = phide::total_utility(d);
  phide::Thresholds thr;
  thr.min_util = 1 + static_cast<std::int64_t>(
      phide::uniform_below(rng, static_cast<std::uint64_t>(total / 2 + 2)));
  thr.min_per = 1;
  thr.max_per = 1 + static_cast<std::int32_t>(
      phide::uniform_below(rng, static_cast<std::uint64_t>(d.size() + 1)));
  std::int64_t a_num = 1 + static_cast<std::int64_t>(phide::uniform_below(rng, 6));
  std::int64_t a_den = 1 + static_cast<std::int64_t>(phide::uniform_below(rng, 3));
  std::int64_t b_num = 1 + static_cast<std::int64_t>(
      phide::uniform_below(rng, static_cast<std::uint64_t>(2 * d.size())));
  std::int64_t b_den = 1 + static_cast<std::int64_t>(phide::uniform_below(rng, 3));
  phide::Ratio lo = phide::Ratio::of(a_num, a_den);
  phide::Ratio hi = phide::Ratio::of(b_num, b_den);
  if (hi < lo) std::swap(lo, hi);
  thr.min_avg = lo;
  thr.max_avg = hi;
  // Occasionally exercise a minper above 1.
  if (phide::uniform_below(rng, 4) == 0) thr.min_per = 2;
  return thr;
}

}  // namespace fixtures
