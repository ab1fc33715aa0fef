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
#include <map>
#include <set>
#include <vector>

#include "phide/core.hpp"

// Periodic high-utility itemset miner.
//
// Depth-first search over utility lists: each candidate carries
// (tid, iutil, rutil) elements, extensions follow ascending-TWU item order,
// and a subtree is discarded only under three conditions that cannot lose
// results:
//   1. sum(iutil) + sum(rutil) < minutil  (remaining-utility upper bound),
//   2. support(prefix) < |D| / maxavg - 1 (support only shrinks under
//      extension, so avgPer stays above maxavg for every superset),
//   3. maxPer(prefix) > maxper            (maxPer only grows under extension).
// minPer and minavg are not monotone under extension and are checked only
// when a candidate is emitted.

namespace phide {

using TwuTable = std::map<ItemId, std::int64_t>;

// Transaction-weighted utilization: for each item, the sum of the utilities
// of the transactions containing it.
inline TwuTable compute_twu(const Dataset& d) {
  TwuTable twu;
  for (const Transaction& t : d.transactions) {
    std::int64_t tu = transaction_utility(t, d.utable);
    for (const auto& [id, q] : t.items) twu[id] += tu;
  }
  return twu;
}

namespace detail {

struct UlElement {
  std::int32_t tid;
  std::int64_t iutil;
  std::int64_t rutil;
};

struct UtilityList {
  ItemId item = 0;
  std::vector<UlElement> elems;
  std::int64_t sum_iutil = 0;
  std::int64_t sum_rutil = 0;
};

inline PeriodSummary summary_of(const UtilityList& ul, std::int32_t d_size) {
  std::vector<std::int32_t> tids;
  tids.reserve(ul.elems.size());
  for (const UlElement& e : ul.elems) tids.push_back(e.tid);
  return period_summary_from_tids(std::move(tids), d_size);
}

// Join of prefix+x and prefix+y into prefix+x+y. All element vectors are tid
// ascending; the shared prefix utility is subtracted once per matched tid.
inline UtilityList join(const UtilityList& x, const UtilityList& y,
                        const std::vector<UlElement>* prefix) {
  UtilityList out;
  out.item = y.item;
  std::size_t i = 0, j = 0, k = 0;
  while (i < x.elems.size() && j < y.elems.size()) {
    if (x.elems[i].tid < y.elems[j].tid) {
      ++i;
    } else if (y.elems[j].tid < x.elems[i].tid) {
      ++j;
    } else {
      std::int64_t shared = 0;
      if (prefix) {
        while (k < prefix->size() && (*prefix)[k].tid < x.elems[i].tid) ++k;
        shared = (*prefix)[k].iutil;
      }
      UlElement e;
      e.tid = x.elems[i].tid;
      e.iutil = x.elems[i].iutil + y.elems[j].iutil - shared;
      e.rutil = y.elems[j].rutil;
      out.sum_iutil += e.iutil;
      out.sum_rutil += e.rutil;
      out.elems.push_back(e);
      ++i;
      ++j;
    }
  }
  return out;
}

struct MinerState {
  const Dataset* d;
  Thresholds thr;
  std::vector<PhuiRecord> results;

  bool support_may_reach_bound(std::int32_t sp) const {
    // sp >= |D| / maxavg - 1, compared exactly as cross products.
    return static_cast<std::int64_t>(sp + 1) * thr.max_avg.num >=
           static_cast<std::int64_t>(d->size()) * thr.max_avg.den;
  }

  // level holds the utility lists of prefix+z for each candidate extension z;
  // parent is the prefix's own list (null at the root, where the prefix is
  // empty).
  void explore(std::vector<ItemId>& prefix, const UtilityList* parent,
               std::vector<UtilityList>& level) {
    if (parent) prefix.push_back(parent->item);
    for (std::size_t i = 0; i < level.size(); ++i) {
      UtilityList& x = level[i];
      if (x.elems.empty()) continue;
      PeriodSummary s = summary_of(x, d->size());
      if (is_phui(x.sum_iutil, s, thr)) {
        PhuiRecord r;
        r.itemset = prefix;
        r.itemset.push_back(x.item);
        std::sort(r.itemset.begin(), r.itemset.end());
        r.utility = x.sum_iutil;
        r.period = s;
        results.push_back(std::move(r));
      }
      if (x.sum_iutil + x.sum_rutil < thr.min_util) continue;
      if (!support_may_reach_bound(s.support)) continue;
      if (s.max_per > thr.max_per) continue;
      if (i + 1 == level.size()) continue;
      std::vector<UtilityList> children;
      children.reserve(level.size() - i - 1);
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        children.push_back(join(x, level[j], parent ? &parent->elems : nullptr));
      }
      explore(prefix, &x, children);
    }
    if (parent) prefix.pop_back();
  }
};

}  // namespace detail

inline std::vector<PhuiRecord> mine_phuis(const Dataset& d, const Thresholds& thr) {
  thr.validate();
  if (d.transactions.empty()) return {};

  TwuTable twu = compute_twu(d);
  std::vector<ItemId> order;
  for (const auto& [id, w] : twu) {
    if (w >= thr.min_util) order.push_back(id);
  }
  std::sort(order.begin(), order.end(), [&](ItemId a, ItemId b) {
    if (twu[a] != twu[b]) return twu[a] < twu[b];
    return a < b;
  });
  std::map<ItemId, std::size_t> rank;
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  std::vector<detail::UtilityList> singles(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) singles[i].item = order[i];

  std::vector<std::pair<std::size_t, std::int64_t>> row;
  for (std::int32_t tid = 1; tid <= d.size(); ++tid) {
    const Transaction& t = d.transactions[tid - 1];
    row.clear();
    for (const auto& [id, q] : t.items) {
      auto it = rank.find(id);
      if (it == rank.end()) continue;
      row.emplace_back(it->second, item_utility(id, q, d.utable));
    }
    std::sort(row.begin(), row.end());
    std::int64_t rest = 0;
    for (std::size_t i = row.size(); i-- > 0;) {
      detail::UlElement e;
      e.tid = tid;
      e.iutil = row[i].second;
      e.rutil = rest;
      singles[row[i].first].elems.push_back(e);
      singles[row[i].first].sum_iutil += e.iutil;
      singles[row[i].first].sum_rutil += e.rutil;
      rest += row[i].second;
    }
  }

  detail::MinerState st;
  st.d = &d;
  st.thr = thr;
  std::vector<ItemId> prefix;
  st.explore(prefix, nullptr, singles);
  std::sort(st.results.begin(), st.results.end(),
            [](const PhuiRecord& a, const PhuiRecord& b) { return a.itemset < b.itemset; });
  return st.results;
}

// Exhaustive reference miner. Enumerates every subset of the occurring item
// universe, so it refuses universes above 20 items.
inline std::vector<PhuiRecord> mine_phuis_bruteforce(const Dataset& d, const Thresholds& thr) {
  thr.validate();
  if (d.transactions.empty()) return {};

  std::set<ItemId> universe_set;
  for (const Transaction& t : d.transactions) {
    for (const auto& [id, q] : t.items) universe_set.insert(id);
  }
  std::vector<ItemId> universe(universe_set.begin(), universe_set.end());
  if (universe.size() > 20) {
    throw ConfigError("brute-force miner limited to 20 distinct items, got " +
                      std::to_string(universe.size()));
  }

  std::vector<PhuiRecord> results;
  std::uint32_t limit = 1u << universe.size();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    Itemset x;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (mask & (1u << i)) x.push_back(universe[i]);
    }
    PhuiRecord r = make_record(x, d);
    if (is_phui(r.utility, r.period, thr)) results.push_back(std::move(r));
  }
  std::sort(results.begin(), results.end(),
            [](const PhuiRecord& a, const PhuiRecord& b) { return a.itemset < b.itemset; });
  return results;
}

}  // namespace phide
