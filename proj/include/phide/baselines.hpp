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
#include <string>
#include <vector>

#include "phide/core.hpp"
#include "phide/sanitizer.hpp"

// Simplified comparison sanitizers. They hide on the utility condition only
// (edit until utility drops below minutil), pick the victim transaction by
// collateral-damage avoidance (fewest fully contained non-sensitive
// itemsets), and differ in the victim item rule:
//
//   SMAU: member with the largest in-transaction utility,
//   SMIU: member with the smallest in-transaction utility,
//   SMSE: member contained in the fewest non-sensitive itemsets.
//
// Because they ignore the period constraints entirely, they can cure a
// period violation by accident and surface brand-new itemsets in the
// sanitized database.

namespace phide {

enum class BaselineVariant { Smau, Smiu, Smse };

inline const char* to_string(BaselineVariant v) {
  switch (v) {
    case BaselineVariant::Smau: return "smau";
    case BaselineVariant::Smiu: return "smiu";
    default: return "smse";
  }
}

namespace detail {

inline bool contains_all(const Transaction& t, const Itemset& x) {
  for (ItemId id : x) {
    if (!t.contains(id)) return false;
  }
  return true;
}

}  // namespace detail

inline SanitizeOutcome sanitize_baseline(const Dataset& d, const std::vector<Itemset>& sensitive,
                                         const Thresholds& thr,
                                         const std::vector<Itemset>& non_sensitive,
                                         BaselineVariant variant) {
  thr.validate();
  {
    std::vector<Itemset> sorted = sensitive;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i - 1] == sorted[i]) {
        throw ConfigError("duplicate sensitive itemset {" + itemset_to_string(sorted[i]) + "}");
      }
    }
  }

  SanitizeOutcome out;
  out.sanitized = d;
  Dataset& w = out.sanitized;

  SanitizeReport& rep = out.report;
  rep.algo = to_string(variant);
  rep.min_util = thr.min_util;
  rep.max_per = thr.max_per;
  rep.max_avg = thr.max_avg;
  rep.min_sup = min_support_bound(d.size(), thr.max_avg);
  rep.d_size = d.size();

  // Static per-item membership counts over the non-sensitive list (SMSE).
  std::map<ItemId, std::int64_t> member_counts;
  for (const Itemset& y : non_sensitive) {
    for (ItemId id : y) member_counts[id] += 1;
  }

  struct Entry {
    Itemset itemset;
    std::int64_t initial_su;
  };
  std::vector<Entry> order;
  for (const Itemset& x : sensitive) {
    validate_itemset(x);
    Entry e;
    e.itemset = x;
    e.initial_su = itemset_utility(x, d);
    if (e.initial_su == 0) {
      throw ConfigError("sensitive itemset {" + itemset_to_string(x) +
                        "} never occurs in the database");
    }
    order.push_back(std::move(e));
  }
  std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    if (a.itemset.size() != b.itemset.size()) return a.itemset.size() > b.itemset.size();
    if (a.initial_su != b.initial_su) return a.initial_su > b.initial_su;
    return a.itemset < b.itemset;
  });
  for (const Entry& e : order) rep.order.push_back(e.itemset);

  for (const Entry& e : order) {
    const Itemset& x = e.itemset;
    for (;;) {
      std::int64_t su = itemset_utility(x, w);
      if (su < thr.min_util) {
        rep.hidden.emplace_back(x, HiddenBy::Utility);
        break;
      }
      std::vector<std::int32_t> tids = occurrence_tids(x, w);
      if (tids.empty()) {
        throw InvariantError("cannot hide {" + itemset_to_string(x) +
                             "}: no occurrences left but utility threshold still satisfied");
      }

      // Victim transaction: fewest fully contained non-sensitive itemsets,
      // ties to the smallest tid.
      std::int32_t victim_tid = tids[0];
      std::int64_t best_count = -1;
      for (std::int32_t tid : tids) {
        std::int64_t count = 0;
        for (const Itemset& y : non_sensitive) {
          if (detail::contains_all(w.transactions[tid - 1], y)) ++count;
        }
        if (best_count < 0 || count < best_count) {
          best_count = count;
          victim_tid = tid;
        }
      }

      const Transaction& t = w.transactions[victim_tid - 1];
      ItemId victim = x[0];
      std::int64_t victim_iu = item_utility(x[0], t.quantity(x[0]), w.utable);
      for (ItemId id : x) {
        std::int64_t iu = item_utility(id, t.quantity(id), w.utable);
        bool better = false;
        switch (variant) {
          case BaselineVariant::Smau:
            better = iu > victim_iu;
            break;
          case BaselineVariant::Smiu:
            better = iu < victim_iu;
            break;
          case BaselineVariant::Smse:
            better = member_counts[id] < member_counts[victim] ||
                     (member_counts[id] == member_counts[victim] && iu < victim_iu);
            break;
        }
        if (better) {
          victim = id;
          victim_iu = iu;
        }
      }

      std::int64_t du = su - thr.min_util;
      std::int64_t qty = t.quantity(victim);
      std::int64_t eu = external_utility(w.utable, victim);

      EditStep step;
      step.itemset = x;
      step.tid = victim_tid;
      step.item = victim;
      step.du = du;
      step.item_iu = victim_iu;
      if (victim_iu <= du) {
        step.action = EditAction::Delete;
        step.dq = qty;
      } else {
        std::int64_t dq = required_reduction_units(du, eu);
        if (dq >= qty) {
          step.action = EditAction::Delete;
          step.dq = qty;
        } else {
          step.action = EditAction::Reduce;
          step.dq = dq;
        }
      }
      if (step.action == EditAction::Delete) {
        detail::apply_delete(w, victim_tid, victim);
        rep.removed_utility += victim_iu;
      } else {
        detail::apply_reduce(w, victim_tid, victim, step.dq);
        rep.removed_utility += step.dq * eu;
      }

      Sisl after = build_sisl(x, w);
      step.su_after = after.su;
      step.sup_after = after.sup;
      step.lp_after = after.lp;
      rep.steps.push_back(step);
    }
  }
  return out;
}

}  // namespace phide
