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

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Core model for periodic high-utility itemset mining over quantitative
// transaction databases: items with external utilities, transactions holding
// (item, quantity) pairs, and the period arithmetic shared by the miner and
// the sanitizer.

namespace phide {

using ItemId = std::int32_t;

// Error categories map onto process exit codes in the CLI:
// ConfigError -> 2, ParseError -> 3, InvariantError -> 4.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact non-negative rational. Average periods and support bounds are
// compared without rounding, so they are kept as num/den pairs.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Ratio of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw InvariantError("Ratio with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    Ratio r; r.num = n; r.den = d;
    return r;
  }

  static Ratio of(std::int64_t n) { return of(n, 1); }

  // Accepts "2", "1.67" and "7/3". Used for threshold flags.
  static Ratio parse(const std::string& full) {
    auto bad = [&] { throw ConfigError("invalid rational: '" + full + "'"); };
    std::int64_t sign = 1;
    std::string text = full;
    if (!text.empty() && text[0] == '-') {
      sign = -1;
      text = text.substr(1);
    }
    if (text.empty()) bad();
    auto slash = text.find('/');
    auto dot = text.find('.');
    auto to_int = [&](const std::string& s) -> std::int64_t {
      if (s.empty() || s.size() > 15 ||
          s.find_first_not_of("0123456789") != std::string::npos) {
        bad();
      }
      return std::stoll(s);
    };
    if (slash != std::string::npos) {
      if (dot != std::string::npos) bad();
      std::int64_t d = to_int(text.substr(slash + 1));
      if (d == 0) bad();
      return of(sign * to_int(text.substr(0, slash)), d);
    }
    if (dot != std::string::npos) {
      std::string frac = text.substr(dot + 1);
      if (frac.size() > 9) bad();
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      return of(sign * (to_int(text.substr(0, dot)) * den + (frac.empty() ? 0 : to_int(frac))),
                den);
    }
    return of(sign * to_int(text), 1);
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Ratio& a, const Ratio& b) { return !(a == b); }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
  friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }
};

// External utility per item; every item occurring in a dataset must have an
// entry with utility >= 1.
using UtilityTable = std::map<ItemId, std::int64_t>;

// (item, quantity) pairs sorted by item id, quantities >= 1. A transaction
// may be empty. Its tid is its 1-based position in the dataset.
struct Transaction {
  std::vector<std::pair<ItemId, std::int64_t>> items;

  bool contains(ItemId id) const {
    auto it = std::lower_bound(items.begin(), items.end(), id,
                               [](const auto& p, ItemId v) { return p.first < v; });
    return it != items.end() && it->first == id;
  }

  // 0 when absent.
  std::int64_t quantity(ItemId id) const {
    auto it = std::lower_bound(items.begin(), items.end(), id,
                               [](const auto& p, ItemId v) { return p.first < v; });
    return (it != items.end() && it->first == id) ? it->second : 0;
  }

  friend bool operator==(const Transaction& a, const Transaction& b) {
    return a.items == b.items;
  }
};

struct Dataset {
  std::vector<Transaction> transactions;
  UtilityTable utable;

  std::int32_t size() const { return static_cast<std::int32_t>(transactions.size()); }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.transactions == b.transactions && a.utable == b.utable;
  }
};

// Sorted list of distinct item ids, non-empty.
using Itemset = std::vector<ItemId>;

inline void validate_itemset(const Itemset& x) {
  if (x.empty()) throw ConfigError("itemset must be non-empty");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i - 1] >= x[i]) throw ConfigError("itemset items must be strictly ascending");
  }
}

inline std::string itemset_to_string(const Itemset& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(x[i]);
  }
  return out;
}

struct Thresholds {
  std::int64_t min_util = 0;
  std::int32_t min_per = 1;
  std::int32_t max_per = 1;
  Ratio min_avg = Ratio::of(1);
  Ratio max_avg = Ratio::of(1);

  void validate() const {
    if (min_util < 0) throw ConfigError("minutil must be >= 0");
    if (min_per < 1) throw ConfigError("minper must be a positive integer");
    if (max_per < 1) throw ConfigError("maxper must be a positive integer");
    if (min_avg.num <= 0) throw ConfigError("minavg must be positive");
    if (max_avg.num <= 0) throw ConfigError("maxavg must be positive");
    if (max_avg < min_avg) throw ConfigError("minavg must be <= maxavg");
  }
};

// Occurrence tids of an itemset plus the derived period values. Periods are
// the gaps between consecutive occurrences with virtual boundaries at tid 0
// and tid |D|, so they always sum to |D| and there are support+1 of them.
struct PeriodSummary {
  std::vector<std::int32_t> occurrences;
  std::vector<std::int32_t> periods;
  std::int32_t min_per = 0;
  std::int32_t max_per = 0;
  Ratio avg_per = Ratio::of(0);
  std::int32_t support = 0;

  friend bool operator==(const PeriodSummary& a, const PeriodSummary& b) {
    return a.occurrences == b.occurrences && a.periods == b.periods &&
           a.min_per == b.min_per && a.max_per == b.max_per &&
           a.avg_per == b.avg_per && a.support == b.support;
  }
};

struct PhuiRecord {
  Itemset itemset;
  std::int64_t utility = 0;
  PeriodSummary period;

  friend bool operator==(const PhuiRecord& a, const PhuiRecord& b) {
    return a.itemset == b.itemset && a.utility == b.utility && a.period == b.period;
  }
};

inline std::int64_t external_utility(const UtilityTable& ut, ItemId id) {
  auto it = ut.find(id);
  if (it == ut.end()) {
    throw ParseError("item " + std::to_string(id) + " has no utility table entry");
  }
  return it->second;
}

inline std::int64_t item_utility(ItemId id, std::int64_t quantity, const UtilityTable& ut) {
  return quantity * external_utility(ut, id);
}

// 0 when the transaction does not contain the whole itemset.
inline std::int64_t itemset_utility_in_transaction(const Itemset& x, const Transaction& t,
                                                   const UtilityTable& ut) {
  std::int64_t sum = 0;
  for (ItemId id : x) {
    std::int64_t q = t.quantity(id);
    if (q == 0) return 0;
    sum += item_utility(id, q, ut);
  }
  return sum;
}

inline std::int64_t itemset_utility(const Itemset& x, const Dataset& d) {
  std::int64_t sum = 0;
  for (const Transaction& t : d.transactions) {
    sum += itemset_utility_in_transaction(x, t, d.utable);
  }
  return sum;
}

inline std::int64_t transaction_utility(const Transaction& t, const UtilityTable& ut) {
  std::int64_t sum = 0;
  for (const auto& [id, q] : t.items) sum += item_utility(id, q, ut);
  return sum;
}

inline std::int64_t total_utility(const Dataset& d) {
  std::int64_t sum = 0;
  for (const Transaction& t : d.transactions) sum += transaction_utility(t, d.utable);
  return sum;
}

// 1-based tids of the transactions containing x, ascending.
inline std::vector<std::int32_t> occurrence_tids(const Itemset& x, const Dataset& d) {
  std::vector<std::int32_t> tids;
  for (std::int32_t tid = 1; tid <= d.size(); ++tid) {
    const Transaction& t = d.transactions[tid - 1];
    bool all = true;
    for (ItemId id : x) {
      if (!t.contains(id)) { all = false; break; }
    }
    if (all) tids.push_back(tid);
  }
  return tids;
}

inline PeriodSummary period_summary_from_tids(std::vector<std::int32_t> tids,
                                              std::int32_t d_size) {
  PeriodSummary s;
  s.support = static_cast<std::int32_t>(tids.size());
  s.occurrences = std::move(tids);
  std::int32_t prev = 0;
  for (std::int32_t tid : s.occurrences) {
    s.periods.push_back(tid - prev);
    prev = tid;
  }
  s.periods.push_back(d_size - prev);
  s.max_per = *std::max_element(s.periods.begin(), s.periods.end());
  // minPer skips the two boundary periods; with fewer than two occurrences
  // there is no interior gap and minPer falls back to maxPer.
  if (s.support <= 1) {
    s.min_per = s.max_per;
  } else {
    s.min_per = *std::min_element(s.periods.begin() + 1, s.periods.end() - 1);
  }
  s.avg_per = Ratio::of(d_size, s.support + 1);
  return s;
}

inline PeriodSummary period_summary(const Itemset& x, const Dataset& d) {
  return period_summary_from_tids(occurrence_tids(x, d), d.size());
}

inline bool passes_period_thresholds(const PeriodSummary& s, const Thresholds& thr) {
  return s.min_per >= thr.min_per && s.max_per <= thr.max_per &&
         thr.min_avg <= s.avg_per && s.avg_per <= thr.max_avg;
}

// The mining predicate: at least one occurrence, utility at or above minutil,
// and all four period constraints.
inline bool is_phui(std::int64_t utility, const PeriodSummary& s, const Thresholds& thr) {
  return s.support >= 1 && utility >= thr.min_util && passes_period_thresholds(s, thr);
}

inline PhuiRecord make_record(const Itemset& x, const Dataset& d) {
  PhuiRecord r;
  r.itemset = x;
  r.utility = itemset_utility(x, d);
  r.period = period_summary(x, d);
  return r;
}

}  // namespace phide
