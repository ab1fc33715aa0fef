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

#include "json.hpp"
#include "phide/core.hpp"

// Sanitizer: edits a database until no sensitive itemset is minable under
// the given thresholds.
//
// Each sensitive itemset is hidden by deleting, or reducing the quantity of,
// one member item in one supporting transaction at a time until its utility
// drops below minutil, its largest period exceeds maxper, or its support
// falls below |D|/maxavg - 1 (at which point its average period exceeds
// maxavg for good, since deletions never raise support). Every edit cascades
// into the summaries of all still-unhidden sensitive itemsets, and the
// summaries are verified against a from-scratch recomputation after every
// edit; any drift raises an invariant error.

namespace phide {

// Which member item to remove from the victim transaction: the one whose
// single-item max period is largest (drives periods apart fastest) or
// smallest (spares the most periodic items).
enum class VictimPolicy { MaxPeriod, MinPeriod };

enum class EditAction { Delete, Reduce };
enum class HiddenBy { Support, MaxPer, Utility };

inline const char* to_string(EditAction a) {
  return a == EditAction::Delete ? "delete" : "reduce";
}

inline const char* to_string(HiddenBy h) {
  switch (h) {
    case HiddenBy::Support: return "support";
    case HiddenBy::MaxPer: return "maxper";
    default: return "utility";
  }
}

// Per-itemset summary: total utility, support, largest period, and the
// supporting tids with the itemset's utility in each.
struct Sisl {
  Itemset itemset;
  std::int64_t su = 0;
  std::int32_t sup = 0;
  std::int32_t lp = 0;
  std::vector<std::pair<std::int32_t, std::int64_t>> tid_utils;

  friend bool operator==(const Sisl& a, const Sisl& b) {
    return a.itemset == b.itemset && a.su == b.su && a.sup == b.sup && a.lp == b.lp &&
           a.tid_utils == b.tid_utils;
  }
};

// One row per (supporting tid, member item): the item's in-transaction
// utility, its quantity, and its current single-item max period.
struct SilRow {
  std::int32_t tid = 0;
  ItemId item = 0;
  std::int64_t iu = 0;
  std::int64_t cnt = 0;
  std::int32_t mp = 0;

  friend bool operator==(const SilRow& a, const SilRow& b) {
    return a.tid == b.tid && a.item == b.item && a.iu == b.iu && a.cnt == b.cnt &&
           a.mp == b.mp;
  }
};

using Sil = std::vector<SilRow>;

inline Sisl build_sisl(const Itemset& x, const Dataset& d) {
  validate_itemset(x);
  Sisl s;
  s.itemset = x;
  for (std::int32_t tid = 1; tid <= d.size(); ++tid) {
    std::int64_t u = itemset_utility_in_transaction(x, d.transactions[tid - 1], d.utable);
    if (u > 0) {
      s.tid_utils.emplace_back(tid, u);
      s.su += u;
    }
  }
  s.sup = static_cast<std::int32_t>(s.tid_utils.size());
  std::vector<std::int32_t> tids;
  tids.reserve(s.tid_utils.size());
  for (const auto& [tid, u] : s.tid_utils) tids.push_back(tid);
  s.lp = period_summary_from_tids(std::move(tids), d.size()).max_per;
  return s;
}

inline Sil build_sil(const Itemset& x, const Dataset& d) {
  validate_itemset(x);
  std::map<ItemId, std::int32_t> mp;
  for (ItemId id : x) mp[id] = period_summary({id}, d).max_per;
  Sil rows;
  for (std::int32_t tid = 1; tid <= d.size(); ++tid) {
    const Transaction& t = d.transactions[tid - 1];
    bool all = true;
    for (ItemId id : x) {
      if (!t.contains(id)) { all = false; break; }
    }
    if (!all) continue;
    for (ItemId id : x) {
      SilRow r;
      r.tid = tid;
      r.item = id;
      r.cnt = t.quantity(id);
      r.iu = item_utility(id, r.cnt, d.utable);
      r.mp = mp[id];
      rows.push_back(r);
    }
  }
  return rows;
}

// Support below this bound forces avgPer = |D|/(sup+1) above maxavg.
// Exact: |D|/maxavg - 1 with maxavg = p/q is (|D|q - p)/p.
inline Ratio min_support_bound(std::int32_t d_size, const Ratio& max_avg) {
  return Ratio::of(static_cast<std::int64_t>(d_size) * max_avg.den - max_avg.num,
                   max_avg.num);
}

// Supporting transaction where the itemset's utility is largest; ties go to
// the smallest tid.
inline std::int32_t select_victim_transaction(const Sisl& s) {
  if (s.tid_utils.empty()) {
    throw InvariantError("victim selection on itemset with no occurrences");
  }
  std::int32_t best_tid = s.tid_utils[0].first;
  std::int64_t best_u = s.tid_utils[0].second;
  for (const auto& [tid, u] : s.tid_utils) {
    if (u > best_u) { best_tid = tid; best_u = u; }
  }
  return best_tid;
}

// Member item with the extreme max period; ties prefer the larger
// in-transaction utility, then the smaller item id.
inline SilRow select_victim_item(const std::vector<SilRow>& rows_at_tid, VictimPolicy policy) {
  if (rows_at_tid.empty()) {
    throw InvariantError("victim selection with no candidate rows");
  }
  const SilRow* best = &rows_at_tid[0];
  for (const SilRow& r : rows_at_tid) {
    bool better = policy == VictimPolicy::MaxPeriod ? r.mp > best->mp : r.mp < best->mp;
    if (!better && r.mp == best->mp) {
      better = r.iu > best->iu || (r.iu == best->iu && r.item < best->item);
    }
    if (better) best = &r;
  }
  return *best;
}

// Units to strip so the utility lands strictly below the target: one more
// than the whole units fitting in the surplus.
inline std::int64_t required_reduction_units(std::int64_t du, std::int64_t eu) {
  if (du < 0 || eu < 1) throw InvariantError("reduction units need du >= 0 and eu >= 1");
  return du / eu + 1;
}

struct EditStep {
  Itemset itemset;
  std::int32_t tid = 0;
  ItemId item = 0;
  EditAction action = EditAction::Delete;
  std::int64_t dq = 0;       // quantity units removed (the full count on delete)
  std::int64_t du = 0;       // utility surplus of the itemset when the edit was chosen
  std::int64_t item_iu = 0;  // victim item's in-transaction utility before the edit
  std::int64_t su_after = 0;
  std::int32_t sup_after = 0;
  std::int32_t lp_after = 0;
};

struct SanitizeReport {
  std::string algo;
  std::int64_t min_util = 0;
  std::int32_t max_per = 0;
  Ratio max_avg = Ratio::of(1);
  Ratio min_sup = Ratio::of(0);
  std::int32_t d_size = 0;
  std::vector<Itemset> order;
  std::vector<EditStep> steps;
  std::vector<std::pair<Itemset, HiddenBy>> hidden;
  std::int64_t removed_utility = 0;
};

struct SanitizeOutcome {
  Dataset sanitized;
  SanitizeReport report;
};

namespace detail {

struct SpiState {
  Sisl sisl;
  Sil sil;
  bool hidden = false;
};

inline void apply_delete(Dataset& w, std::int32_t tid, ItemId item) {
  auto& items = w.transactions[tid - 1].items;
  for (auto it = items.begin(); it != items.end(); ++it) {
    if (it->first == item) {
      items.erase(it);
      return;
    }
  }
  throw InvariantError("delete of absent item " + std::to_string(item) + " in tid " +
                       std::to_string(tid));
}

inline void apply_reduce(Dataset& w, std::int32_t tid, ItemId item, std::int64_t dq) {
  for (auto& [id, qty] : w.transactions[tid - 1].items) {
    if (id == item) {
      if (qty <= dq) {
        throw InvariantError("reduction would zero item " + std::to_string(item) +
                             " in tid " + std::to_string(tid));
      }
      qty -= dq;
      return;
    }
  }
  throw InvariantError("reduce of absent item " + std::to_string(item) + " in tid " +
                       std::to_string(tid));
}

inline void verify_coherence(const Dataset& w, const SpiState& st) {
  Sisl fresh = build_sisl(st.sisl.itemset, w);
  if (!(fresh == st.sisl)) {
    throw InvariantError("itemset summary drifted from recomputation for {" +
                         itemset_to_string(st.sisl.itemset) + "}");
  }
  Sil fresh_sil = build_sil(st.sisl.itemset, w);
  if (!(fresh_sil == st.sil)) {
    throw InvariantError("item summary drifted from recomputation for {" +
                         itemset_to_string(st.sisl.itemset) + "}");
  }
}

inline std::int32_t recomputed_lp(const Sisl& s, std::int32_t d_size) {
  std::vector<std::int32_t> tids;
  tids.reserve(s.tid_utils.size());
  for (const auto& [tid, u] : s.tid_utils) tids.push_back(tid);
  return period_summary_from_tids(std::move(tids), d_size).max_per;
}

}  // namespace detail

inline SanitizeOutcome sanitize(const Dataset& d, const std::vector<Itemset>& sensitive,
                                const Thresholds& thr, VictimPolicy policy) {
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
  rep.algo = policy == VictimPolicy::MaxPeriod ? "mu-map" : "mu-mip";
  rep.min_util = thr.min_util;
  rep.max_per = thr.max_per;
  rep.max_avg = thr.max_avg;
  rep.min_sup = min_support_bound(d.size(), thr.max_avg);
  rep.d_size = d.size();

  std::vector<detail::SpiState> states(sensitive.size());
  for (std::size_t i = 0; i < sensitive.size(); ++i) {
    states[i].sisl = build_sisl(sensitive[i], d);
    if (states[i].sisl.sup == 0) {
      throw ConfigError("sensitive itemset {" + itemset_to_string(sensitive[i]) +
                        "} never occurs in the database");
    }
    states[i].sil = build_sil(sensitive[i], d);
  }

  // Larger itemsets first; among equals the higher-utility ones, then
  // lexicographic order.
  std::sort(states.begin(), states.end(), [](const detail::SpiState& a, const detail::SpiState& b) {
    if (a.sisl.itemset.size() != b.sisl.itemset.size()) {
      return a.sisl.itemset.size() > b.sisl.itemset.size();
    }
    if (a.sisl.su != b.sisl.su) return a.sisl.su > b.sisl.su;
    return a.sisl.itemset < b.sisl.itemset;
  });
  for (const auto& st : states) rep.order.push_back(st.sisl.itemset);

  const Ratio min_sup = rep.min_sup;
  auto condition_holds = [&](const Sisl& s) {
    return s.su - thr.min_util >= 0 && s.lp <= thr.max_per && Ratio::of(s.sup) >= min_sup;
  };
  auto failing_condition = [&](const Sisl& s) {
    if (Ratio::of(s.sup) < min_sup) return HiddenBy::Support;
    if (s.lp > thr.max_per) return HiddenBy::MaxPer;
    if (s.su < thr.min_util) return HiddenBy::Utility;
    throw InvariantError("no terminating condition for {" + itemset_to_string(s.itemset) + "}");
  };
  auto mark_hidden = [&](detail::SpiState& st) {
    st.hidden = true;
    rep.hidden.emplace_back(st.sisl.itemset, failing_condition(st.sisl));
  };

  for (std::size_t k = 0; k < states.size(); ++k) {
    detail::SpiState& cur = states[k];
    while (!cur.hidden) {
      if (!condition_holds(cur.sisl)) {
        mark_hidden(cur);
        break;
      }
      if (cur.sisl.sup == 0) {
        throw InvariantError("cannot hide {" + itemset_to_string(cur.sisl.itemset) +
                             "}: no occurrences left but thresholds still satisfied");
      }
      std::int64_t du = cur.sisl.su - thr.min_util;
      std::int32_t tid = select_victim_transaction(cur.sisl);
      std::vector<SilRow> at_tid;
      for (const SilRow& r : cur.sil) {
        if (r.tid == tid) at_tid.push_back(r);
      }
      SilRow victim = select_victim_item(at_tid, policy);
      std::int64_t eu = external_utility(w.utable, victim.item);

      EditStep step;
      step.itemset = cur.sisl.itemset;
      step.tid = tid;
      step.item = victim.item;
      step.du = du;
      step.item_iu = victim.iu;
      if (victim.iu <= du) {
        step.action = EditAction::Delete;
        step.dq = victim.cnt;
      } else {
        std::int64_t dq = required_reduction_units(du, eu);
        if (dq >= victim.cnt) {
          step.action = EditAction::Delete;
          step.dq = victim.cnt;
        } else {
          step.action = EditAction::Reduce;
          step.dq = dq;
        }
      }

      if (step.action == EditAction::Delete) {
        detail::apply_delete(w, tid, victim.item);
        rep.removed_utility += victim.iu;
        std::int32_t new_mp = period_summary({victim.item}, w).max_per;
        for (detail::SpiState& st : states) {
          if (st.hidden) continue;
          bool member = std::binary_search(st.sisl.itemset.begin(), st.sisl.itemset.end(),
                                           victim.item);
          if (!member) continue;
          auto occ = std::find_if(st.sisl.tid_utils.begin(), st.sisl.tid_utils.end(),
                                  [&](const auto& p) { return p.first == tid; });
          if (occ != st.sisl.tid_utils.end()) {
            st.sisl.su -= occ->second;
            st.sisl.tid_utils.erase(occ);
            st.sisl.sup -= 1;
            st.sisl.lp = detail::recomputed_lp(st.sisl, w.size());
            st.sil.erase(std::remove_if(st.sil.begin(), st.sil.end(),
                                        [&](const SilRow& r) { return r.tid == tid; }),
                         st.sil.end());
          }
          for (SilRow& r : st.sil) {
            if (r.item == victim.item) r.mp = new_mp;
          }
        }
      } else {
        detail::apply_reduce(w, tid, victim.item, step.dq);
        std::int64_t delta = step.dq * eu;
        rep.removed_utility += delta;
        for (detail::SpiState& st : states) {
          if (st.hidden) continue;
          bool member = std::binary_search(st.sisl.itemset.begin(), st.sisl.itemset.end(),
                                           victim.item);
          if (!member) continue;
          auto occ = std::find_if(st.sisl.tid_utils.begin(), st.sisl.tid_utils.end(),
                                  [&](const auto& p) { return p.first == tid; });
          if (occ == st.sisl.tid_utils.end()) continue;
          st.sisl.su -= delta;
          occ->second -= delta;
          for (SilRow& r : st.sil) {
            if (r.tid == tid && r.item == victim.item) {
              r.iu -= delta;
              r.cnt -= step.dq;
            }
          }
        }
      }

      for (const detail::SpiState& st : states) {
        if (!st.hidden) detail::verify_coherence(w, st);
      }

      step.su_after = cur.sisl.su;
      step.sup_after = cur.sisl.sup;
      step.lp_after = cur.sisl.lp;
      rep.steps.push_back(step);

      for (detail::SpiState& st : states) {
        if (!st.hidden && !condition_holds(st.sisl)) mark_hidden(st);
      }
    }
  }
  return out;
}

// Report serialization: line-oriented JSON, one object per line. The header
// echoes the configuration, each edit is one line, each hidden itemset is
// one line, and a summary closes the log.
inline std::string write_report_jsonl(const SanitizeReport& rep) {
  using nlohmann::ordered_json;
  std::string out;
  ordered_json header;
  header["type"] = "header";
  header["algo"] = rep.algo;
  header["minutil"] = rep.min_util;
  header["maxper"] = rep.max_per;
  header["maxavg"] = rep.max_avg.to_string();
  header["minsup"] = rep.min_sup.to_string();
  header["transactions"] = rep.d_size;
  header["order"] = rep.order;
  out += header.dump();
  out += '\n';
  for (const EditStep& s : rep.steps) {
    ordered_json j;
    j["type"] = "edit";
    j["itemset"] = s.itemset;
    j["tid"] = s.tid;
    j["item"] = s.item;
    j["action"] = to_string(s.action);
    j["dq"] = s.dq;
    j["du"] = s.du;
    j["item_iu"] = s.item_iu;
    j["su_after"] = s.su_after;
    j["sup_after"] = s.sup_after;
    j["lp_after"] = s.lp_after;
    out += j.dump();
    out += '\n';
  }
  for (const auto& [itemset, by] : rep.hidden) {
    ordered_json j;
    j["type"] = "hidden";
    j["itemset"] = itemset;
    j["by"] = to_string(by);
    out += j.dump();
    out += '\n';
  }
  ordered_json summary;
  summary["type"] = "summary";
  summary["edits"] = rep.steps.size();
  summary["hidden"] = rep.hidden.size();
  summary["removed_utility"] = rep.removed_utility;
  out += summary.dump();
  out += '\n';
  return out;
}

inline SanitizeReport parse_report_jsonl(const std::string& text) {
  using nlohmann::json;
  SanitizeReport rep;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string line = text.substr(start, nl == std::string::npos ? nl : nl - start);
    start = nl == std::string::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError("report line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string type = j.value("type", "");
    try {
      if (type == "header") {
        rep.algo = j.at("algo").get<std::string>();
        rep.min_util = j.at("minutil").get<std::int64_t>();
        rep.max_per = j.at("maxper").get<std::int32_t>();
        rep.max_avg = Ratio::parse(j.at("maxavg").get<std::string>());
        rep.min_sup = Ratio::parse(j.at("minsup").get<std::string>());
        rep.d_size = j.at("transactions").get<std::int32_t>();
        rep.order = j.at("order").get<std::vector<Itemset>>();
      } else if (type == "edit") {
        EditStep s;
        s.itemset = j.at("itemset").get<Itemset>();
        s.tid = j.at("tid").get<std::int32_t>();
        s.item = j.at("item").get<ItemId>();
        std::string action = j.at("action").get<std::string>();
        if (action != "delete" && action != "reduce") {
          throw ParseError("report line " + std::to_string(line_no) + ": bad action");
        }
        s.action = action == "delete" ? EditAction::Delete : EditAction::Reduce;
        s.dq = j.at("dq").get<std::int64_t>();
        s.du = j.at("du").get<std::int64_t>();
        s.item_iu = j.at("item_iu").get<std::int64_t>();
        s.su_after = j.at("su_after").get<std::int64_t>();
        s.sup_after = j.at("sup_after").get<std::int32_t>();
        s.lp_after = j.at("lp_after").get<std::int32_t>();
        rep.steps.push_back(std::move(s));
      } else if (type == "hidden") {
        std::string by = j.at("by").get<std::string>();
        HiddenBy h;
        if (by == "support") h = HiddenBy::Support;
        else if (by == "maxper") h = HiddenBy::MaxPer;
        else if (by == "utility") h = HiddenBy::Utility;
        else throw ParseError("report line " + std::to_string(line_no) + ": bad condition");
        rep.hidden.emplace_back(j.at("itemset").get<Itemset>(), h);
      } else if (type == "summary") {
        rep.removed_utility = j.at("removed_utility").get<std::int64_t>();
      } else {
        throw ParseError("report line " + std::to_string(line_no) + ": unknown type '" +
                         type + "'");
      }
    } catch (const json::exception& e) {
      throw ParseError("report line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rep;
}

// Re-applies a report's edits to the database it was produced from. The
// result must equal the sanitized database the report came with; mismatched
// quantities mean the report and database drifted apart.
inline Dataset replay_report(const Dataset& original, const SanitizeReport& rep) {
  Dataset w = original;
  for (const EditStep& s : rep.steps) {
    if (s.tid < 1 || s.tid > w.size()) {
      throw InvariantError("replay: tid " + std::to_string(s.tid) + " out of range");
    }
    std::int64_t qty = w.transactions[s.tid - 1].quantity(s.item);
    if (s.action == EditAction::Delete) {
      if (qty != s.dq) {
        throw InvariantError("replay: delete of item " + std::to_string(s.item) +
                             " in tid " + std::to_string(s.tid) + " expected count " +
                             std::to_string(s.dq) + ", found " + std::to_string(qty));
      }
      detail::apply_delete(w, s.tid, s.item);
    } else {
      if (qty <= s.dq) {
        throw InvariantError("replay: reduce of item " + std::to_string(s.item) +
                             " in tid " + std::to_string(s.tid) + " by " +
                             std::to_string(s.dq) + " impossible with count " +
                             std::to_string(qty));
      }
      detail::apply_reduce(w, s.tid, s.item, s.dq);
    }
  }
  return w;
}

}  // namespace phide
