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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "phide/core.hpp"

// Sanitization quality metrics, comparing the itemsets minable before (PI)
// and after (PI') against the sensitive set (SPI):
//
//   hiding failures     HF = SPI  intersect PI'   (should be empty),
//   missing cost        MC = (PI - SPI) - PI'     (legitimate itemsets lost),
//   artificial cost     AC = PI' - PI             (itemsets minted by edits),
//
// plus three similarity ratios:
//
//   IUS = sum of PI' utilities / sum of PI utilities (may exceed 1),
//   DUS = total utility after / total utility before,
//   DSS = cosine similarity of the presence-pattern frequency vectors.
//
// Percentages use |SPI|, |PI - SPI| and |PI| as denominators and are 0 when
// the denominator is 0. IUS/DUS/DSS raise a config error on an empty
// denominator instead of guessing.

namespace phide {

struct SideEffects {
  std::vector<Itemset> hf;
  std::vector<Itemset> mc;
  std::vector<Itemset> ac;
};

inline std::vector<Itemset> itemsets_of(const std::vector<PhuiRecord>& records) {
  std::vector<Itemset> out;
  out.reserve(records.size());
  for (const PhuiRecord& r : records) out.push_back(r.itemset);
  return out;
}

inline SideEffects side_effect_sets(const std::vector<Itemset>& pi,
                                    const std::vector<Itemset>& spi,
                                    const std::vector<Itemset>& pi_prime) {
  std::set<Itemset> pi_set(pi.begin(), pi.end());
  std::set<Itemset> spi_set(spi.begin(), spi.end());
  std::set<Itemset> prime_set(pi_prime.begin(), pi_prime.end());
  SideEffects out;
  for (const Itemset& x : spi_set) {
    if (prime_set.count(x)) out.hf.push_back(x);
  }
  for (const Itemset& x : pi_set) {
    if (!spi_set.count(x) && !prime_set.count(x)) out.mc.push_back(x);
  }
  for (const Itemset& x : prime_set) {
    if (!pi_set.count(x)) out.ac.push_back(x);
  }
  return out;
}

struct MetricsReport {
  SideEffects sets;
  std::int64_t hf_den = 0;  // |SPI|
  std::int64_t mc_den = 0;  // |PI - SPI|
  std::int64_t ac_den = 0;  // |PI|
  double hf_pct = 0.0;
  double mc_pct = 0.0;
  double ac_pct = 0.0;
  std::int64_t ius_num = 0;  // sum of PI' utilities
  std::int64_t ius_den = 0;  // sum of PI utilities
  std::int64_t dus_num = 0;  // total utility after
  std::int64_t dus_den = 0;  // total utility before
  double ius = 0.0;
  double dus = 0.0;
  double dss = 0.0;
};

inline double itemset_utility_similarity(const std::vector<PhuiRecord>& pi,
                                         const std::vector<PhuiRecord>& pi_prime) {
  std::int64_t den = 0, num = 0;
  for (const PhuiRecord& r : pi) den += r.utility;
  for (const PhuiRecord& r : pi_prime) num += r.utility;
  if (den == 0) {
    throw ConfigError("itemset utility similarity undefined: nothing minable before");
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

inline double database_utility_similarity(const Dataset& before, const Dataset& after) {
  std::int64_t den = total_utility(before);
  if (den == 0) {
    throw ConfigError("database utility similarity undefined: empty original database");
  }
  return static_cast<double>(total_utility(after)) / static_cast<double>(den);
}

namespace detail {

inline std::map<Itemset, std::int64_t> pattern_frequencies(const Dataset& d) {
  std::map<Itemset, std::int64_t> freq;
  for (const Transaction& t : d.transactions) {
    Itemset pattern;
    pattern.reserve(t.items.size());
    for (const auto& [id, q] : t.items) pattern.push_back(id);
    freq[pattern] += 1;
  }
  return freq;
}

}  // namespace detail

// Cosine similarity of the presence-pattern frequency vectors (quantities
// ignored, the empty pattern counts). Equal databases give exactly 1.
inline double database_structure_similarity(const Dataset& before, const Dataset& after) {
  if (before.transactions.empty() || after.transactions.empty()) {
    throw ConfigError("database structure similarity undefined: empty database");
  }
  auto f = detail::pattern_frequencies(before);
  auto g = detail::pattern_frequencies(after);
  if (f == g) return 1.0;
  std::int64_t dot = 0, f2 = 0, g2 = 0;
  for (const auto& [p, c] : f) {
    f2 += c * c;
    auto it = g.find(p);
    if (it != g.end()) dot += c * it->second;
  }
  for (const auto& [p, c] : g) g2 += c * c;
  double value = static_cast<double>(dot) /
                 (std::sqrt(static_cast<double>(f2)) * std::sqrt(static_cast<double>(g2)));
  if (value < 0.0) value = 0.0;
  if (value > 1.0) value = 1.0;
  return value;
}

inline MetricsReport compute_metrics(const std::vector<PhuiRecord>& pi,
                                     const std::vector<Itemset>& spi,
                                     const std::vector<PhuiRecord>& pi_prime,
                                     const Dataset& before, const Dataset& after) {
  MetricsReport m;
  m.sets = side_effect_sets(itemsets_of(pi), spi, itemsets_of(pi_prime));
  std::set<Itemset> spi_set(spi.begin(), spi.end());
  std::int64_t pi_minus_spi = 0;
  for (const PhuiRecord& r : pi) {
    if (!spi_set.count(r.itemset)) ++pi_minus_spi;
  }
  m.hf_den = static_cast<std::int64_t>(spi_set.size());
  m.mc_den = pi_minus_spi;
  m.ac_den = static_cast<std::int64_t>(pi.size());
  auto pct = [](std::int64_t count, std::int64_t den) {
    return den == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(den);
  };
  m.hf_pct = pct(static_cast<std::int64_t>(m.sets.hf.size()), m.hf_den);
  m.mc_pct = pct(static_cast<std::int64_t>(m.sets.mc.size()), m.mc_den);
  m.ac_pct = pct(static_cast<std::int64_t>(m.sets.ac.size()), m.ac_den);
  for (const PhuiRecord& r : pi) m.ius_den += r.utility;
  for (const PhuiRecord& r : pi_prime) m.ius_num += r.utility;
  m.ius = itemset_utility_similarity(pi, pi_prime);
  m.dus_den = total_utility(before);
  m.dus_num = total_utility(after);
  m.dus = database_utility_similarity(before, after);
  m.dss = database_structure_similarity(before, after);
  return m;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace detail

inline std::string metrics_to_json(const MetricsReport& m) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["hf_pct"] = m.hf_pct;
  j["mc_pct"] = m.mc_pct;
  j["ac_pct"] = m.ac_pct;
  j["ius"] = m.ius;
  j["dus"] = m.dus;
  j["dss"] = m.dss;
  j["denominators"]["hf"] = m.hf_den;
  j["denominators"]["mc"] = m.mc_den;
  j["denominators"]["ac"] = m.ac_den;
  j["denominators"]["ius_utility"] = m.ius_den;
  j["denominators"]["dus_utility"] = m.dus_den;
  j["numerators"]["ius_utility"] = m.ius_num;
  j["numerators"]["dus_utility"] = m.dus_num;
  j["sets"]["hf"] = m.sets.hf;
  j["sets"]["mc"] = m.sets.mc;
  j["sets"]["ac"] = m.sets.ac;
  j["conventions"]["hf_pct"] = "100 * |HF| / |SPI|, 0 when |SPI| = 0";
  j["conventions"]["mc_pct"] = "100 * |MC| / |PI - SPI|, 0 when the difference is empty";
  j["conventions"]["ac_pct"] = "100 * |AC| / |PI|, 0 when |PI| = 0";
  j["conventions"]["ius"] = "sum of utilities of itemsets minable after / before; may exceed 1";
  j["conventions"]["dus"] = "total database utility after / before";
  j["conventions"]["dss"] = "cosine of presence-pattern frequency vectors, in [0, 1]";
  return j.dump(2) + "\n";
}

// One header line and one data line, fixed column order.
inline std::string metrics_to_csv(const MetricsReport& m) {
  std::string out =
      "hf_pct,mc_pct,ac_pct,ius,dus,dss,hf_den,mc_den,ac_den,ius_den,dus_den\n";
  out += detail::format_double(m.hf_pct) + "," + detail::format_double(m.mc_pct) + "," +
         detail::format_double(m.ac_pct) + "," + detail::format_double(m.ius) + "," +
         detail::format_double(m.dus) + "," + detail::format_double(m.dss) + "," +
         std::to_string(m.hf_den) + "," + std::to_string(m.mc_den) + "," +
         std::to_string(m.ac_den) + "," + std::to_string(m.ius_den) + "," +
         std::to_string(m.dus_den) + "\n";
  return out;
}

}  // namespace phide
