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

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "phide/core.hpp"
#include "phide/rng.hpp"

// Dataset text formats and the synthetic generator.
//
// QUANTITY: one transaction per line as "item:qty" pairs separated by spaces,
// a blank line being an empty transaction, plus a separate utility table text
// with "item utility" lines.
//
// SPMF: the utility-list format "i1 i2 ... ik:TU:u1 u2 ... uk". External
// utilities are all 1 and the per-item utility is stored as the quantity, so
// every downstream utility computation is unchanged. An empty transaction is
// ":0:".

namespace phide {

enum class FormatKind { Quantity, Spmf };

inline FormatKind format_from_string(const std::string& s) {
  if (s == "quantity") return FormatKind::Quantity;
  if (s == "spmf") return FormatKind::Spmf;
  throw ConfigError("unknown format '" + s + "' (expected quantity or spmf)");
}

namespace detail {

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  for (std::string& l : lines) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
  }
  return lines;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::int64_t parse_int(const std::string& tok, std::size_t line_no,
                              const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": invalid " + what +
                     " '" + tok + "'");
  }
  return value;
}

inline bool blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

inline void sort_and_check_items(std::vector<std::pair<ItemId, std::int64_t>>& items,
                                 std::size_t line_no) {
  std::sort(items.begin(), items.end());
  for (std::size_t i = 1; i < items.size(); ++i) {
    if (items[i - 1].first == items[i].first) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate item " +
                       std::to_string(items[i].first));
    }
  }
}

}  // namespace detail

inline UtilityTable parse_utility_table(const std::string& text) {
  UtilityTable ut;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::blank(lines[i])) continue;
    auto toks = detail::split_ws(lines[i]);
    if (toks.size() != 2) {
      throw ParseError("line " + std::to_string(i + 1) +
                       ": expected 'item utility'");
    }
    std::int64_t id = detail::parse_int(toks[0], i + 1, "item id");
    std::int64_t eu = detail::parse_int(toks[1], i + 1, "utility");
    if (id < 0) throw ParseError("line " + std::to_string(i + 1) + ": negative item id");
    if (eu < 1) throw ParseError("line " + std::to_string(i + 1) + ": utility must be >= 1");
    if (!ut.emplace(static_cast<ItemId>(id), eu).second) {
      throw ParseError("line " + std::to_string(i + 1) + ": duplicate utility entry for item " +
                       toks[0]);
    }
  }
  return ut;
}

inline Dataset parse_quantity_format(const std::string& transactions_text,
                                     const std::string& utable_text) {
  Dataset d;
  d.utable = parse_utility_table(utable_text);
  auto lines = detail::split_lines(transactions_text);
  if (lines.empty()) throw ParseError("empty database");
  d.transactions.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Transaction t;
    for (const std::string& tok : detail::split_ws(lines[i])) {
      std::size_t colon = tok.find(':');
      if (colon == std::string::npos || tok.find(':', colon + 1) != std::string::npos) {
        throw ParseError("line " + std::to_string(i + 1) + ": expected 'item:qty', got '" +
                         tok + "'");
      }
      std::int64_t id = detail::parse_int(tok.substr(0, colon), i + 1, "item id");
      std::int64_t qty = detail::parse_int(tok.substr(colon + 1), i + 1, "quantity");
      if (id < 0) throw ParseError("line " + std::to_string(i + 1) + ": negative item id");
      if (qty < 1) throw ParseError("line " + std::to_string(i + 1) + ": quantity must be >= 1");
      t.items.emplace_back(static_cast<ItemId>(id), qty);
    }
    detail::sort_and_check_items(t.items, i + 1);
    for (const auto& [id, q] : t.items) {
      if (!d.utable.count(id)) {
        throw ParseError("line " + std::to_string(i + 1) + ": item " + std::to_string(id) +
                         " missing from utility table");
      }
    }
    d.transactions.push_back(std::move(t));
  }
  return d;
}

inline Dataset parse_spmf_format(const std::string& text) {
  Dataset d;
  auto lines = detail::split_lines(text);
  std::size_t parsed = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::blank(lines[i])) continue;
    const std::string& line = lines[i];
    std::size_t c1 = line.find(':');
    std::size_t c2 = (c1 == std::string::npos) ? std::string::npos : line.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        line.find(':', c2 + 1) != std::string::npos) {
      throw ParseError("line " + std::to_string(i + 1) +
                       ": expected 'items:TU:utilities'");
    }
    auto item_toks = detail::split_ws(line.substr(0, c1));
    std::int64_t tu = detail::parse_int(line.substr(c1 + 1, c2 - c1 - 1), i + 1,
                                        "transaction utility");
    auto util_toks = detail::split_ws(line.substr(c2 + 1));
    if (item_toks.size() != util_toks.size()) {
      throw ParseError("line " + std::to_string(i + 1) + ": " +
                       std::to_string(item_toks.size()) + " items but " +
                       std::to_string(util_toks.size()) + " utilities");
    }
    Transaction t;
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < item_toks.size(); ++k) {
      std::int64_t id = detail::parse_int(item_toks[k], i + 1, "item id");
      std::int64_t u = detail::parse_int(util_toks[k], i + 1, "utility");
      if (id < 0) throw ParseError("line " + std::to_string(i + 1) + ": negative item id");
      if (u < 1) throw ParseError("line " + std::to_string(i + 1) + ": utility must be >= 1");
      sum += u;
      t.items.emplace_back(static_cast<ItemId>(id), u);
      d.utable[static_cast<ItemId>(id)] = 1;
    }
    if (sum != tu) {
      throw ParseError("line " + std::to_string(i + 1) + ": transaction utility " +
                       std::to_string(tu) + " does not match item sum " +
                       std::to_string(sum));
    }
    detail::sort_and_check_items(t.items, i + 1);
    d.transactions.push_back(std::move(t));
    ++parsed;
  }
  if (parsed == 0) throw ParseError("empty database");
  return d;
}

inline std::string write_dataset(const Dataset& d, FormatKind kind) {
  std::string out;
  for (const Transaction& t : d.transactions) {
    if (kind == FormatKind::Quantity) {
      for (std::size_t i = 0; i < t.items.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(t.items[i].first);
        out += ':';
        out += std::to_string(t.items[i].second);
      }
    } else {
      std::int64_t tu = 0;
      for (std::size_t i = 0; i < t.items.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(t.items[i].first);
        tu += item_utility(t.items[i].first, t.items[i].second, d.utable);
      }
      out += ':';
      out += std::to_string(tu);
      out += ':';
      for (std::size_t i = 0; i < t.items.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(item_utility(t.items[i].first, t.items[i].second, d.utable));
      }
    }
    out += '\n';
  }
  return out;
}

inline std::string write_utility_table(const Dataset& d) {
  std::string out;
  for (const auto& [id, eu] : d.utable) {
    out += std::to_string(id);
    out += ' ';
    out += std::to_string(eu);
    out += '\n';
  }
  return out;
}

// Round half up on exact integers so the text is identical on every platform.
inline std::string format_ratio_2dp(const Ratio& r) {
  std::int64_t scaled = (200 * r.num + r.den) / (2 * r.den);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%02lld", static_cast<long long>(scaled / 100),
                static_cast<long long>(scaled % 100));
  return buf;
}

inline std::string write_phui_lines(const std::vector<PhuiRecord>& records) {
  std::string out;
  for (const PhuiRecord& r : records) {
    out += itemset_to_string(r.itemset);
    out += " #UTIL: " + std::to_string(r.utility);
    out += " #SUP: " + std::to_string(r.period.support);
    out += " #MINPER: " + std::to_string(r.period.min_per);
    out += " #MAXPER: " + std::to_string(r.period.max_per);
    out += " #AVGPER: " + format_ratio_2dp(r.period.avg_per);
    out += '\n';
  }
  return out;
}

// Itemset lists (sensitive files and the like): one itemset per line, items
// separated by spaces; anything after '#' is ignored so mined PHUI listings
// can be fed back in directly. Blank lines are skipped.
inline std::vector<Itemset> parse_itemset_lines(const std::string& text) {
  std::vector<Itemset> out;
  auto lines = detail::split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (detail::blank(line)) continue;
    Itemset x;
    for (const std::string& tok : detail::split_ws(line)) {
      std::int64_t id = detail::parse_int(tok, i + 1, "item id");
      if (id < 0) throw ParseError("line " + std::to_string(i + 1) + ": negative item id");
      x.push_back(static_cast<ItemId>(id));
    }
    std::sort(x.begin(), x.end());
    for (std::size_t k = 1; k < x.size(); ++k) {
      if (x[k - 1] == x[k]) {
        throw ParseError("line " + std::to_string(i + 1) + ": duplicate item " +
                         std::to_string(x[k]));
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write file: " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ConfigError("short write: " + path);
}

inline Dataset load_dataset(const std::string& input_path, FormatKind kind,
                            const std::string& utable_path) {
  if (kind == FormatKind::Quantity) {
    if (utable_path.empty()) {
      throw ConfigError("quantity format requires --utable");
    }
    return parse_quantity_format(read_file(input_path), read_file(utable_path));
  }
  return parse_spmf_format(read_file(input_path));
}

struct SyntheticParams {
  std::uint64_t seed = 1;
  std::int32_t n_transactions = 1;
  std::int32_t n_items = 1;
  std::int32_t avg_len = 1;
  std::int64_t max_qty = 1;
  std::int64_t max_eu = 1;
  double periodicity_bias = 0.0;
  std::int32_t stride = 2;
};

// Random sparse dataset. When periodicity_bias > 0, item 1 is reserved as a
// planted periodic item: it appears only in every stride-th transaction, with
// the given probability, so at bias 1.0 its max period is bounded by the
// stride. The remaining items fill transactions uniformly.
inline Dataset generate_synthetic(const SyntheticParams& p) {
  if (p.n_transactions < 1) throw ConfigError("transactions must be >= 1");
  if (p.n_items < 1) throw ConfigError("items must be >= 1");
  if (p.avg_len < 1 || p.avg_len > p.n_items) {
    throw ConfigError("avg transaction length must be in [1, items]");
  }
  if (p.max_qty < 1) throw ConfigError("max quantity must be >= 1");
  if (p.max_eu < 1) throw ConfigError("max external utility must be >= 1");
  if (p.periodicity_bias < 0.0 || p.periodicity_bias > 1.0) {
    throw ConfigError("periodicity bias must be in [0, 1]");
  }
  if (p.stride < 1) throw ConfigError("stride must be >= 1");

  std::mt19937_64 rng(p.seed);
  Dataset d;
  for (ItemId id = 1; id <= p.n_items; ++id) {
    d.utable[id] = 1 + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(p.max_eu)));
  }
  bool reserve_planted = p.periodicity_bias > 0.0 && p.n_items >= 2;
  std::vector<ItemId> pool;
  for (ItemId id = reserve_planted ? 2 : 1; id <= p.n_items; ++id) pool.push_back(id);

  for (std::int32_t tid = 1; tid <= p.n_transactions; ++tid) {
    std::set<ItemId> chosen;
    if (p.periodicity_bias > 0.0 && (tid - 1) % p.stride == 0 &&
        uniform_unit(rng) < p.periodicity_bias) {
      chosen.insert(1);
    }
    std::size_t len = 1 + static_cast<std::size_t>(
        uniform_below(rng, static_cast<std::uint64_t>(2 * p.avg_len - 1)));
    if (len > pool.size()) len = pool.size();
    std::vector<ItemId> deck = pool;
    shuffle_in_place(deck, rng);
    for (std::size_t i = 0; i < len; ++i) chosen.insert(deck[i]);

    Transaction t;
    for (ItemId id : chosen) {
      std::int64_t qty = 1 + static_cast<std::int64_t>(
          uniform_below(rng, static_cast<std::uint64_t>(p.max_qty)));
      t.items.emplace_back(id, qty);
    }
    d.transactions.push_back(std::move(t));
  }
  return d;
}

}  // namespace phide
