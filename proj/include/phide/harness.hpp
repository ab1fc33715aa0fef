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
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "phide/baselines.hpp"
#include "phide/core.hpp"
#include "phide/io.hpp"
#include "phide/metrics.hpp"
#include "phide/miner.hpp"
#include "phide/rng.hpp"
#include "phide/sanitizer.hpp"

// End-to-end orchestration: pick sensitive itemsets from the mined list,
// sanitize, re-mine, score. Identical (dataset bytes, config) produce
// byte-identical artifacts; wall-clock timings go to a separate file that is
// exempt from that guarantee.

namespace phide {

enum class SelectionMode { Random, Incremental };

inline SelectionMode selection_mode_from_string(const std::string& s) {
  if (s == "random") return SelectionMode::Random;
  if (s == "incremental") return SelectionMode::Incremental;
  throw ConfigError("unknown mode '" + s + "' (expected random or incremental)");
}

inline const char* to_string(SelectionMode m) {
  return m == SelectionMode::Random ? "random" : "incremental";
}

enum class Algo { MuMap, MuMip, Smau, Smiu, Smse };

inline Algo algo_from_string(const std::string& s) {
  if (s == "mu-map") return Algo::MuMap;
  if (s == "mu-mip") return Algo::MuMip;
  if (s == "smau") return Algo::Smau;
  if (s == "smiu") return Algo::Smiu;
  if (s == "smse") return Algo::Smse;
  throw ConfigError("unknown algorithm '" + s +
                    "' (expected mu-map, mu-mip, smau, smiu or smse)");
}

inline const char* to_string(Algo a) {
  switch (a) {
    case Algo::MuMap: return "mu-map";
    case Algo::MuMip: return "mu-mip";
    case Algo::Smau: return "smau";
    case Algo::Smiu: return "smiu";
    default: return "smse";
  }
}

// Uniform sample of k itemsets without replacement, as the first k entries
// of a seeded permutation. Incremental mode keys the permutation on the seed
// alone, so a larger k extends the smaller selection instead of reshuffling.
inline std::vector<Itemset> select_sensitive_count(const std::vector<PhuiRecord>& phuis,
                                                   std::size_t k, std::uint64_t seed,
                                                   SelectionMode mode) {
  if (phuis.empty()) {
    throw ConfigError("cannot select sensitive itemsets: nothing was mined");
  }
  if (k < 1 || k > phuis.size()) {
    throw ConfigError("sensitive itemset count must be in [1, " +
                      std::to_string(phuis.size()) + "], got " + std::to_string(k));
  }
  std::mt19937_64 rng(mode == SelectionMode::Incremental
                          ? seed
                          : splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(k)));
  std::vector<std::size_t> idx(phuis.size());
  std::iota(idx.begin(), idx.end(), 0);
  shuffle_in_place(idx, rng);
  std::vector<Itemset> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(phuis[idx[i]].itemset);
  return out;
}

// sep is the fraction of all mined itemsets to mark sensitive, rounded to
// the nearest count with a floor of one.
inline std::vector<Itemset> select_sensitive(const std::vector<PhuiRecord>& phuis, double sep,
                                             std::uint64_t seed, SelectionMode mode) {
  if (!(sep > 0.0) || sep > 1.0) throw ConfigError("sep must be in (0, 1]");
  if (phuis.empty()) {
    throw ConfigError("cannot select sensitive itemsets: nothing was mined");
  }
  auto k = static_cast<std::size_t>(
      std::llround(sep * static_cast<double>(phuis.size())));
  if (k < 1) k = 1;
  if (k > phuis.size()) k = phuis.size();
  return select_sensitive_count(phuis, k, seed, mode);
}

struct PipelineConfig {
  Thresholds thr;
  double sep = 0.05;
  std::uint64_t seed = 1;
  Algo algo = Algo::MuMap;
  SelectionMode mode = SelectionMode::Random;
  // Explicit sensitive list; bypasses selection entirely (may be empty).
  std::optional<std::vector<Itemset>> pinned_sensitive;
  // Exact selection count; overrides sep when set.
  std::optional<std::size_t> forced_count;
  // Degenerate runs (nothing minable) score as identity instead of erroring;
  // the sweep driver uses this so such rows stay comparable.
  bool empty_ok = false;
};

struct PipelineTimings {
  double mine_ms = 0.0;
  double sanitize_ms = 0.0;
  double remine_ms = 0.0;
};

struct PipelineResult {
  std::vector<PhuiRecord> before;
  std::vector<PhuiRecord> after;
  std::vector<Itemset> sensitive;
  SanitizeOutcome outcome;
  MetricsReport metrics;
  PipelineTimings timings;
};

namespace detail {

class StopWatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

inline PipelineResult run_pipeline(const Dataset& d, const PipelineConfig& cfg) {
  cfg.thr.validate();
  PipelineResult r;

  detail::StopWatch mine_watch;
  r.before = mine_phuis(d, cfg.thr);
  r.timings.mine_ms = mine_watch.ms();

  if (cfg.pinned_sensitive) {
    r.sensitive = *cfg.pinned_sensitive;
    for (const Itemset& x : r.sensitive) validate_itemset(x);
  } else if (r.before.empty() && cfg.empty_ok) {
    r.sensitive = {};
  } else if (cfg.forced_count) {
    r.sensitive = select_sensitive_count(r.before, *cfg.forced_count, cfg.seed, cfg.mode);
  } else {
    r.sensitive = select_sensitive(r.before, cfg.sep, cfg.seed, cfg.mode);
  }

  detail::StopWatch sanitize_watch;
  switch (cfg.algo) {
    case Algo::MuMap:
      r.outcome = sanitize(d, r.sensitive, cfg.thr, VictimPolicy::MaxPeriod);
      break;
    case Algo::MuMip:
      r.outcome = sanitize(d, r.sensitive, cfg.thr, VictimPolicy::MinPeriod);
      break;
    default: {
      std::set<Itemset> spi_set(r.sensitive.begin(), r.sensitive.end());
      std::vector<Itemset> non_sensitive;
      for (const PhuiRecord& rec : r.before) {
        if (!spi_set.count(rec.itemset)) non_sensitive.push_back(rec.itemset);
      }
      BaselineVariant v = cfg.algo == Algo::Smau   ? BaselineVariant::Smau
                          : cfg.algo == Algo::Smiu ? BaselineVariant::Smiu
                                                   : BaselineVariant::Smse;
      r.outcome = sanitize_baseline(d, r.sensitive, cfg.thr, non_sensitive, v);
      break;
    }
  }
  r.timings.sanitize_ms = sanitize_watch.ms();

  detail::StopWatch remine_watch;
  r.after = mine_phuis(r.outcome.sanitized, cfg.thr);
  r.timings.remine_ms = remine_watch.ms();

  if (r.before.empty() && r.sensitive.empty()) {
    // Nothing minable and nothing to hide: identity scores by convention.
    r.metrics = MetricsReport{};
    r.metrics.ius = 1.0;
    r.metrics.dus = d.transactions.empty() ? 1.0 : database_utility_similarity(d, r.outcome.sanitized);
    r.metrics.dss = d.transactions.empty() ? 1.0 : database_structure_similarity(d, r.outcome.sanitized);
    r.metrics.dus_den = total_utility(d);
    r.metrics.dus_num = total_utility(r.outcome.sanitized);
  } else {
    r.metrics = compute_metrics(r.before, r.sensitive, r.after, d, r.outcome.sanitized);
  }

  if ((cfg.algo == Algo::MuMap || cfg.algo == Algo::MuMip) && !r.metrics.sets.hf.empty()) {
    std::string failed;
    for (const Itemset& x : r.metrics.sets.hf) {
      if (!failed.empty()) failed += "; ";
      failed += "{" + itemset_to_string(x) + "}";
    }
    throw InvariantError("hiding failure: still minable after sanitization: " + failed);
  }
  return r;
}

inline std::string write_itemset_lines(const std::vector<Itemset>& sets) {
  std::string out;
  for (const Itemset& x : sets) {
    out += itemset_to_string(x);
    out += '\n';
  }
  return out;
}

inline nlohmann::ordered_json thresholds_to_json(const Thresholds& thr) {
  nlohmann::ordered_json j;
  j["minutil"] = thr.min_util;
  j["minper"] = thr.min_per;
  j["maxper"] = thr.max_per;
  j["minavg"] = thr.min_avg.to_string();
  j["maxavg"] = thr.max_avg.to_string();
  return j;
}

// Writes every artifact of a pipeline run into dir and returns the paths.
// Everything except timings.csv is a pure function of (dataset, config).
inline std::vector<std::string> write_pipeline_artifacts(const std::string& dir,
                                                         const PipelineConfig& cfg,
                                                         const PipelineResult& r,
                                                         FormatKind kind) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
  std::vector<std::string> paths;
  auto emit = [&](const std::string& name, const std::string& text) {
    std::string path = (fs::path(dir) / name).string();
    write_file(path, text);
    paths.push_back(path);
  };

  nlohmann::ordered_json config;
  config["algo"] = to_string(cfg.algo);
  config["mode"] = to_string(cfg.mode);
  config["sep"] = cfg.sep;
  config["seed"] = cfg.seed;
  config["thresholds"] = thresholds_to_json(cfg.thr);
  config["format"] = kind == FormatKind::Quantity ? "quantity" : "spmf";
  config["pinned_sensitive"] = cfg.pinned_sensitive.has_value();
  config["sensitive_count"] = r.sensitive.size();
  config["conventions"]["sep"] =
      "fraction of all mined itemsets, rounded to the nearest count, floor one";
  config["conventions"]["selection"] =
      "seeded permutation prefix; incremental mode reuses the permutation across sep values";
  emit("config.json", config.dump(2) + "\n");

  emit("phuis_before.txt", write_phui_lines(r.before));
  emit("phuis_after.txt", write_phui_lines(r.after));
  emit("sensitive.txt", write_itemset_lines(r.sensitive));
  emit("sanitized.txt", write_dataset(r.outcome.sanitized, kind));
  if (kind == FormatKind::Quantity) {
    emit("sanitized.utable", write_utility_table(r.outcome.sanitized));
  }
  emit("report.jsonl", write_report_jsonl(r.outcome.report));
  emit("metrics.json", metrics_to_json(r.metrics));
  emit("metrics.csv", metrics_to_csv(r.metrics));

  char timing[160];
  std::snprintf(timing, sizeof(timing), "mine_ms,sanitize_ms,remine_ms\n%.3f,%.3f,%.3f\n",
                r.timings.mine_ms, r.timings.sanitize_ms, r.timings.remine_ms);
  emit("timings.csv", timing);
  return paths;
}

enum class SweepAxis { MinUtil, Sep, MaxPer, Transactions, SensitiveCount };

inline SweepAxis sweep_axis_from_string(const std::string& s) {
  if (s == "minutil") return SweepAxis::MinUtil;
  if (s == "sep") return SweepAxis::Sep;
  if (s == "maxper") return SweepAxis::MaxPer;
  if (s == "transactions") return SweepAxis::Transactions;
  if (s == "spis") return SweepAxis::SensitiveCount;
  throw ConfigError("unknown sweep axis '" + s +
                    "' (expected minutil, sep, maxper, transactions or spis)");
}

inline const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::MinUtil: return "minutil";
    case SweepAxis::Sep: return "sep";
    case SweepAxis::MaxPer: return "maxper";
    case SweepAxis::Transactions: return "transactions";
    default: return "spis";
  }
}

namespace detail {

inline std::int64_t parse_sweep_int(const std::string& value, const char* what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(std::string("invalid ") + what + " '" + value + "'");
  }
  return v;
}

inline Dataset prefix_dataset(const Dataset& d, std::size_t n) {
  if (n < 1 || n > d.transactions.size()) {
    throw ConfigError("transaction prefix must be in [1, " +
                      std::to_string(d.transactions.size()) + "], got " + std::to_string(n));
  }
  Dataset out;
  out.utable = d.utable;
  out.transactions.assign(d.transactions.begin(),
                          d.transactions.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

inline std::string csv_safe(std::string s) {
  for (char& c : s) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace detail

// One pipeline run per (value, algorithm); failures become rows, not
// aborts. Timing columns vary run to run, everything else is deterministic.
inline std::string sweep(const Dataset& d, const PipelineConfig& base, SweepAxis axis,
                         const std::vector<std::string>& values,
                         const std::vector<Algo>& algos) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (algos.empty()) throw ConfigError("sweep needs at least one algorithm");
  std::string out =
      "axis,value,algo,status,spi_count,edits,mine_ms,sanitize_ms,remine_ms,"
      "hf_pct,mc_pct,ac_pct,ius,dus,dss,error\n";
  for (const std::string& value : values) {
    for (Algo algo : algos) {
      std::string row = std::string(to_string(axis)) + "," + value + "," + to_string(algo);
      try {
        PipelineConfig cfg = base;
        cfg.algo = algo;
        cfg.empty_ok = true;
        const Dataset* data = &d;
        Dataset prefixed;
        switch (axis) {
          case SweepAxis::MinUtil:
            cfg.thr.min_util = detail::parse_sweep_int(value, "minutil value");
            break;
          case SweepAxis::MaxPer:
            cfg.thr.max_per = static_cast<std::int32_t>(
                detail::parse_sweep_int(value, "maxper value"));
            break;
          case SweepAxis::Sep: {
            try {
              std::size_t pos = 0;
              cfg.sep = std::stod(value, &pos);
              if (pos != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
              throw ConfigError("invalid sep value '" + value + "'");
            }
            break;
          }
          case SweepAxis::Transactions: {
            std::int64_t v = detail::parse_sweep_int(value, "transaction count");
            prefixed = detail::prefix_dataset(d, static_cast<std::size_t>(v));
            data = &prefixed;
            break;
          }
          case SweepAxis::SensitiveCount: {
            std::int64_t v = detail::parse_sweep_int(value, "sensitive count");
            if (v < 1) throw ConfigError("sensitive count must be >= 1");
            cfg.forced_count = static_cast<std::size_t>(v);
            break;
          }
        }
        PipelineResult r = run_pipeline(*data, cfg);
        char buf[256];
        std::snprintf(buf, sizeof(buf), "ok,%zu,%zu,%.3f,%.3f,%.3f",
                      r.sensitive.size(), r.outcome.report.steps.size(),
                      r.timings.mine_ms, r.timings.sanitize_ms, r.timings.remine_ms);
        row += std::string(",") + buf;
        row += "," + detail::format_double(r.metrics.hf_pct);
        row += "," + detail::format_double(r.metrics.mc_pct);
        row += "," + detail::format_double(r.metrics.ac_pct);
        row += "," + detail::format_double(r.metrics.ius);
        row += "," + detail::format_double(r.metrics.dus);
        row += "," + detail::format_double(r.metrics.dss);
        row += ",";
      } catch (const std::exception& e) {
        row += ",error,0,0,0,0,0,0,0,0,0,0,0," + detail::csv_safe(e.what());
      }
      out += row;
      out += '\n';
    }
  }
  return out;
}

}  // namespace phide
