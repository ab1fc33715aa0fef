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

// Command-line front end: mine periodic high-utility itemsets, select and
// hide sensitive ones, and score the damage. Exit codes: 0 success, 2 bad
// configuration, 3 malformed input data, 4 violated internal invariant.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phide/baselines.hpp"
#include "phide/core.hpp"
#include "phide/harness.hpp"
#include "phide/io.hpp"
#include "phide/metrics.hpp"
#include "phide/miner.hpp"
#include "phide/sanitizer.hpp"

namespace {

struct InputOpts {
  std::string input;
  std::string utable;
  std::string format = "quantity";

  phide::FormatKind kind() const {
    if (format == "quantity") return phide::FormatKind::Quantity;
    if (format == "spmf") return phide::FormatKind::Spmf;
    throw phide::ConfigError("unknown format '" + format + "' (expected quantity or spmf)");
  }

  phide::Dataset load() const { return phide::load_dataset(input, kind(), utable); }
};

struct ThresholdOpts {
  std::int64_t min_util = 0;
  std::int32_t min_per = 1;
  std::int32_t max_per = 0;
  std::string min_avg = "1";
  std::string max_avg;

  phide::Thresholds thresholds() const {
    phide::Thresholds thr;
    thr.min_util = min_util;
    thr.min_per = min_per;
    thr.max_per = max_per;
    thr.min_avg = phide::Ratio::parse(min_avg);
    thr.max_avg = phide::Ratio::parse(max_avg);
    thr.validate();
    return thr;
  }
};

void add_input_flags(CLI::App* cmd, InputOpts& o) {
  cmd->add_option("--input", o.input, "transaction database file")->required();
  cmd->add_option("--format", o.format, "input format: quantity or spmf")
      ->capture_default_str();
  cmd->add_option("--utable", o.utable, "utility table file (quantity format only)");
}

void add_threshold_flags(CLI::App* cmd, ThresholdOpts& o) {
  cmd->add_option("--minutil", o.min_util, "minimum itemset utility")->required();
  cmd->add_option("--minper", o.min_per, "minimum period threshold")->capture_default_str();
  cmd->add_option("--maxper", o.max_per, "maximum period threshold")->required();
  cmd->add_option("--minavg", o.min_avg, "minimum average period (integer, decimal or p/q)")
      ->capture_default_str();
  cmd->add_option("--maxavg", o.max_avg, "maximum average period (integer, decimal or p/q)")
      ->required();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    phide::write_file(out_path, text);
  }
}

std::vector<phide::Itemset> load_sensitive(const std::string& path) {
  return phide::parse_itemset_lines(phide::read_file(path));
}

phide::SanitizeOutcome run_sanitizer(const phide::Dataset& d, phide::Algo algo,
                                     const std::vector<phide::Itemset>& spis,
                                     const phide::Thresholds& thr) {
  switch (algo) {
    case phide::Algo::MuMap:
      return phide::sanitize(d, spis, thr, phide::VictimPolicy::MaxPeriod);
    case phide::Algo::MuMip:
      return phide::sanitize(d, spis, thr, phide::VictimPolicy::MinPeriod);
    default: {
      std::set<phide::Itemset> spi_set(spis.begin(), spis.end());
      std::vector<phide::Itemset> non_sensitive;
      for (const auto& rec : phide::mine_phuis(d, thr)) {
        if (!spi_set.count(rec.itemset)) non_sensitive.push_back(rec.itemset);
      }
      phide::BaselineVariant v = algo == phide::Algo::Smau   ? phide::BaselineVariant::Smau
                                 : algo == phide::Algo::Smiu ? phide::BaselineVariant::Smiu
                                                             : phide::BaselineVariant::Smse;
      return phide::sanitize_baseline(d, spis, thr, non_sensitive, v);
    }
  }
}

void write_sanitized(const std::string& dir, const phide::Dataset& d, phide::FormatKind kind,
                     const phide::SanitizeReport& report) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw phide::ConfigError("cannot create output directory " + dir + ": " + ec.message());
  }
  phide::write_file((fs::path(dir) / "sanitized.txt").string(), phide::write_dataset(d, kind));
  if (kind == phide::FormatKind::Quantity) {
    phide::write_file((fs::path(dir) / "sanitized.utable").string(),
                      phide::write_utility_table(d));
  }
  phide::write_file((fs::path(dir) / "report.jsonl").string(),
                    phide::write_report_jsonl(report));
}

int run(int argc, char** argv) {
  CLI::App app{"periodic high-utility itemset mining and sanitization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "phide 0.1.0");

  // mine: list every periodic high-utility itemset.
  auto* mine = app.add_subcommand("mine", "mine periodic high-utility itemsets");
  InputOpts mine_in;
  ThresholdOpts mine_thr;
  std::string mine_out;
  add_input_flags(mine, mine_in);
  add_threshold_flags(mine, mine_thr);
  mine->add_option("--out", mine_out, "output file (default: stdout)");
  mine->callback([&] {
    auto records = phide::mine_phuis(mine_in.load(), mine_thr.thresholds());
    emit(mine_out, phide::write_phui_lines(records));
  });

  // select: deterministic sensitive-itemset choice.
  auto* select = app.add_subcommand("select", "select sensitive itemsets from the minable set");
  InputOpts sel_in;
  ThresholdOpts sel_thr;
  double sel_sep = 0.05;
  std::uint64_t sel_seed = 1;
  std::string sel_mode = "random";
  std::int64_t sel_count = 0;
  std::string sel_out;
  add_input_flags(select, sel_in);
  add_threshold_flags(select, sel_thr);
  select->add_option("--sep", sel_sep, "fraction of mined itemsets to mark sensitive")
      ->capture_default_str();
  select->add_option("--spis", sel_count, "exact sensitive count (overrides --sep)");
  select->add_option("--seed", sel_seed, "selection seed")->capture_default_str();
  select->add_option("--mode", sel_mode, "selection mode: random or incremental")
      ->capture_default_str();
  select->add_option("--out", sel_out, "output file (default: stdout)");
  select->callback([&] {
    auto records = phide::mine_phuis(sel_in.load(), sel_thr.thresholds());
    phide::SelectionMode mode = phide::selection_mode_from_string(sel_mode);
    std::vector<phide::Itemset> spis;
    if (sel_count > 0) {
      spis = phide::select_sensitive_count(records, static_cast<std::size_t>(sel_count),
                                           sel_seed, mode);
    } else {
      spis = phide::select_sensitive(records, sel_sep, sel_seed, mode);
    }
    emit(sel_out, phide::write_itemset_lines(spis));
  });

  // sanitize: hide an explicit sensitive list.
  auto* sanitize = app.add_subcommand("sanitize", "hide sensitive itemsets in the database");
  InputOpts san_in;
  ThresholdOpts san_thr;
  std::string san_algo = "mu-map";
  std::string san_sensitive;
  std::string san_out;
  add_input_flags(sanitize, san_in);
  add_threshold_flags(sanitize, san_thr);
  sanitize->add_option("--algo", san_algo, "mu-map, mu-mip, smau, smiu or smse")
      ->capture_default_str();
  sanitize->add_option("--sensitive-file", san_sensitive, "file of sensitive itemsets")
      ->required();
  sanitize->add_option("--out", san_out, "output directory")->required();
  sanitize->callback([&] {
    phide::Dataset d = san_in.load();
    phide::Thresholds thr = san_thr.thresholds();
    auto outcome = run_sanitizer(d, phide::algo_from_string(san_algo),
                                 load_sensitive(san_sensitive), thr);
    write_sanitized(san_out, outcome.sanitized, san_in.kind(), outcome.report);
    std::cout << "hidden " << outcome.report.hidden.size() << " itemset(s) in "
              << outcome.report.steps.size() << " edit(s), removed utility "
              << outcome.report.removed_utility << "\n";
  });

  // evaluate: score a sanitized database against the original.
  auto* evaluate = app.add_subcommand("evaluate", "compute side-effect metrics");
  InputOpts eval_in;
  ThresholdOpts eval_thr;
  std::string eval_sanitized;
  std::string eval_sanitized_utable;
  std::string eval_sensitive;
  std::string eval_out;
  add_input_flags(evaluate, eval_in);
  add_threshold_flags(evaluate, eval_thr);
  evaluate->add_option("--sanitized", eval_sanitized, "sanitized database file")->required();
  evaluate
      ->add_option("--sanitized-utable", eval_sanitized_utable,
                   "utility table of the sanitized database (defaults to --utable)")
      ->default_str("");
  evaluate->add_option("--sensitive-file", eval_sensitive, "file of sensitive itemsets")
      ->required();
  evaluate->add_option("--out", eval_out, "output directory (default: JSON to stdout)");
  evaluate->callback([&] {
    phide::Dataset before = eval_in.load();
    std::string ut = eval_sanitized_utable.empty() ? eval_in.utable : eval_sanitized_utable;
    phide::Dataset after = phide::load_dataset(eval_sanitized, eval_in.kind(), ut);
    phide::Thresholds thr = eval_thr.thresholds();
    auto spis = load_sensitive(eval_sensitive);
    auto pi = phide::mine_phuis(before, thr);
    auto prime = phide::mine_phuis(after, thr);
    phide::MetricsReport m = phide::compute_metrics(pi, spis, prime, before, after);
    if (eval_out.empty()) {
      std::cout << phide::metrics_to_json(m);
    } else {
      namespace fs = std::filesystem;
      std::error_code ec;
      fs::create_directories(eval_out, ec);
      if (ec) {
        throw phide::ConfigError("cannot create output directory " + eval_out + ": " +
                                 ec.message());
      }
      phide::write_file((fs::path(eval_out) / "metrics.json").string(),
                        phide::metrics_to_json(m));
      phide::write_file((fs::path(eval_out) / "metrics.csv").string(),
                        phide::metrics_to_csv(m));
    }
  });

  // pipeline: mine -> select -> sanitize -> re-mine -> evaluate.
  auto* pipeline = app.add_subcommand("pipeline", "run the full hide-and-score pipeline");
  InputOpts pipe_in;
  ThresholdOpts pipe_thr;
  double pipe_sep = 0.05;
  std::uint64_t pipe_seed = 1;
  std::string pipe_algo = "mu-map";
  std::string pipe_mode = "random";
  std::int64_t pipe_count = 0;
  std::string pipe_sensitive;
  std::string pipe_out;
  add_input_flags(pipeline, pipe_in);
  add_threshold_flags(pipeline, pipe_thr);
  pipeline->add_option("--sep", pipe_sep, "fraction of mined itemsets to mark sensitive")
      ->capture_default_str();
  pipeline->add_option("--spis", pipe_count, "exact sensitive count (overrides --sep)");
  pipeline->add_option("--seed", pipe_seed, "selection seed")->capture_default_str();
  pipeline->add_option("--algo", pipe_algo, "mu-map, mu-mip, smau, smiu or smse")
      ->capture_default_str();
  pipeline->add_option("--mode", pipe_mode, "selection mode: random or incremental")
      ->capture_default_str();
  pipeline->add_option("--sensitive-file", pipe_sensitive,
                       "pin the sensitive itemsets instead of sampling");
  pipeline->add_option("--out", pipe_out, "output directory")->required();
  pipeline->callback([&] {
    phide::Dataset d = pipe_in.load();
    phide::PipelineConfig cfg;
    cfg.thr = pipe_thr.thresholds();
    cfg.sep = pipe_sep;
    cfg.seed = pipe_seed;
    cfg.algo = phide::algo_from_string(pipe_algo);
    cfg.mode = phide::selection_mode_from_string(pipe_mode);
    if (!pipe_sensitive.empty()) cfg.pinned_sensitive = load_sensitive(pipe_sensitive);
    if (pipe_count > 0) cfg.forced_count = static_cast<std::size_t>(pipe_count);
    phide::PipelineResult r = phide::run_pipeline(d, cfg);
    phide::write_pipeline_artifacts(pipe_out, cfg, r, pipe_in.kind());
    std::cout << "mined " << r.before.size() << ", hid " << r.sensitive.size()
              << ", minable after " << r.after.size() << "; artifacts in " << pipe_out << "\n";
  });

  // sweep: grid of pipeline runs, one CSV row each.
  auto* sweep = app.add_subcommand("sweep", "run a pipeline grid and emit CSV");
  InputOpts sweep_in;
  ThresholdOpts sweep_thr;
  double sweep_sep = 0.05;
  std::uint64_t sweep_seed = 1;
  std::string sweep_mode = "random";
  std::string sweep_axis;
  std::vector<std::string> sweep_values;
  std::vector<std::string> sweep_algos = {"mu-map", "mu-mip"};
  std::string sweep_out;
  add_input_flags(sweep, sweep_in);
  add_threshold_flags(sweep, sweep_thr);
  sweep->add_option("--sep", sweep_sep, "base sensitive fraction")->capture_default_str();
  sweep->add_option("--seed", sweep_seed, "selection seed")->capture_default_str();
  sweep->add_option("--mode", sweep_mode, "selection mode: random or incremental")
      ->capture_default_str();
  sweep->add_option("--axis", sweep_axis, "minutil, sep, maxper, transactions or spis")
      ->required();
  sweep->add_option("--values", sweep_values, "comma-separated axis values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--algos", sweep_algos, "comma-separated algorithm list")
      ->capture_default_str()
      ->delimiter(',');
  sweep->add_option("--out", sweep_out, "output CSV file (default: stdout)");
  sweep->callback([&] {
    phide::Dataset d = sweep_in.load();
    phide::PipelineConfig base;
    base.thr = sweep_thr.thresholds();
    base.sep = sweep_sep;
    base.seed = sweep_seed;
    base.mode = phide::selection_mode_from_string(sweep_mode);
    std::vector<phide::Algo> algos;
    for (const std::string& name : sweep_algos) {
      algos.push_back(phide::algo_from_string(name));
    }
    emit(sweep_out, phide::sweep(d, base, phide::sweep_axis_from_string(sweep_axis),
                                 sweep_values, algos));
  });

  // gen: synthetic benchmark dataset.
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  phide::SyntheticParams gen_params;
  std::string gen_format = "quantity";
  std::string gen_out;
  std::string gen_utable_out;
  gen->add_option("--transactions", gen_params.n_transactions, "transaction count")
      ->required();
  gen->add_option("--items", gen_params.n_items, "item universe size")->required();
  gen->add_option("--avg-len", gen_params.avg_len, "average transaction length")->required();
  gen->add_option("--max-qty", gen_params.max_qty, "maximum item quantity")
      ->capture_default_str();
  gen->add_option("--max-eu", gen_params.max_eu, "maximum per-unit utility")
      ->capture_default_str();
  gen->add_option("--bias", gen_params.periodicity_bias,
                  "probability that the planted periodic item 1 appears in its slots")
      ->capture_default_str();
  gen->add_option("--stride", gen_params.stride, "slot spacing of the planted periodic item")
      ->capture_default_str();
  gen->add_option("--seed", gen_params.seed, "generator seed")->capture_default_str();
  gen->add_option("--format", gen_format, "output format: quantity or spmf")
      ->capture_default_str();
  gen->add_option("--out", gen_out, "output transactions file")->required();
  gen->add_option("--utable-out", gen_utable_out, "output utility table (quantity format)");
  gen->callback([&] {
    phide::Dataset d = phide::generate_synthetic(gen_params);
    phide::FormatKind kind;
    if (gen_format == "quantity") {
      kind = phide::FormatKind::Quantity;
      if (gen_utable_out.empty()) {
        throw phide::ConfigError("quantity format requires --utable-out");
      }
    } else if (gen_format == "spmf") {
      kind = phide::FormatKind::Spmf;
    } else {
      throw phide::ConfigError("unknown format '" + gen_format +
                               "' (expected quantity or spmf)");
    }
    phide::write_file(gen_out, phide::write_dataset(d, kind));
    if (kind == phide::FormatKind::Quantity) {
      phide::write_file(gen_utable_out, phide::write_utility_table(d));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const phide::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const phide::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const phide::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
