// Copyright 2026 The Adlift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end over the adlift C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "adlift/adlift.h"

namespace {

struct ConfigDeleter {
  void operator()(adlift_config* p) const { adlift_config_free(p); }
};
struct DatasetDeleter {
  void operator()(adlift_dataset* p) const { adlift_dataset_free(p); }
};
using ConfigPtr = std::unique_ptr<adlift_config, ConfigDeleter>;
using DatasetPtr = std::unique_ptr<adlift_dataset, DatasetDeleter>;

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// All failures surface as structured JSON on stderr with a nonzero exit.
[[noreturn]] void fail(adlift_status status) {
  std::cerr << "{\"error\":{\"code\":\"" << adlift_status_name(status)
            << "\",\"message\":\"" << json_escape(adlift_last_error()) << "\"}}"
            << std::endl;
  std::exit(1);
}

[[noreturn]] void fail_message(const std::string& code, const std::string& message) {
  std::cerr << "{\"error\":{\"code\":\"" << code << "\",\"message\":\""
            << json_escape(message) << "\"}}" << std::endl;
  std::exit(1);
}

void check(adlift_status status) {
  if (status != ADLIFT_OK) fail(status);
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  adlift_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_message("io", "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_message("io", "cannot write file: " + path);
  out << text;
}

void apply_set_overrides(adlift_config* cfg, const std::vector<std::string>& sets) {
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      fail_message("config", "--set expects key=value, got '" + kv + "'");
    check(adlift_config_set(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
}

struct AnalyzeArgs {
  std::string config_path;
  std::string impressions, events, counts_json;
  std::string grain, count_mode, cid_graph;
  int min_degree = -1;
  long long burn_in = -1, samples = -1, chains = -1;
  long long seed = -1;
  int workers = -1;
  bool no_gibbs = false;
  std::string out_path;
  bool print_table = false;
  std::string campaign_id;
  std::vector<std::string> sets;
};

int run_analyze(const AnalyzeArgs& a) {
  ConfigPtr cfg(adlift_config_new());
  if (!a.config_path.empty()) check(adlift_config_load_file(cfg.get(), a.config_path.c_str()));
  auto set = [&](const char* k, const std::string& v) {
    check(adlift_config_set(cfg.get(), k, v.c_str()));
  };
  if (!a.campaign_id.empty()) set("campaign_id", a.campaign_id);
  if (!a.grain.empty()) set("grain", a.grain);
  if (!a.count_mode.empty()) set("count_mode", a.count_mode);
  if (a.min_degree >= 0) set("min_degree", std::to_string(a.min_degree));
  if (a.burn_in >= 0) set("gibbs.burn_in", std::to_string(a.burn_in));
  if (a.samples >= 0) set("gibbs.samples", std::to_string(a.samples));
  if (a.chains >= 0) set("gibbs.chains", std::to_string(a.chains));
  if (a.seed >= 0) set("gibbs.seed", std::to_string(a.seed));
  if (a.workers >= 0) set("workers", std::to_string(a.workers));
  if (a.no_gibbs) set("gibbs.enabled", "false");
  apply_set_overrides(cfg.get(), a.sets);

  adlift_report* report = nullptr;
  if (!a.counts_json.empty()) {
    if (!a.impressions.empty() || !a.events.empty())
      fail_message("config", "--counts replaces --impressions/--events; pass one input form");
    adlift_counts* counts = nullptr;
    check(adlift_counts_from_json(read_file(a.counts_json).c_str(), &counts));
    adlift_status st = adlift_analyze_counts(cfg.get(), counts, &report);
    adlift_counts_free(counts);
    check(st);
  } else {
    if (a.impressions.empty() || a.events.empty())
      fail_message("config", "analyze requires --impressions and --events (or --counts)");
    DatasetPtr ds(adlift_dataset_new());
    check(adlift_dataset_load_impressions(ds.get(), a.impressions.c_str()));
    check(adlift_dataset_load_events(ds.get(), a.events.c_str()));
    if (!a.cid_graph.empty())
      check(adlift_dataset_load_cid_graph(ds.get(), a.cid_graph.c_str()));
    check(adlift_analyze(cfg.get(), ds.get(), &report));
  }

  char* json = nullptr;
  check(adlift_report_json(report, &json));
  const std::string report_json = take_string(json);
  if (a.out_path.empty()) {
    std::cout << report_json << "\n";
  } else {
    write_file(a.out_path, report_json + "\n");
  }
  if (a.print_table) {
    char* table = nullptr;
    check(adlift_report_table(report, 1, &table));
    std::cout << take_string(table) << "\n";
  }
  adlift_report_free(report);
  return 0;
}

struct CiArgs {
  std::string counts_json;
  long long burn_in = -1, samples = -1, chains = -1, seed = -1;
  std::string cw0_draw;
  std::string out_path, draws_csv;
};

int run_ci(const CiArgs& a) {
  ConfigPtr cfg(adlift_config_new());
  auto set = [&](const char* k, const std::string& v) {
    check(adlift_config_set(cfg.get(), k, v.c_str()));
  };
  if (a.burn_in >= 0) set("gibbs.burn_in", std::to_string(a.burn_in));
  if (a.samples >= 0) set("gibbs.samples", std::to_string(a.samples));
  if (a.chains >= 0) set("gibbs.chains", std::to_string(a.chains));
  if (a.seed >= 0) set("gibbs.seed", std::to_string(a.seed));
  if (!a.cw0_draw.empty()) set("gibbs.cw0_draw", a.cw0_draw);

  adlift_counts* counts = nullptr;
  check(adlift_counts_from_json(read_file(a.counts_json).c_str(), &counts));
  adlift_gibbs_result* result = nullptr;
  adlift_status st = adlift_gibbs_run(cfg.get(), counts, &result);
  adlift_counts_free(counts);
  check(st);

  char* json = nullptr;
  check(adlift_gibbs_result_json(result, &json));
  const std::string result_json = take_string(json);
  if (a.out_path.empty()) {
    std::cout << result_json << "\n";
  } else {
    write_file(a.out_path, result_json + "\n");
  }
  if (!a.draws_csv.empty()) {
    char* csv = nullptr;
    check(adlift_gibbs_result_draws_csv(result, &csv));
    write_file(a.draws_csv, take_string(csv));
  }
  adlift_gibbs_result_free(result);
  return 0;
}

struct SimulateArgs {
  std::string config_path;
  std::string out_dir;
  std::string preset;
  long long n = -1;
  int k = -1;
  double p = -1.0, a = -1.0;
  long long seed = -1;
  std::string assignment_grain;
  std::vector<std::string> sets;
};

int run_simulate(const SimulateArgs& a) {
  ConfigPtr cfg(adlift_config_new());
  if (!a.config_path.empty()) check(adlift_config_load_file(cfg.get(), a.config_path.c_str()));
  auto set = [&](const char* key, const std::string& v) {
    check(adlift_config_set(cfg.get(), key, v.c_str()));
  };
  if (!a.preset.empty()) {
    if (a.preset == "contamination-toy") {
      set("sim.mode", "cross_device_toy");
      set("sim.win_rate", "1.0");
      if (a.k > 0) set("sim.device_distribution", std::to_string(a.k) + ":1.0");
    } else if (a.preset == "mixed-1d2d") {
      set("sim.mode", "mixed_1d2d");
      set("sim.device_distribution", "1:0.5,2:0.5");
    } else {
      fail_message("config", "unknown preset '" + a.preset +
                                 "' (expected contamination-toy or mixed-1d2d)");
    }
  } else if (a.k > 0) {
    set("sim.device_distribution", std::to_string(a.k) + ":1.0");
  }
  if (a.n >= 0) set("sim.n_consumers", std::to_string(a.n));
  if (a.p >= 0) set("sim.holdout", std::to_string(a.p));
  if (a.a >= 0) set("sim.true_lift", std::to_string(a.a));
  if (a.seed >= 0) set("sim.seed", std::to_string(a.seed));
  if (!a.assignment_grain.empty()) set("sim.assignment_grain", a.assignment_grain);
  apply_set_overrides(cfg.get(), a.sets);

  char* summary = nullptr;
  check(adlift_simulate(cfg.get(), a.out_dir.c_str(), &summary));
  std::cout << take_string(summary) << "\n";
  return 0;
}

struct ContaminationArgs {
  int k = 1;
  double p = 0.1;
  double a = 0.0;
};

int run_contamination(const ContaminationArgs& args) {
  double diluted = 0.0, skew = 0.0;
  check(adlift_diluted_atl(args.a, args.p, args.k, &diluted));
  check(adlift_multidevice_skew(args.p, &skew));
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "{\"diluted_atl\":%.12g,\"multidevice_skew_factor\":%.12g}", diluted, skew);
  std::cout << buf << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adlift: causal ad-lift measurement from randomized bid logs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(adlift_version()));

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand(
      "analyze", "Run the measurement pipeline and write a report");
  analyze->add_option("--config", an.config_path, "campaign config file (key = value)");
  analyze->add_option("--impressions", an.impressions, "impression log (JSONL)");
  analyze->add_option("--events", an.events, "conversion event log (JSONL)");
  analyze->add_option("--counts", an.counts_json, "pre-built count table JSON (skips ingestion)");
  analyze->add_option("--campaign-id", an.campaign_id, "campaign identifier");
  analyze->add_option("--grain", an.grain, "analysis unit: userid or cid");
  analyze->add_option("--cid-graph", an.cid_graph, "user_id,cid CSV for cid grain");
  analyze->add_option("--min-degree", an.min_degree, "minimum userIDs per CID (default 2)");
  analyze->add_option("--count-mode", an.count_mode, "conversions or responders");
  analyze->add_option("--burn-in", an.burn_in, "sampler burn-in iterations (default 1000)");
  analyze->add_option("--samples", an.samples, "sampler recorded draws (default 2000)");
  analyze->add_option("--chains", an.chains, "sampler chains (default 1)");
  analyze->add_option("--seed", an.seed, "sampler seed");
  analyze->add_option("--workers", an.workers, "attribution shards to run in parallel");
  analyze->add_flag("--no-gibbs", an.no_gibbs, "skip confidence interval sampling");
  analyze->add_option("--out", an.out_path, "write report JSON here instead of stdout");
  analyze->add_flag("--table", an.print_table, "also print the summary table row");
  analyze->add_option("--set", an.sets, "extra key=value config overrides")->allow_extra_args(false);

  CiArgs ci;
  auto* ci_cmd = app.add_subcommand(
      "ci", "Posterior confidence intervals from a count table JSON");
  ci_cmd->add_option("--counts", ci.counts_json, "count table JSON file")->required();
  ci_cmd->add_option("--burn-in", ci.burn_in, "burn-in iterations (default 1000)");
  ci_cmd->add_option("--samples", ci.samples, "recorded draws (default 2000)");
  ci_cmd->add_option("--chains", ci.chains, "independent chains (default 1)");
  ci_cmd->add_option("--seed", ci.seed, "base seed");
  ci_cmd->add_option("--cw0-draw", ci.cw0_draw, "exact or response_weighted");
  ci_cmd->add_option("--out", ci.out_path, "write result JSON here instead of stdout");
  ci_cmd->add_option("--draws-csv", ci.draws_csv, "write raw draws CSV here");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Generate a synthetic campaign with ground truth");
  sim_cmd->add_option("--config", sim.config_path, "simulation config file");
  sim_cmd->add_option("--out-dir", sim.out_dir, "output directory")->required();
  sim_cmd->add_option("--preset", sim.preset, "contamination-toy or mixed-1d2d");
  sim_cmd->add_option("--n", sim.n, "number of consumers");
  sim_cmd->add_option("--k", sim.k, "devices per consumer");
  sim_cmd->add_option("--p", sim.p, "holdout fraction");
  sim_cmd->add_option("--a", sim.a, "true consumer-level lift");
  sim_cmd->add_option("--seed", sim.seed, "simulation seed");
  sim_cmd->add_option("--assignment-grain", sim.assignment_grain, "device or consumer");
  sim_cmd->add_option("--set", sim.sets, "extra key=value config overrides")->allow_extra_args(false);

  ContaminationArgs cont;
  auto* cont_cmd = app.add_subcommand(
      "contamination", "Closed-form contamination effects");
  cont_cmd->add_option("--k", cont.k, "devices per consumer")->required();
  cont_cmd->add_option("--p", cont.p, "holdout fraction")->required();
  cont_cmd->add_option("--a", cont.a, "true consumer-level lift")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail_message("usage", e.what());
  }

  if (analyze->parsed()) return run_analyze(an);
  if (ci_cmd->parsed()) return run_ci(ci);
  if (sim_cmd->parsed()) return run_simulate(sim);
  if (cont_cmd->parsed()) return run_contamination(cont);
  fail_message("usage", "no subcommand given");
}
