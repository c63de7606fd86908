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

#include "adlift/adlift.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "core/assignment.hpp"
#include "core/config.hpp"
#include "core/count_table.hpp"
#include "core/identity.hpp"
#include "core/report.hpp"
#include "core/simulator.hpp"
#include "core/version.hpp"
#include "core/wire.hpp"

namespace {

thread_local std::string g_last_error;

adlift_status status_from(adlift::ErrorCode code) {
  using EC = adlift::ErrorCode;
  switch (code) {
    case EC::io: return ADLIFT_ERR_IO;
    case EC::parse: return ADLIFT_ERR_PARSE;
    case EC::config: return ADLIFT_ERR_CONFIG;
    case EC::validation:
    case EC::mixed_arm:
    case EC::unknown_tag: return ADLIFT_ERR_VALIDATION;
    case EC::empty_population:
    case EC::degenerate_probability:
    case EC::non_positive_baseline:
    case EC::zero_exposed_rate: return ADLIFT_ERR_DEGENERATE;
    case EC::domain: return ADLIFT_ERR_DOMAIN;
    case EC::contract:
    case EC::internal: return ADLIFT_ERR_INTERNAL;
  }
  return ADLIFT_ERR_INTERNAL;
}

template <typename Fn>
adlift_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ADLIFT_OK;
  } catch (const adlift::Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ADLIFT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ADLIFT_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

adlift_status null_arg() {
  g_last_error = "null argument";
  return ADLIFT_ERR_NULL_ARG;
}

}  // namespace

struct adlift_config {
  adlift::KeyValueConfig kv;
};

struct adlift_dataset {
  std::vector<adlift::ImpressionRecord> impressions;
  std::vector<adlift::EventRecord> events;
  std::vector<adlift::BidOppRecord> bidopps;
  std::unique_ptr<adlift::IdGraph> graph;
};

struct adlift_counts {
  adlift::CountTable table;
};

struct adlift_report {
  adlift::AnalysisReport report;
};

struct adlift_gibbs_result {
  adlift::GibbsResult result;
  adlift::GibbsConfig config;
};

extern "C" {

const char* adlift_version(void) { return ADLIFT_VERSION; }

const char* adlift_status_name(adlift_status status) {
  switch (status) {
    case ADLIFT_OK: return "ok";
    case ADLIFT_ERR_NULL_ARG: return "null_arg";
    case ADLIFT_ERR_IO: return "io";
    case ADLIFT_ERR_PARSE: return "parse";
    case ADLIFT_ERR_CONFIG: return "config";
    case ADLIFT_ERR_VALIDATION: return "validation";
    case ADLIFT_ERR_DEGENERATE: return "degenerate";
    case ADLIFT_ERR_DOMAIN: return "domain";
    case ADLIFT_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* adlift_last_error(void) { return g_last_error.c_str(); }

adlift_config* adlift_config_new(void) { return new (std::nothrow) adlift_config(); }

adlift_status adlift_config_load_file(adlift_config* cfg, const char* path) {
  if (!cfg || !path) return null_arg();
  return guarded([&] { cfg->kv.load_file(path); });
}

adlift_status adlift_config_set(adlift_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return null_arg();
  return guarded([&] { cfg->kv.set(key, value); });
}

void adlift_config_free(adlift_config* cfg) { delete cfg; }

adlift_dataset* adlift_dataset_new(void) { return new (std::nothrow) adlift_dataset(); }

adlift_status adlift_dataset_load_impressions(adlift_dataset* ds, const char* jsonl_path) {
  if (!ds || !jsonl_path) return null_arg();
  return guarded([&] {
    adlift::read_impression_log(jsonl_path, [&](const adlift::ImpressionRecord& r) {
      ds->impressions.push_back(r);
    });
  });
}

adlift_status adlift_dataset_load_events(adlift_dataset* ds, const char* jsonl_path) {
  if (!ds || !jsonl_path) return null_arg();
  return guarded([&] {
    adlift::read_event_log(jsonl_path,
                           [&](const adlift::EventRecord& r) { ds->events.push_back(r); });
  });
}

adlift_status adlift_dataset_load_bidopps(adlift_dataset* ds, const char* jsonl_path) {
  if (!ds || !jsonl_path) return null_arg();
  return guarded([&] {
    adlift::read_bidopp_log(jsonl_path,
                            [&](const adlift::BidOppRecord& r) { ds->bidopps.push_back(r); });
  });
}

adlift_status adlift_dataset_load_cid_graph(adlift_dataset* ds, const char* csv_path) {
  if (!ds || !csv_path) return null_arg();
  return guarded([&] {
    ds->graph = std::make_unique<adlift::IdGraph>(adlift::IdGraph::load_csv(csv_path));
  });
}

void adlift_dataset_free(adlift_dataset* ds) { delete ds; }

adlift_status adlift_counts_from_json(const char* json_text, adlift_counts** out) {
  if (!json_text || !out) return null_arg();
  return guarded([&] {
    auto c = std::make_unique<adlift_counts>();
    c->table = adlift::count_table_from_json(json_text);
    *out = c.release();
  });
}

adlift_status adlift_counts_validate(const adlift_counts* counts) {
  if (!counts) return null_arg();
  return guarded([&] { adlift::require_valid(counts->table); });
}

adlift_status adlift_counts_to_json(const adlift_counts* counts, char** out) {
  if (!counts || !out) return null_arg();
  return guarded([&] { *out = copy_string(adlift::count_table_to_json(counts->table)); });
}

void adlift_counts_free(adlift_counts* counts) { delete counts; }

adlift_status adlift_analyze(const adlift_config* cfg, const adlift_dataset* ds,
                             adlift_report** out) {
  if (!cfg || !ds || !out) return null_arg();
  return guarded([&] {
    auto options = adlift::analysis_options_from_config(cfg->kv);
    auto r = std::make_unique<adlift_report>();
    r->report = adlift::analyze_logs(options, ds->impressions, ds->events,
                                     ds->graph.get());
    *out = r.release();
  });
}

adlift_status adlift_analyze_counts(const adlift_config* cfg, const adlift_counts* counts,
                                    adlift_report** out) {
  if (!cfg || !counts || !out) return null_arg();
  return guarded([&] {
    auto options = adlift::analysis_options_from_config(cfg->kv);
    auto r = std::make_unique<adlift_report>();
    r->report = adlift::analyze_counts(options, counts->table);
    *out = r.release();
  });
}

adlift_status adlift_report_json(const adlift_report* report, char** out) {
  if (!report || !out) return null_arg();
  return guarded([&] { *out = copy_string(adlift::report_to_json(report->report)); });
}

adlift_status adlift_report_table(const adlift_report* report, int include_header,
                                  char** out) {
  if (!report || !out) return null_arg();
  return guarded([&] {
    std::string text;
    if (include_header) text = adlift::report_table_header() + "\n";
    text += adlift::report_table_row(report->report);
    *out = copy_string(text);
  });
}

void adlift_report_free(adlift_report* report) { delete report; }

adlift_status adlift_gibbs_run(const adlift_config* cfg, const adlift_counts* counts,
                               adlift_gibbs_result** out) {
  if (!cfg || !counts || !out) return null_arg();
  return guarded([&] {
    auto options = adlift::analysis_options_from_config(cfg->kv);
    auto r = std::make_unique<adlift_gibbs_result>();
    r->config = options.gibbs;
    r->result = adlift::run_chain(counts->table, options.gibbs);
    *out = r.release();
  });
}

adlift_status adlift_gibbs_result_json(const adlift_gibbs_result* result, char** out) {
  if (!result || !out) return null_arg();
  return guarded([&] {
    *out = copy_string(adlift::gibbs_result_to_json(result->result, result->config));
  });
}

adlift_status adlift_gibbs_result_draws_csv(const adlift_gibbs_result* result, char** out) {
  if (!result || !out) return null_arg();
  return guarded([&] { *out = copy_string(adlift::gibbs_draws_csv(result->result)); });
}

void adlift_gibbs_result_free(adlift_gibbs_result* result) { delete result; }

adlift_status adlift_simulate(const adlift_config* cfg, const char* out_dir,
                              char** summary_json) {
  if (!cfg || !out_dir) return null_arg();
  return guarded([&] {
    auto sim_cfg = adlift::sim_config_from_config(cfg->kv);
    adlift::SimOutput out = adlift::simulate(sim_cfg);
    adlift::write_sim_output(out, sim_cfg, out_dir);
    if (summary_json) *summary_json = copy_string(adlift::truth_summary_json(out, sim_cfg));
  });
}

adlift_status adlift_hash_digits(const char* user_id, int digits, const char* salt,
                                 uint64_t* out) {
  if (!user_id || !salt || !out) return null_arg();
  return guarded([&] {
    *out = adlift::hash_digits(adlift::UserId{user_id}, adlift::HashConfig{digits, salt});
  });
}

adlift_status adlift_assign(const char* user_id, double holdout_fraction, int digits,
                            const char* salt, int* out_is_control) {
  if (!user_id || !salt || !out_is_control) return null_arg();
  return guarded([&] {
    adlift::Assignment a = adlift::assign(adlift::UserId{user_id}, holdout_fraction,
                                          adlift::HashConfig{digits, salt});
    *out_is_control = a.is_control() ? 1 : 0;
  });
}

adlift_status adlift_diluted_atl(double true_lift, double holdout, int devices_per_consumer,
                                 double* out) {
  if (!out) return null_arg();
  return guarded([&] { *out = adlift::diluted_atl(true_lift, holdout, devices_per_consumer); });
}

adlift_status adlift_multidevice_skew(double holdout, double* out) {
  if (!out) return null_arg();
  return guarded([&] { *out = adlift::multidevice_skew_factor(holdout); });
}

void adlift_string_free(char* s) { delete[] s; }

}  // extern "C"
