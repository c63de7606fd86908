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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "adlift/adlift.h"

namespace {

constexpr const char* kCampaign2Json =
    R"({"tw1":8573,"tw0":909743,"tl1":4036,"tl0":1273104,"c1":748,"c0":144468,)"
    R"("conv_t":12609,"conv_tw":8573,"conv_c":748,)"
    R"("uniq_t":2195456,"uniq_tw":918316,"uniq_c":145216})";

std::string take(char* s) {
  std::string out = s ? s : "";
  adlift_string_free(s);
  return out;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("capi_tmp_" + name) {
    std::ofstream f(path, std::ios::binary);
    f << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

extern "C" int c_header_smoke(void);

TEST_CASE("version and status names") {
  CHECK(std::string(adlift_version()) == "0.1.0");
  CHECK(std::string(adlift_status_name(ADLIFT_OK)) == "ok");
  CHECK(std::string(adlift_status_name(ADLIFT_ERR_DEGENERATE)) == "degenerate");
}

TEST_CASE("the header works from a plain C translation unit") {
  CHECK(c_header_smoke() == 0);
}

TEST_CASE("null arguments are rejected without crashing") {
  CHECK(adlift_config_load_file(nullptr, "x") == ADLIFT_ERR_NULL_ARG);
  CHECK(adlift_counts_from_json(nullptr, nullptr) == ADLIFT_ERR_NULL_ARG);
  double v = 0;
  CHECK(adlift_diluted_atl(1.0, 0.5, 2, nullptr) == ADLIFT_ERR_NULL_ARG);
  CHECK(adlift_multidevice_skew(0.1, &v) == ADLIFT_OK);
}

TEST_CASE("counts round-trip and validation messages") {
  adlift_counts* counts = nullptr;
  REQUIRE(adlift_counts_from_json(kCampaign2Json, &counts) == ADLIFT_OK);
  CHECK(adlift_counts_validate(counts) == ADLIFT_OK);
  char* json = nullptr;
  REQUIRE(adlift_counts_to_json(counts, &json) == ADLIFT_OK);
  CHECK(take(json).find("\"uniq_t\":2195456") != std::string::npos);
  adlift_counts_free(counts);

  adlift_counts* bad = nullptr;
  REQUIRE(adlift_counts_from_json(
              R"({"tw1":5,"tw0":0,"tl1":0,"tl0":0,"c1":0,"c0":0,"conv_t":5,)"
              R"("conv_tw":5,"conv_c":0,"uniq_t":4,"uniq_tw":4,"uniq_c":0})",
              &bad) == ADLIFT_OK);
  CHECK(adlift_counts_validate(bad) == ADLIFT_ERR_VALIDATION);
  CHECK(std::string(adlift_last_error()).find("tw1 <= uniq_tw") != std::string::npos);
  adlift_counts_free(bad);

  adlift_counts* nope = nullptr;
  CHECK(adlift_counts_from_json("{", &nope) == ADLIFT_ERR_PARSE);
}

TEST_CASE("analysis over a count table reproduces the golden row") {
  adlift_config* cfg = adlift_config_new();
  REQUIRE(cfg != nullptr);
  REQUIRE(adlift_config_set(cfg, "campaign_id", "2") == ADLIFT_OK);
  REQUIRE(adlift_config_set(cfg, "gibbs.seed", "123") == ADLIFT_OK);
  adlift_counts* counts = nullptr;
  REQUIRE(adlift_counts_from_json(kCampaign2Json, &counts) == ADLIFT_OK);

  adlift_report* report = nullptr;
  REQUIRE(adlift_analyze_counts(cfg, counts, &report) == ADLIFT_OK);
  char* table = nullptr;
  REQUIRE(adlift_report_table(report, 1, &table) == ADLIFT_OK);
  const std::string text = take(table);
  CHECK(text.find("id,ATL,INC,ATT,gConf") == 0);
  CHECK(text.find("\n2,18,15,14,") != std::string::npos);

  char* json = nullptr;
  REQUIRE(adlift_report_json(report, &json) == ADLIFT_OK);
  const std::string rj = take(json);
  CHECK(rj.find("\"campaign_id\": \"2\"") != std::string::npos);
  CHECK(rj.find("\"version\": \"0.1.0\"") != std::string::npos);

  adlift_report_free(report);
  adlift_counts_free(counts);
  adlift_config_free(cfg);
}

TEST_CASE("gibbs run through the C surface is deterministic") {
  adlift_config* cfg = adlift_config_new();
  REQUIRE(adlift_config_set(cfg, "gibbs.burn_in", "100") == ADLIFT_OK);
  REQUIRE(adlift_config_set(cfg, "gibbs.samples", "200") == ADLIFT_OK);
  REQUIRE(adlift_config_set(cfg, "gibbs.seed", "5") == ADLIFT_OK);
  adlift_counts* counts = nullptr;
  REQUIRE(adlift_counts_from_json(kCampaign2Json, &counts) == ADLIFT_OK);

  std::string first, second;
  for (std::string* dst : {&first, &second}) {
    adlift_gibbs_result* r = nullptr;
    REQUIRE(adlift_gibbs_run(cfg, counts, &r) == ADLIFT_OK);
    char* json = nullptr;
    REQUIRE(adlift_gibbs_result_json(r, &json) == ADLIFT_OK);
    *dst = take(json);
    char* csv = nullptr;
    REQUIRE(adlift_gibbs_result_draws_csv(r, &csv) == ADLIFT_OK);
    CHECK(take(csv).rfind("iter,w,r_tw,r_cw,r_l,att,atl\n", 0) == 0);
    adlift_gibbs_result_free(r);
  }
  CHECK(first == second);
  adlift_counts_free(counts);
  adlift_config_free(cfg);
}

TEST_CASE("degenerate tables surface as typed errors") {
  adlift_config* cfg = adlift_config_new();
  adlift_counts* counts = nullptr;
  REQUIRE(adlift_counts_from_json(
              R"({"tw1":0,"tw0":0,"tl1":0,"tl0":10,"c1":0,"c0":10,"conv_t":0,)"
              R"("conv_tw":0,"conv_c":0,"uniq_t":10,"uniq_tw":0,"uniq_c":10})",
              &counts) == ADLIFT_OK);
  adlift_report* report = nullptr;
  CHECK(adlift_analyze_counts(cfg, counts, &report) == ADLIFT_ERR_DEGENERATE);
  CHECK(std::string(adlift_last_error()).find("Test-Winner") != std::string::npos);
  adlift_counts_free(counts);
  adlift_config_free(cfg);
}

TEST_CASE("end-to-end: logs on disk through analyze") {
  TempFile imps("i.jsonl",
                R"({"u":"a","t":10,"c":"c0","tag":"TW"})" "\n"
                R"({"u":"b","t":10,"c":"c0","tag":"TL"})" "\n"
                R"({"u":"c","t":10,"c":"c0","tag":"C"})" "\n"
                R"({"u":"d","t":10,"c":"c0","tag":"C"})" "\n");
  TempFile evs("e.jsonl",
               R"({"u":"a","t":20,"c":"c0"})" "\n"
               R"({"u":"c","t":25,"c":"c0"})" "\n");
  adlift_config* cfg = adlift_config_new();
  REQUIRE(adlift_config_set(cfg, "pv_window_seconds", "100") == ADLIFT_OK);
  REQUIRE(adlift_config_set(cfg, "gibbs.enabled", "false") == ADLIFT_OK);
  adlift_dataset* ds = adlift_dataset_new();
  REQUIRE(adlift_dataset_load_impressions(ds, imps.path.c_str()) == ADLIFT_OK);
  REQUIRE(adlift_dataset_load_events(ds, evs.path.c_str()) == ADLIFT_OK);
  adlift_report* report = nullptr;
  REQUIRE(adlift_analyze(cfg, ds, &report) == ADLIFT_OK);
  char* json = nullptr;
  REQUIRE(adlift_report_json(report, &json) == ADLIFT_OK);
  const std::string rj = take(json);
  CHECK(rj.find("\"uniq_t\": 2") != std::string::npos);
  CHECK(rj.find("\"uniq_c\": 2") != std::string::npos);
  adlift_report_free(report);
  adlift_dataset_free(ds);
  adlift_config_free(cfg);
}

TEST_CASE("simulator writes the full file set") {
  adlift_config* cfg = adlift_config_new();
  REQUIRE(adlift_config_set(cfg, "sim.n_consumers", "500") == ADLIFT_OK);
  REQUIRE(adlift_config_set(cfg, "sim.seed", "42") == ADLIFT_OK);
  char* summary = nullptr;
  REQUIRE(adlift_simulate(cfg, "capi_sim_out", &summary) == ADLIFT_OK);
  const std::string s = take(summary);
  CHECK(s.find("\"n_consumers\": 500") != std::string::npos);
  for (const char* name : {"bidopps.jsonl", "impressions.jsonl", "events.jsonl",
                           "truth.csv", "truth_summary.json", "graph.csv"}) {
    std::ifstream f(std::string("capi_sim_out/") + name);
    CHECK_MESSAGE(f.good(), name);
  }
  adlift_config_free(cfg);
  std::remove("capi_sim_out/bidopps.jsonl");
  std::remove("capi_sim_out/impressions.jsonl");
  std::remove("capi_sim_out/events.jsonl");
  std::remove("capi_sim_out/truth.csv");
  std::remove("capi_sim_out/truth_summary.json");
  std::remove("capi_sim_out/graph.csv");
  std::remove("capi_sim_out");
}

TEST_CASE("assignment helpers are deterministic and banded") {
  uint64_t h1 = 0, h2 = 0;
  REQUIRE(adlift_hash_digits("user-1", 4, "salt", &h1) == ADLIFT_OK);
  REQUIRE(adlift_hash_digits("user-1", 4, "salt", &h2) == ADLIFT_OK);
  CHECK(h1 == h2);
  CHECK(h1 < 10000);
  int is_control = -1;
  REQUIRE(adlift_assign("user-1", 0.1, 4, "salt", &is_control) == ADLIFT_OK);
  CHECK(is_control == (h1 < 1000 ? 1 : 0));
  CHECK(adlift_assign("user-1", 0.05, 1, "salt", &is_control) == ADLIFT_ERR_CONFIG);
}

TEST_CASE("contamination formulas through the C surface") {
  double v = 0;
  REQUIRE(adlift_diluted_atl(0.5, 0.3, 1, &v) == ADLIFT_OK);
  CHECK(v == doctest::Approx(0.5));
  REQUIRE(adlift_multidevice_skew(0.1, &v) == ADLIFT_OK);
  CHECK(v == doctest::Approx(1.7272727272727273));
  CHECK(adlift_diluted_atl(1.0, 0.5, 0, &v) == ADLIFT_ERR_DOMAIN);
}
