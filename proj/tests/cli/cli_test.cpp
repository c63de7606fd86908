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

// Drives the installed command-line binary end to end: exit codes, error
// JSON on stderr, and the config-file/flag override contract.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cout << "[FAIL] " << what << "\n";
  } else {
    std::cout << "[ok] " << what << "\n";
  }
}

std::string cli_path() {
  if (const char* env = std::getenv("ADLIFT_CLI")) return env;
#ifdef ADLIFT_CLI_PATH
  return ADLIFT_CLI_PATH;
#else
  return "adlift";
#endif
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run(const fs::path& dir, const std::string& args) {
  const fs::path out = dir / "run.out";
  const fs::path err = dir / "run.err";
  const std::string cmd =
      cli_path() + " " + args + " > " + out.string() + " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  std::ostringstream o, e;
  o << std::ifstream(out).rdbuf();
  e << std::ifstream(err).rdbuf();
  r.out = o.str();
  r.err = e.str();
  return r;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "adlift_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  // Missing file: io error JSON on stderr, nonzero exit.
  {
    const RunResult r = run(dir, "ci --counts does-not-exist.json");
    expect(r.exit_code == 1, "missing counts file exits 1");
    expect(r.err.find("\"error\"") != std::string::npos &&
               r.err.find("\"io\"") != std::string::npos,
           "missing counts file reports io error JSON");
  }

  // Malformed counts: parse error naming the field.
  {
    write(dir / "bad.json", R"({"tw1": 1})");
    const RunResult r = run(dir, "ci --counts " + (dir / "bad.json").string());
    expect(r.exit_code == 1, "incomplete counts exit 1");
    expect(r.err.find("\"parse\"") != std::string::npos, "incomplete counts parse error");
  }

  // Degenerate table: typed estimator error.
  {
    write(dir / "deg.json",
          R"({"tw1":0,"tw0":0,"tl1":0,"tl0":10,"c1":0,"c0":10,"conv_t":0,)"
          R"("conv_tw":0,"conv_c":0,"uniq_t":10,"uniq_tw":0,"uniq_c":10})");
    const RunResult r =
        run(dir, "analyze --counts " + (dir / "deg.json").string() + " --no-gibbs");
    expect(r.exit_code == 1, "degenerate table exits 1");
    expect(r.err.find("\"degenerate\"") != std::string::npos,
           "degenerate table reports typed code");
  }

  // Unknown flag: usage error JSON.
  {
    const RunResult r = run(dir, "analyze --bogus-flag 1");
    expect(r.exit_code == 1, "unknown flag exits 1");
    expect(r.err.find("\"usage\"") != std::string::npos, "unknown flag usage error");
  }

  // Config file + flag override: the flag wins.
  {
    write(dir / "camp.conf",
          "campaign_id = from-file\n"
          "holdout_fraction = 0.1\n"
          "gibbs.enabled = false\n");
    write(dir / "counts.json",
          R"({"tw1":30,"tw0":470,"tl1":10,"tl0":490,"c1":20,"c0":480,"conv_t":40,)"
          R"("conv_tw":30,"conv_c":20,"uniq_t":1000,"uniq_tw":500,"uniq_c":500})");
    const RunResult r = run(dir, "analyze --config " + (dir / "camp.conf").string() +
                                     " --counts " + (dir / "counts.json").string() +
                                     " --campaign-id from-flag --table");
    expect(r.exit_code == 0, "config-file analyze exits 0");
    expect(r.out.find("\"campaign_id\": \"from-flag\"") != std::string::npos,
           "flag overrides config file");
    expect(r.out.find("\nfrom-flag,") != std::string::npos, "table row printed");
  }

  // Conflicting input forms.
  {
    const RunResult r = run(dir, "analyze --counts " + (dir / "counts.json").string() +
                                     " --impressions x.jsonl --events y.jsonl");
    expect(r.exit_code == 1 && r.err.find("\"config\"") != std::string::npos,
           "counts and logs together are rejected");
  }

  // Mixed-arm logs: validation error.
  {
    write(dir / "imp.jsonl",
          R"({"u":"x","t":1,"c":"c0","tag":"C"})" "\n"
          R"({"u":"x","t":2,"c":"c0","tag":"TW"})" "\n");
    write(dir / "ev.jsonl", "");
    const RunResult r = run(dir, "analyze --impressions " + (dir / "imp.jsonl").string() +
                                     " --events " + (dir / "ev.jsonl").string());
    expect(r.exit_code == 1, "mixed-arm logs exit 1");
    expect(r.err.find("\"validation\"") != std::string::npos, "mixed-arm validation code");
  }

  // Simulate with zero consumers: empty logs, exit 0.
  {
    const RunResult r =
        run(dir, "simulate --n 0 --out-dir " + (dir / "empty_sim").string());
    expect(r.exit_code == 0, "empty simulation exits 0");
    std::ifstream imps(dir / "empty_sim" / "impressions.jsonl");
    std::string line;
    expect(imps.good() && !std::getline(imps, line), "empty simulation writes empty logs");
  }

  // Contamination calculator golden values.
  {
    const RunResult r = run(dir, "contamination --k 1 --p 0.3 --a 0.5");
    expect(r.exit_code == 0 && r.out.find("\"diluted_atl\":0.5") != std::string::npos,
           "k=1 dilution returns the true lift");
    const RunResult r2 = run(dir, "contamination --k 2 --p 1.5 --a 0.5");
    expect(r2.exit_code == 1 && r2.err.find("\"domain\"") != std::string::npos,
           "out-of-domain holdout reports domain error");
  }

  fs::remove_all(dir);
  if (g_failures == 0) {
    std::cout << "cli checks passed\n";
    return 0;
  }
  std::cout << g_failures << " cli check(s) failed\n";
  return 1;
}
