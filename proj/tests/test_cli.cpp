/*
 * Copyright 2026 the scrollforge authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "scrollforge/cli.hpp"

using namespace scrollforge;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

/// The census report with the timing field stripped; everything else must be
/// byte-identical across runs and worker counts.
std::string stable_body(const std::string& path) {
  ojson j = ojson::parse(slurp(path));
  j.erase("wall_time_ms");
  return j.dump(2);
}

}  // namespace

TEST_CASE("census command: exit codes and report") {
  std::string out = tmp_path("census7.json");
  int rc = run_cli({"census", "--q", "7", "--out", out});
  CHECK(rc == 0);
  ojson j = ojson::parse(slurp(out));
  CHECK(j["q"] == 7);
  CHECK(j["table"]["quintic"] == 115248);
  CHECK(j["table"]["c3"] == 56);
  for (const auto& audit : j["audits"]) CHECK(audit["status"] == "pass");
  std::remove(out.c_str());

  CHECK(run_cli({"census", "--q", "6"}) == 2);
  CHECK(run_cli({"census", "--q", "7", "--format", "bogus"}) == 2);
  CHECK(run_cli({"census"}) == 2);  // --q required
}

TEST_CASE("census determinism across workers and runs") {
  std::string a = tmp_path("det_a.json"), b = tmp_path("det_b.json"),
              c = tmp_path("det_c.json"), d = tmp_path("det_d.json");
  REQUIRE(run_cli({"census", "--q", "7", "--workers", "1", "--out", a}) == 0);
  REQUIRE(run_cli({"census", "--q", "7", "--workers", "2", "--out", b}) == 0);
  REQUIRE(run_cli({"census", "--q", "7", "--workers", "8", "--out", c}) == 0);
  REQUIRE(run_cli({"census", "--q", "7", "--workers", "1", "--out", d}) == 0);
  std::string sa = stable_body(a);
  CHECK(sa == stable_body(b));
  CHECK(sa == stable_body(c));
  CHECK(sa == stable_body(d));
  for (const std::string& p : {a, b, c, d}) std::remove(p.c_str());
}

TEST_CASE("classify command") {
  std::string out = tmp_path("classify.json");
  REQUIRE(run_cli({"classify", "--q", "7", "--h", "1,0,0,0,0,0,0", "--out", out}) == 0);
  ojson j = ojson::parse(slurp(out));
  CHECK(j["type"] == "Conic");
  CHECK(j["g"] == 1);
  CHECK(j["span_dim"] == 2);
  CHECK(j["generators"] == ojson::array({"inf"}));

  REQUIRE(run_cli({"classify", "--q", "7", "--h", "0,0,0,0,1,0,0", "--out", out}) == 0);
  j = ojson::parse(slurp(out));
  CHECK(j["type"] == "TwistedCubic");
  CHECK(j["g"] == 1);
  CHECK(j["span_dim"] == 3);
  std::remove(out.c_str());

  CHECK(run_cli({"classify", "--q", "7", "--h", "0,0,0,0,0,0,0"}) == 2);
  CHECK(run_cli({"classify", "--q", "7", "--h", "1,2"}) == 2);
  CHECK(run_cli({"classify", "--q", "7", "--h", "1,0,0,0,0,0,9"}) == 2);
}

TEST_CASE("verify command") {
  CHECK(run_cli({"verify", "--q", "7", "--theorem", "nosuch"}) == 2);
  std::string out = tmp_path("verify.json");
  REQUIRE(run_cli({"verify", "--q", "7", "--theorem", "line-law", "--theorem",
                   "cubics-pairwise", "--out", out}) == 0);
  ojson j = ojson::parse(slurp(out));
  REQUIRE(j.size() == 2);
  CHECK(j[0]["theorem"] == "line-law");
  CHECK(j[0]["pass"] == true);
  CHECK(j[1]["theorem"] == "cubics-pairwise");
  std::remove(out.c_str());
}

TEST_CASE("verify emits the plane-line case report") {
  std::string out = tmp_path("planeline.json");
  REQUIRE(run_cli({"verify", "--q", "7", "--theorem", "plane-line-profiles",
                   "--out", out}) == 0);
  ojson j = ojson::parse(slurp(out));
  REQUIRE(j.size() == 1);
  const ojson& rep = j[0]["report"];
  CHECK(rep["theorem"] == "count-plane-line");
  CHECK(rep["q"] == 7);
  bool found = false;
  for (const auto& c : rep["cases"]) {
    if (c["pi"] == "splash" && c["i"] == 2) {
      CHECK(c["profile"]["quintic"] == 6);
      CHECK(c["profile"]["tc2"] == 1);
      found = true;
    }
  }
  CHECK(found);
  std::remove(out.c_str());
}

TEST_CASE("dump command") {
  std::string out = tmp_path("dump.json");
  REQUIRE(run_cli({"dump", "--q", "7", "--out", out}) == 0);
  ojson j = ojson::parse(slurp(out));
  CHECK(j["field"]["modulus"] == ojson::array({0, 1}));
  CHECK(j["conic_frame"].size() == 3);
  CHECK(j["cubic_frame"].size() == 4);
  CHECK(j["projectivity"] == ojson(std::vector<std::vector<int>>{{1, 0}, {0, 1}}));
  CHECK_FALSE(j.contains("points"));

  REQUIRE(run_cli({"dump", "--q", "7", "--points", "--out", out}) == 0);
  j = ojson::parse(slurp(out));
  CHECK(j["points"].size() == 64);
  std::remove(out.c_str());
}

TEST_CASE("SCROLLFORGE_MAX_Q overrides the default cap of 9") {
  unsetenv("SCROLLFORGE_MAX_Q");
  CHECK(run_cli({"dump", "--q", "11", "--out", tmp_path("cap.json")}) == 2);
  setenv("SCROLLFORGE_MAX_Q", "11", 1);
  CHECK(run_cli({"dump", "--q", "11", "--out", tmp_path("cap.json")}) == 0);
  unsetenv("SCROLLFORGE_MAX_Q");
  std::remove(tmp_path("cap.json").c_str());
}

TEST_CASE("verify all: fourteen theorems at q=7") {
  std::string out = tmp_path("verify_all.json");
  REQUIRE(run_cli({"verify", "--q", "7", "--theorem", "all", "--out", out}) == 0);
  ojson j = ojson::parse(slurp(out));
  REQUIRE(j.size() == 14);
  for (const auto& entry : j) CHECK(entry["pass"] == true);
  std::remove(out.c_str());
}

TEST_CASE("csv and md formats write through the CLI") {
  std::string out = tmp_path("census.csv");
  REQUIRE(run_cli({"census", "--q", "7", "--format", "csv", "--out", out}) == 0);
  std::string csv = slurp(out);
  CHECK(csv.find("section,count") == 0);
  CHECK(csv.find("quintic,115248") != std::string::npos);
  std::remove(out.c_str());

  out = tmp_path("census.md");
  REQUIRE(run_cli({"census", "--q", "7", "--format", "md", "--out", out}) == 0);
  CHECK(slurp(out).find("| quintic | 115248 |") != std::string::npos);
  std::remove(out.c_str());
}
