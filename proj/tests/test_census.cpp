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

#include "scrollforge/census.hpp"

using namespace scrollforge;

TEST_CASE("master table at q=7") {
  RuledQuinticSurface v = canonical_scroll(FieldSpec::get(7, 1));
  TableCounts t = hyperplane_census_raw(v);
  CHECK(t[kQuintic] == 115248);
  CHECK(t[kQuartic1] == 18816);
  CHECK(t[kTc0] == 1029);
  CHECK(t[kTc1] == 392);
  CHECK(t[kTc2] == 1372);
  CHECK(t[kC0] == 112);
  CHECK(t[kC1] == 176);
  CHECK(t[kC2] == 56);
  CHECK(t[kC3] == 56);
  uint64_t total = 0;
  for (uint64_t c : t) total += c;
  CHECK(total == 137257);
}

TEST_CASE("master table at q=8") {
  RuledQuinticSurface v = canonical_scroll(FieldSpec::get(2, 3));
  TableCounts t = hyperplane_census_raw(v);
  TableCounts want{258048, 36288, 1792, 576, 2304, 168, 261, 72, 84};
  CHECK(t == want);
  uint64_t total = 0;
  for (uint64_t c : t) total += c;
  CHECK(total == 299593);
}

TEST_CASE("r census equals the conic rows") {
  RuledQuinticSurface v7 = canonical_scroll(FieldSpec::get(7, 1));
  auto r7 = r_census(v7);
  CHECK(r7 == std::array<uint64_t, 4>{112, 176, 56, 56});
  uint64_t sum = r7[0] + r7[1] + r7[2] + r7[3];
  CHECK(sum == 400);  // q^3 + q^2 + q + 1

  RuledQuinticSurface v8 = canonical_scroll(FieldSpec::get(2, 3));
  auto r8 = r_census(v8);
  CHECK(r8 == std::array<uint64_t, 4>{168, 261, 72, 84});
  CHECK(r8[0] + r8[1] + r8[2] + r8[3] == 585);
}

TEST_CASE("s census identical over all cubics at q=7") {
  const FieldSpec* f = FieldSpec::get(7, 1);
  RuledQuinticSurface v = canonical_scroll(f);
  std::array<uint64_t, 3> want{21, 8, 28};
  for (int e = 0; e < 7; ++e)
    for (int c = 0; c < 7; ++c)
      CHECK(s_census(v, FieldElement{f, static_cast<uint16_t>(e)},
                     FieldElement{f, static_cast<uint16_t>(c)}) == want);
  CHECK(want[0] + want[1] + want[2] == 57);

  const FieldSpec* f8 = FieldSpec::get(2, 3);
  RuledQuinticSurface v8 = canonical_scroll(f8);
  CHECK(s_census(v8, FieldElement{f8, 0}, FieldElement{f8, 0}) ==
        std::array<uint64_t, 3>{28, 9, 36});
}

TEST_CASE("curve inventory") {
  RuledQuinticSurface v = canonical_scroll(FieldSpec::get(7, 1));
  TableCounts t = hyperplane_census_raw(v);
  Inventory inv = curve_inventory(v, t);
  CHECK(inv.lines == 8);
  CHECK(inv.conics == 1);
  CHECK(inv.cubics == 49);
  CHECK(inv.quartics == 2352);  // 18816 / 8, exact
  CHECK(inv.quintics == 115248);
  CHECK(18816 % 8 == 0);

  RuledQuinticSurface v8 = canonical_scroll(FieldSpec::get(2, 3));
  TableCounts t8 = hyperplane_census_raw(v8);
  Inventory inv8 = curve_inventory(v8, t8);
  CHECK(inv8.quartics == 4032);  // 36288 / 9 = 8^4 - 8^2
}

TEST_CASE("double count audit") {
  RuledQuinticSurface v = canonical_scroll(FieldSpec::get(7, 1));
  TableCounts t = hyperplane_census_raw(v);
  Audit a = double_count_audit(7, t);
  CHECK(a.pass);
  CHECK(a.expected == 1254912);  // 64 * 19608
  CHECK(a.actual == 1254912);
  // Per-type point counts behind the audit: a quartic section has 2q+1 = 15
  // points, a two-generator cubic section has iq+q+1 = 22.
  CHECK(2 * 7 + 1 == 15);
  CHECK(2 * 7 + 7 + 1 == 22);
}

TEST_CASE("worker-count independence") {
  RuledQuinticSurface v = canonical_scroll(FieldSpec::get(7, 1));
  TableCounts t1 = hyperplane_census_raw(v, 1);
  TableCounts t2 = hyperplane_census_raw(v, 2);
  TableCounts t8 = hyperplane_census_raw(v, 8);
  CHECK(t1 == t2);
  CHECK(t1 == t8);
}

TEST_CASE("full census run: audits, report, renderings") {
  RuledQuinticSurface v = canonical_scroll(FieldSpec::get(7, 1));
  CensusReport rep = run_census(v, 2);
  CHECK(rep.all_pass());
  for (const Audit& a : rep.audits) {
    INFO(a.name);
    CHECK(a.pass);
  }

  ojson j = census_json(rep);
  CHECK(j["q"] == 7);
  CHECK(j["field"]["p"] == 7);
  CHECK(j["field"]["k"] == 1);
  CHECK(j["field"]["modulus"] == ojson::array({0, 1}));
  CHECK(j["table"]["quintic"] == 115248);
  CHECK(j["r"] == ojson::array({112, 176, 56, 56}));
  CHECK(j["s"] == ojson::array({21, 8, 28}));
  CHECK(j["inventory"]["quartics"] == 2352);
  // Stable key order: q first, wall_time_ms last.
  auto it = j.begin();
  CHECK(it.key() == "q");
  CHECK(j.rbegin().key() == "wall_time_ms");
  // Lossless round trip.
  ojson parsed = ojson::parse(j.dump(2));
  CHECK(parsed == j);

  std::string csv = census_csv(rep);
  CHECK(csv.find("quintic,115248") != std::string::npos);
  CHECK(csv.find("double_count,pass") != std::string::npos);
  std::string md = census_md(rep);
  CHECK(md.find("| quintic | 115248 |") != std::string::npos);
}

TEST_CASE("checked census op returns when every identity holds") {
  RuledQuinticSurface v = canonical_scroll(FieldSpec::get(7, 1));
  CensusReport rep = hyperplane_census(v, 2);  // throws on any mismatch
  CHECK(rep.all_pass());
  CHECK(rep.table == expected_table(7));
}

TEST_CASE("every audit holds at q=8 and q=9") {
  for (auto [p, k] : {std::pair{2, 3}, std::pair{3, 2}}) {
    RuledQuinticSurface v = canonical_scroll(FieldSpec::get(p, k));
    CensusReport rep = run_census(v, 2);
    for (const Audit& a : rep.audits) {
      INFO(rep.q << " " << a.name);
      CHECK(a.pass);
    }
  }
}

TEST_CASE("theorem violation carries both numbers") {
  TheoremViolation tv("table.quintic", 115248, 7);
  CHECK(tv.theorem == "table.quintic");
  CHECK(tv.expected == 115248);
  CHECK(tv.actual == 7);
  CHECK(std::string(tv.what()).find("115248") != std::string::npos);
  // The checked census op throws on a (synthetic) mismatch.
  CHECK_THROWS_AS(throw tv, TheoremViolation);
}

TEST_CASE("closed-form oracles are internally consistent") {
  for (int q : {7, 8, 9, 11, 13, 16}) {
    TableCounts t = expected_table(q);
    uint64_t total = 0;
    for (uint64_t c : t) total += c;
    CHECK(total == hyperplane_total(q));
    auto r = expected_r(q);
    CHECK(r[0] + r[1] + r[2] + r[3] ==
          ipow(static_cast<uint64_t>(q), 3) + static_cast<uint64_t>(q) * q + q + 1);
    auto s = expected_s(q);
    CHECK(s[0] + s[1] + s[2] == static_cast<uint64_t>(q) * q + q + 1);
  }
}
