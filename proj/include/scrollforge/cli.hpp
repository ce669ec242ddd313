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

/**
 * @file cli.hpp
 * @brief Command-line front end: census, verify, classify and dump.
 *
 * Exit codes: 0 all checks pass; 1 a counting identity or verification
 * failed (the report is still written, with the failing entries); 2 usage
 * error (bad q, malformed flags, unknown theorem).  SCROLLFORGE_MAX_Q
 * overrides the q cap (default 9).
 */

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scrollforge/census.hpp"
#include "scrollforge/verify.hpp"

namespace scrollforge {

struct RunConfig {
  int q = 7;
  int workers = 1;
  std::string format = "json";  // json | csv | md
  std::string out;              // empty = stdout
  std::vector<std::string> theorems{"all"};
  uint64_t sample_seed = 20260101;
  std::vector<int> h;  // classify: 7 coefficients
  bool include_points = false;
  int max_q = default_max_q();
};

namespace clidetail {

inline void write_output(const RunConfig& cfg, const std::string& body) {
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw GeometryError("cannot open output file: " + cfg.out);
  f << body;
}

inline ojson section_report_json(const RuledQuinticSurface& v,
                                 const SectionReport& rep) {
  ojson j;
  std::vector<int> dual;
  for (int i = 0; i < 7; ++i) dual.push_back(rep.hyperplane.dual().c[static_cast<size_t>(i)]);
  j["hyperplane"] = dual;
  j["type"] = section_kind_name(rep.type.kind);
  j["g"] = rep.type.g;
  std::vector<std::string> gens;
  for (int g : rep.contained_generators)
    gens.push_back(param_str(v.params[static_cast<size_t>(g)]));
  j["generators"] = gens;
  j["span_dim"] = static_cast<int>(rep.type.kind);
  ojson curve = ojson::array();
  for (const ProjPoint& p : rep.curve_points) {
    std::vector<int> c;
    for (int i = 0; i < 7; ++i) c.push_back(p.vec().c[static_cast<size_t>(i)]);
    curve.push_back(c);
  }
  j["curve_points"] = curve;
  return j;
}

inline ojson mat_json(const Mat& m) {
  ojson rows = ojson::array();
  for (int i = 0; i < m.rows; ++i) {
    std::vector<int> row;
    for (int j = 0; j < m.cols; ++j) row.push_back(m.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline int cmd_census(const RunConfig& cfg) {
  FieldTower tw = make_tower(cfg.q, cfg.max_q);
  RuledQuinticSurface v = canonical_scroll(tw.base);
  CensusReport rep = run_census(v, cfg.workers);
  std::string body;
  if (cfg.format == "json")
    body = census_json(rep).dump(2) + "\n";
  else if (cfg.format == "csv")
    body = census_csv(rep);
  else if (cfg.format == "md")
    body = census_md(rep);
  else
    throw GeometryError("unknown format: " + cfg.format);
  write_output(cfg, body);
  return rep.all_pass() ? 0 : 1;
}

inline int cmd_verify(const RunConfig& cfg) {
  std::vector<std::string> names;
  for (const std::string& t : cfg.theorems) {
    if (t == "all") {
      for (const std::string& n : theorem_names()) names.push_back(n);
    } else {
      bool known = false;
      for (const std::string& n : theorem_names())
        if (n == t) known = true;
      if (!known) throw GeometryError("unknown theorem: " + t);
      names.push_back(t);
    }
  }
  bool all_pass = true;
  ojson results = ojson::array();
  for (const std::string& name : names) {
    VerifyResult r = run_theorem(name, cfg.q, cfg.sample_seed, cfg.max_q);
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
    if (!r.note.empty()) std::cout << " (" << r.note << ")";
    if (!r.detail.empty()) std::cout << " [" << r.detail << "]";
    std::cout << "\n";
    ojson e;
    e["theorem"] = r.name;
    e["q"] = cfg.q;
    e["pass"] = r.pass;
    if (!r.note.empty()) e["note"] = r.note;
    if (!r.detail.empty()) e["detail"] = r.detail;
    if (!r.report.is_null()) e["report"] = r.report;
    results.push_back(e);
  }
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw GeometryError("cannot open output file: " + cfg.out);
    f << results.dump(2) << "\n";
  }
  return all_pass ? 0 : 1;
}

inline int cmd_classify(const RunConfig& cfg) {
  if (cfg.h.size() != 7)
    throw GeometryError("--h needs exactly 7 coefficients");
  FieldTower tw = make_tower(cfg.q, cfg.max_q);
  Vec dual = Vec::zero(tw.base, 7);
  bool nonzero = false;
  for (int i = 0; i < 7; ++i) {
    int c = cfg.h[static_cast<size_t>(i)];
    if (c < 0 || c >= cfg.q)
      throw GeometryError("--h coefficients are element indices in [0, q)");
    dual.c[static_cast<size_t>(i)] = static_cast<uint16_t>(c);
    nonzero = nonzero || c != 0;
  }
  if (!nonzero) throw GeometryError("--h must not be the zero vector");
  RuledQuinticSurface v = canonical_scroll(tw.base);
  SectionReport rep = classify(v, Hyperplane(dual));
  write_output(cfg, section_report_json(v, rep).dump(2) + "\n");
  return 0;
}

inline int cmd_dump(const RunConfig& cfg) {
  FieldTower tw = make_tower(cfg.q, cfg.max_q);
  RuledQuinticSurface v = canonical_scroll(tw.base);
  ojson j;
  j["q"] = cfg.q;
  j["field"] = field_json(tw.base);
  j["conic_frame"] = mat_json(v.conic_frame);
  j["cubic_frame"] = mat_json(v.cubic_frame);
  ojson phi;
  phi.push_back(std::vector<int>{v.phi.a, v.phi.b});
  phi.push_back(std::vector<int>{v.phi.c, v.phi.d});
  j["projectivity"] = phi;
  if (cfg.include_points) {
    ojson pts = ojson::array();
    for (const ProjPoint& p : v.points()) {
      std::vector<int> c;
      for (int i = 0; i < 7; ++i) c.push_back(p.vec().c[static_cast<size_t>(i)]);
      pts.push_back(c);
    }
    j["points"] = pts;
  }
  write_output(cfg, j.dump(2) + "\n");
  return 0;
}

}  // namespace clidetail

/// Entry point shared by the binary and the tests.
inline int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"ruled quintic surface census and verification"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--q", cfg.q, "field order, a prime power >= 7")->required();
    sub->add_option("--workers", cfg.workers, "worker thread count");
    sub->add_option("--format", cfg.format, "output format: json, csv, md");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--seed", cfg.sample_seed, "seed for sampled properties");
  };

  CLI::App* census = app.add_subcommand(
      "census", "hyperplane master table, r/s tallies, inventory, audits");
  add_common(census);
  CLI::App* verify = app.add_subcommand(
      "verify", "run named structural verifications (see --theorem)");
  add_common(verify);
  std::string theorem_help = "theorem name or 'all'; known:";
  for (const std::string& n : theorem_names()) theorem_help += " " + n;
  verify->add_option("--theorem", cfg.theorems, theorem_help);
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "classify one hyperplane section of the canonical scroll");
  add_common(classify_cmd);
  classify_cmd
      ->add_option("--h", cfg.h,
                   "7 comma-separated dual coefficients (element indices)")
      ->required()
      ->delimiter(',');
  CLI::App* dump = app.add_subcommand("dump", "serialize the canonical scroll");
  add_common(dump);
  dump->add_flag("--points", cfg.include_points, "include the full point list");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (census->parsed()) return clidetail::cmd_census(cfg);
    if (verify->parsed()) return clidetail::cmd_verify(cfg);
    if (classify_cmd->parsed()) return clidetail::cmd_classify(cfg);
    if (dump->parsed()) return clidetail::cmd_dump(cfg);
  } catch (const FieldError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace scrollforge
