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
 * @file verify.hpp
 * @brief The named structural verifications behind `verify --theorem ...`:
 *        each runs a check exhaustively where the statement is exhaustive and
 *        by seeded sampling where it says sampled, and reports pass/fail with
 *        a counterexample payload on failure.
 */

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "scrollforge/bruckbose.hpp"
#include "scrollforge/census.hpp"
#include "scrollforge/errors.hpp"
#include "scrollforge/scroll.hpp"
#include "scrollforge/sections.hpp"

namespace scrollforge {

struct VerifyResult {
  std::string name;
  bool pass = false;
  std::string note;    ///< extra context on success
  std::string detail;  ///< counterexample payload on failure
  ojson report;        ///< structured per-theorem payload, where defined
  double wall_ms = 0.0;
};

inline const std::vector<std::string>& theorem_names() {
  static const std::vector<std::string> names = {
      "generators-independent", "line-law",           "conic-unique",
      "one-point-per-generator", "cubics-count",      "cubics-pairwise",
      "splash",                  "3space-profiles",   "plane-line-profiles",
      "quartic-alpha-point",     "nucleus",           "order-five-sample",
      "equivalence-roundtrip",   "transversals"};
  return names;
}

namespace verifydetail {

inline void expect(bool cond, const std::string& what) {
  if (!cond) throw TheoremViolation(what, 1, 0);
}

inline void expect_eq(uint64_t want, uint64_t got, const std::string& what) {
  if (want != got)
    throw TheoremViolation(what, static_cast<long long>(want),
                           static_cast<long long>(got));
}

// Deterministic sampling; mt19937_64 output is pinned by the standard, and
// no std distribution is used so runs reproduce across platforms.
struct DetRng {
  std::mt19937_64 eng;
  explicit DetRng(uint64_t seed) : eng(seed) {}
  uint64_t below(uint64_t n) { return eng() % n; }
};

inline Mat random_invertible(const FieldSpec* f, int n, DetRng& rng) {
  for (;;) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m.at(i, j) = static_cast<uint16_t>(rng.below(static_cast<uint64_t>(f->size)));
    Mat copy = m;
    if (rref(copy) == n) return m;
  }
}

// ---- individual theorems -------------------------------------------------

inline void generators_independent(const RuledQuinticSurface& v) {
  const int n = v.gen_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      expect(meet(v.generators[static_cast<size_t>(i)],
                  v.generators[static_cast<size_t>(j)]).r() < 0,
             "generators-pairwise-skew");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Subspace s = span(span(v.generators[static_cast<size_t>(i)],
                               v.generators[static_cast<size_t>(j)]),
                          v.generators[static_cast<size_t>(k)]);
        expect_eq(5, static_cast<uint64_t>(s.r()), "three-generators-span-5");
        for (int l = k + 1; l < n; ++l) {
          Subspace t = span(s, v.generators[static_cast<size_t>(l)]);
          expect_eq(6, static_cast<uint64_t>(t.r()), "four-generators-span-6");
        }
      }
}

inline void line_law(const RuledQuinticSurface& v, uint64_t seed) {
  const auto& pts = v.points();
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      Subspace line = span_points({pts[i], pts[j]});
      int on = 0;
      for (const ProjPoint& p : points_of(line))
        if (v.point_set().count(p)) ++on;
      int gi = v.locate(pts[i])->first, gj = v.locate(pts[j])->first;
      if (gi == gj)
        expect_eq(static_cast<uint64_t>(v.q()) + 1, static_cast<uint64_t>(on),
                  "secant-on-generator");
      else
        expect_eq(2, static_cast<uint64_t>(on), "secant-meets-twice");
    }
  // Random lines for the 0/1 cases of the law.
  DetRng rng(seed);
  NormalizedVecRange all(v.field, 6);
  for (int t = 0; t < 2000; ++t) {
    ProjPoint a = ProjPoint::from_vec(all.at(rng.below(all.size())));
    ProjPoint b = ProjPoint::from_vec(all.at(rng.below(all.size())));
    if (a == b) continue;
    int on = 0;
    for (const ProjPoint& p : points_of(span_points({a, b})))
      if (v.point_set().count(p)) ++on;
    expect(on == 0 || on == 1 || on == 2 || on == v.q() + 1, "line-law-values");
  }
}

inline void conic_unique(const RuledQuinticSurface& v) {
  SectionClassifier cls(v);
  HyperplaneRange hr(v.field, 6);
  uint64_t conic_sections = 0;
  for (uint64_t i = 0; i < hr.size(); ++i) {
    Vec d = hr.dual_at(i);
    if (cls.classify_fast(d).kind != SectionKind::conic) continue;
    ++conic_sections;
    Hyperplane h(d);
    std::vector<int> contained;
    for (int g = 0; g < v.gen_count(); ++g)
      if (h.contains(v.generators[static_cast<size_t>(g)])) contained.push_back(g);
    auto curve = cls.extract_curve(h, contained);
    for (int g = 0; g < v.gen_count(); ++g)
      expect(curve[static_cast<size_t>(g)] == v.conic_points[static_cast<size_t>(g)],
             "conic-section-curve-is-the-directrix");
  }
  expect_eq(hyperplanes_through(v.alpha).size(), conic_sections,
            "conic-sections-equal-hyperplanes-through-alpha");
}

inline void one_point_per_generator(const RuledQuinticSurface& v) {
  const FieldSpec* f = v.field;
  for (int e = 0; e < f->size; ++e)
    for (int c = 0; c < f->size; ++c) {
      auto pts = v.cross_section(FieldElement{f, static_cast<uint16_t>(e)},
                                 FieldElement{f, static_cast<uint16_t>(c)});
      std::vector<int> per_gen(static_cast<size_t>(v.gen_count()), 0);
      for (const ProjPoint& p : pts) {
        auto loc = v.locate(p);
        expect(loc.has_value(), "cross-section-on-scroll");
        ++per_gen[static_cast<size_t>(loc->first)];
      }
      for (int g = 0; g < v.gen_count(); ++g)
        expect_eq(1, static_cast<uint64_t>(per_gen[static_cast<size_t>(g)]),
                  "one-point-per-generator");
    }
}

inline void cubics_count(const RuledQuinticSurface& v) {
  const FieldSpec* f = v.field;
  std::set<std::vector<ProjPoint>> distinct;
  for (int e = 0; e < f->size; ++e)
    for (int c = 0; c < f->size; ++c) {
      auto pts = v.cross_section(FieldElement{f, static_cast<uint16_t>(e)},
                                 FieldElement{f, static_cast<uint16_t>(c)});
      expect(is_nrc(pts, 3), "cross-section-is-twisted-cubic");
      for (const ProjPoint& p : pts)
        expect(!v.alpha.contains(p), "cubic-avoids-conic-plane");
      std::sort(pts.begin(), pts.end());
      distinct.insert(pts);
    }
  expect_eq(static_cast<uint64_t>(f->size) * f->size, distinct.size(),
            "cubics-count-q2");
}

inline void cubics_pairwise(const RuledQuinticSurface& v) {
  const FieldSpec* f = v.field;
  std::vector<std::set<ProjPoint>> sets;
  for (int e = 0; e < f->size; ++e)
    for (int c = 0; c < f->size; ++c) {
      auto pts = v.cross_section(FieldElement{f, static_cast<uint16_t>(e)},
                                 FieldElement{f, static_cast<uint16_t>(c)});
      sets.emplace_back(pts.begin(), pts.end());
    }
  for (size_t i = 0; i < sets.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      int common = 0;
      for (const ProjPoint& p : sets[i])
        if (sets[j].count(p)) ++common;
      expect_eq(1, static_cast<uint64_t>(common), "cubics-meet-in-one-point");
    }
}

struct BbContext {
  RegularSpread spread;
  SubplaneEmbedding emb;
  BruckBoseScroll bb;
  Splash splash;
};

inline BbContext make_bb(int q) {
  FieldTower tw = make_tower(q);
  BbContext ctx{build_spread(tw), tangent_subplane(tw), {}, {}};
  ctx.bb = subplane_to_scroll(ctx.spread, ctx.emb);
  ctx.splash = splash_of(ctx.spread, ctx.emb, ctx.bb);
  return ctx;
}

inline void splash_theorem(const BbContext& ctx) {
  const uint64_t q = static_cast<uint64_t>(ctx.spread.q());
  expect_eq(q * q + 1, ctx.splash.plane_indices.size(), "splash-size");
  expect(ctx.splash.contains(ctx.bb.alpha_plane_idx), "alpha-in-splash");
  // The q^2 cubic 3-spaces meet Sigma_inf in exactly the splash minus alpha.
  const FieldSpec* f = ctx.spread.base();
  std::set<int> hit;
  for (int e = 0; e < f->size; ++e)
    for (int c = 0; c < f->size; ++c) {
      auto pts = ctx.bb.scroll.cross_section(
          FieldElement{f, static_cast<uint16_t>(e)},
          FieldElement{f, static_cast<uint16_t>(c)});
      Subspace pi3 = span_points(pts);
      expect_eq(3, static_cast<uint64_t>(pi3.r()), "cubic-spans-3-space");
      Subspace at_inf = meet(pi3, ctx.spread.sigma_inf_sub);
      expect_eq(2, static_cast<uint64_t>(at_inf.r()), "cubic-3-space-meets-sigma-in-plane");
      bool found = false;
      for (int idx : ctx.splash.plane_indices) {
        if (ctx.spread.planes[static_cast<size_t>(idx)] == at_inf) {
          expect(idx != ctx.bb.alpha_plane_idx, "cubic-plane-not-alpha");
          expect(hit.insert(idx).second, "cubic-planes-distinct");
          found = true;
          break;
        }
      }
      expect(found, "cubic-plane-in-splash");
    }
  expect_eq(q * q, hit.size(), "cubic-planes-exhaust-splash");
}

inline void three_space_profiles(const BbContext& ctx) {
  for (int idx = 0; idx < ctx.spread.size(); ++idx) {
    if (idx == ctx.bb.alpha_plane_idx) continue;
    ThreeSpaceProfile p = classify_3spaces_about(ctx.spread, ctx.bb, idx);
    int want = ctx.splash.contains(idx) ? 1 : 0;
    expect_eq(static_cast<uint64_t>(want), static_cast<uint64_t>(p.cubic_count),
              "3space-profile-cubics");
  }
}

inline ojson plane_line_profiles(const BbContext& ctx) {
  const int q = ctx.spread.q();
  auto lines = lines_of_plane(ctx.bb.scroll.alpha);
  for (int idx = 0; idx < ctx.spread.size(); ++idx) {
    if (idx == ctx.bb.alpha_plane_idx) continue;
    const bool in_splash = ctx.splash.contains(idx);
    for (const Subspace& ell : lines) {
      PlaneLineProfile p = classify_5spaces_plane_line(ctx.spread, ctx.bb, idx, ell);
      if (in_splash) {
        expect_eq(static_cast<uint64_t>(q - 1), static_cast<uint64_t>(p.quintic),
                  "plane-line-splash-quintics");
        expect_eq(1, static_cast<uint64_t>(p.cubic), "plane-line-splash-cubic");
        expect_eq(0, static_cast<uint64_t>(p.quartic), "plane-line-splash-quartics");
      } else {
        expect_eq(static_cast<uint64_t>(q - p.i), static_cast<uint64_t>(p.quintic),
                  "plane-line-nonsplash-quintics");
        expect_eq(0, static_cast<uint64_t>(p.cubic), "plane-line-nonsplash-cubic");
        expect_eq(static_cast<uint64_t>(p.i), static_cast<uint64_t>(p.quartic),
                  "plane-line-nonsplash-quartics");
      }
    }
  }
  // All (pi, ell) pairs in a case agree, so the case table is closed-form.
  ojson rep;
  rep["theorem"] = "count-plane-line";
  rep["q"] = q;
  ojson cases = ojson::array();
  for (const char* kind : {"splash", "nonsplash"}) {
    for (int i = 0; i <= 2; ++i) {
      ojson c;
      c["pi"] = kind;
      c["i"] = i;
      ojson prof;
      if (std::string(kind) == "splash") {
        prof["quintic"] = q - 1;
        prof["tc" + std::to_string(i)] = 1;
      } else {
        prof["quintic"] = q - i;
        if (i > 0) prof["quartic1"] = i;
      }
      c["profile"] = prof;
      cases.push_back(c);
    }
  }
  rep["cases"] = cases;
  return rep;
}

struct QuarticBranches {
  uint64_t meets_conic = 0;   ///< P = C meet N4
  uint64_t via_nucleus = 0;   ///< q even, curve misses C, 4-space through nucleus
};

/// For every QuarticNrc hyperplane: the curve's 4-space meets alpha in one
/// point P, and either P = C meet N4, or q is even and P is the nucleus.
inline QuarticBranches quartic_alpha_point(const RuledQuinticSurface& v) {
  SectionClassifier cls(v);
  HyperplaneRange hr(v.field, 6);
  std::set<ProjPoint> conic_set(v.conic_points.begin(), v.conic_points.end());
  ProjPoint nucleus;
  bool have_nucleus = v.field->p == 2;
  if (have_nucleus) nucleus = nucleus_of_conic(v);
  QuarticBranches out;
  for (uint64_t i = 0; i < hr.size(); ++i) {
    Vec d = hr.dual_at(i);
    if (cls.classify_fast(d).kind != SectionKind::quartic_nrc) continue;
    Hyperplane h(d);
    std::vector<int> contained;
    for (int g = 0; g < v.gen_count(); ++g)
      if (h.contains(v.generators[static_cast<size_t>(g)])) contained.push_back(g);
    Subspace four;
    auto curve = cls.extract_curve(h, contained, &four);
    expect_eq(4, static_cast<uint64_t>(four.r()), "quartic-spans-4-space");
    Subspace pt = meet(four, v.alpha);
    expect_eq(0, static_cast<uint64_t>(pt.r()), "quartic-4-space-meets-alpha-in-point");
    ProjPoint p = ProjPoint::from_vec(pt.basis().row_vec(0));
    std::vector<ProjPoint> on_conic;
    for (const ProjPoint& c : curve)
      if (conic_set.count(c)) on_conic.push_back(c);
    if (on_conic.size() == 1 && on_conic[0] == p) {
      ++out.meets_conic;
    } else if (on_conic.empty() && have_nucleus && p == nucleus) {
      ++out.via_nucleus;
    } else {
      throw TheoremViolation("quartic-alpha-point-branches", 1, 0);
    }
  }
  return out;
}

inline void order_five_sample(const RuledQuinticSurface& v, uint64_t seed,
                              uint64_t samples) {
  DetRng rng(seed);
  HyperplaneRange hr(v.field, 6);
  SectionClassifier cls(v);
  int max_hits = 0;
  uint64_t attained = 0, valid = 0;
  while (valid < samples) {
    Vec d1 = hr.dual_at(rng.below(hr.size()));
    Vec d2 = hr.dual_at(rng.below(hr.size()));
    if (d1 == d2) continue;
    bool has_generator = false;
    for (int g = 0; g < v.gen_count() && !has_generator; ++g) {
      const Subspace& gen = v.generators[static_cast<size_t>(g)];
      bool in1 = true, in2 = true;
      for (int r = 0; r < 2; ++r) {
        Vec row = gen.basis().row_vec(r);
        if (dot(d1, row) != 0) in1 = false;
        if (dot(d2, row) != 0) in2 = false;
      }
      has_generator = in1 && in2;
    }
    if (has_generator) continue;  // intersection not finite
    ++valid;
    int hits = 0;
    for (const ProjPoint& p : v.points())
      if (dot(d1, p.vec()) == 0 && dot(d2, p.vec()) == 0) ++hits;
    if (hits > max_hits) max_hits = hits;
    if (hits == 5) ++attained;
  }
  expect_eq(5, static_cast<uint64_t>(max_hits), "order-five-max");
  expect(attained > 0, "order-five-attained");
}

inline void equivalence_roundtrip(const RuledQuinticSurface& v, uint64_t seed) {
  const FieldSpec* f = v.field;
  equivalence_map(v, v);  // identity is a valid output
  DetRng rng(seed);
  for (int t = 0; t < 10; ++t) {
    Mat m = random_invertible(f, 7, rng);
    RuledQuinticSurface image = scroll_from_frames(
        mat_mul(v.conic_frame, m), mat_mul(v.cubic_frame, m), v.phi);
    equivalence_map(v, image);  // pointwise-verified internally
  }
  RuledQuinticSurface doubled =
      scroll_from_frames(v.conic_frame, v.cubic_frame, Pgl2::scale(f, 2));
  equivalence_map(v, doubled);
}

inline void transversal_theorem(const BbContext& ctx) {
  const RegularSpread& sp = ctx.spread;
  TransversalTriple tr = transversals(sp);  // incidence checked on build
  // Frobenius conjugacy as point sets, cycling g -> g^q -> g^q2 -> g.
  const FieldTower& tw = sp.tower;
  for (int c = 0; c < 3; ++c) {
    std::set<ProjPoint> image;
    for (const ProjPoint& p : points_of(tr.lines[static_cast<size_t>(c)])) {
      Vec v = p.vec();
      for (int j = 0; j < 7; ++j)
        v.c[static_cast<size_t>(j)] = tw.frob_t[v.c[static_cast<size_t>(j)]];
      image.insert(ProjPoint::from_vec(v));
    }
    std::set<ProjPoint> next;
    for (const ProjPoint& p : points_of(tr.lines[static_cast<size_t>((c + 1) % 3)]))
      next.insert(p);
    expect(image == next, "transversal-frobenius-cycle");
  }
  bool u_fixed = true;
  for (int j = 0; j < 3; ++j)
    if (tw.frob_t[tr.u[static_cast<size_t>(j)]] != tr.u[static_cast<size_t>(j)])
      u_fixed = false;
  expect(!u_fixed, "transversal-u-not-rational");

  // Uniqueness: every line meeting three fixed extended planes is determined
  // by its point on the first; filter the candidates against all planes.
  const Subspace& p1 = sp.planes_ext[0];
  const Subspace& p2 = sp.planes_ext[1];
  const Subspace& p3 = sp.planes_ext[2];
  std::vector<Subspace> found;
  for (const ProjPoint& a : points_of(p1)) {
    Subspace s2 = span(p2, Subspace::from_points({a}));
    Subspace s3 = span(p3, Subspace::from_points({a}));
    Subspace line = meet(s2, s3);
    if (line.r() != 1)
      throw InternalInconsistency("transversal candidate is not a line");
    bool all = true;
    for (const Subspace& plane : sp.planes_ext) {
      if (meet(line, plane).r() != 0) {
        all = false;
        break;
      }
    }
    if (!all) continue;
    bool known = false;
    for (const Subspace& s : found)
      if (s == line) known = true;
    if (!known) found.push_back(line);
  }
  expect_eq(3, found.size(), "transversal-triple-unique");
  for (const Subspace& g : tr.lines) {
    bool present = false;
    for (const Subspace& s : found)
      if (s == g) present = true;
    expect(present, "transversal-found-by-search");
  }
}

}  // namespace verifydetail

/// Runs one named verification at field order q.  `seed` drives every
/// sampled (non-exhaustive) check; exhaustive checks ignore it.
inline VerifyResult run_theorem(const std::string& name, int q, uint64_t seed,
                                int max_q = kHardMaxQ) {
  namespace vd = verifydetail;
  VerifyResult res;
  res.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    FieldTower tw = make_tower(q, max_q);
    RuledQuinticSurface v = canonical_scroll(tw.base);
    if (name == "generators-independent") {
      vd::generators_independent(v);
    } else if (name == "line-law") {
      vd::line_law(v, seed);
    } else if (name == "conic-unique") {
      vd::conic_unique(v);
    } else if (name == "one-point-per-generator") {
      vd::one_point_per_generator(v);
    } else if (name == "cubics-count") {
      vd::cubics_count(v);
    } else if (name == "cubics-pairwise") {
      vd::cubics_pairwise(v);
    } else if (name == "splash") {
      vd::splash_theorem(vd::make_bb(q));
    } else if (name == "3space-profiles") {
      vd::three_space_profiles(vd::make_bb(q));
    } else if (name == "plane-line-profiles") {
      res.report = vd::plane_line_profiles(vd::make_bb(q));
    } else if (name == "quartic-alpha-point") {
      auto b = vd::quartic_alpha_point(v);
      res.note = "meets-conic: " + std::to_string(b.meets_conic) +
                 ", via-nucleus: " + std::to_string(b.via_nucleus);
    } else if (name == "nucleus") {
      auto b = vd::quartic_alpha_point(v);
      if (q % 2 == 0) {
        ProjPoint nucleus = nucleus_of_conic(v);
        vd::expect(!v.contains(nucleus), "nucleus-off-scroll");
        res.note = "nucleus well-defined and off V; nucleus branch count " +
                   std::to_string(b.via_nucleus) + " of " +
                   std::to_string(b.meets_conic + b.via_nucleus) +
                   " quartic sections";
      } else {
        bool threw = false;
        try {
          nucleus_of_conic(v);
        } catch (const GeometryError&) {
          threw = true;
        }
        vd::expect(threw, "nucleus-rejects-odd-q");
        vd::expect_eq(0, b.via_nucleus, "no-nucleus-branch-at-odd-q");
        res.note = "no curve-misses-C quartic exists at odd q";
      }
    } else if (name == "order-five-sample") {
      vd::order_five_sample(v, seed, 10000);
      res.note = "10000 seeded 4-spaces";
    } else if (name == "equivalence-roundtrip") {
      vd::equivalence_roundtrip(v, seed);
    } else if (name == "transversals") {
      vd::transversal_theorem(vd::make_bb(q));
    } else {
      throw GeometryError("unknown theorem: " + name);
    }
    res.pass = true;
  } catch (const GeometryError&) {
    throw;  // usage error, not a verification outcome
  } catch (const FieldError&) {
    throw;
  } catch (const Error& e) {
    res.pass = false;
    res.detail = e.what();
  }
  res.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return res;
}

}  // namespace scrollforge
