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

#include <random>
#include <set>

#include "scrollforge/bruckbose.hpp"
#include "scrollforge/verify.hpp"

using namespace scrollforge;

namespace {

struct Fixture {
  FieldTower tw = make_tower(7);
  RegularSpread sp = build_spread(tw);
  SubplaneEmbedding emb = tangent_subplane(tw);
  BruckBoseScroll bb = subplane_to_scroll(sp, emb);
  Splash splash = splash_of(sp, emb, bb);
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

}  // namespace

TEST_CASE("regular spread partitions Sigma_inf") {
  auto& fx = fixture();
  CHECK(fx.sp.size() == 344);  // q^3 + 1
  CHECK(fx.sp.plane_of_point.size() == 19608);  // (q^6 - 1)/(q - 1)
  for (const Subspace& pi : fx.sp.planes) {
    CHECK(pi.r() == 2);
    CHECK(points_of(pi).size() == 57);
  }
  // Pairwise disjoint (partition already implies it; check meet() directly on
  // a sample of pairs).
  std::mt19937 rng(99);
  for (int t = 0; t < 500; ++t) {
    int i = static_cast<int>(rng() % fx.sp.size());
    int j = static_cast<int>(rng() % fx.sp.size());
    if (i == j) continue;
    CHECK(meet(fx.sp.planes[static_cast<size_t>(i)],
               fx.sp.planes[static_cast<size_t>(j)]).r() == -1);
  }
  // The plane of (1:0) is {x3 = x4 = x5 = x6 = 0}.
  Subspace first = fx.sp.planes[static_cast<size_t>(fx.sp.plane_index(param_finite(0)))];
  Subspace expected = Subspace::from_rows({make_vec(fx.tw.base, {1, 0, 0, 0, 0, 0, 0}),
                                           make_vec(fx.tw.base, {0, 1, 0, 0, 0, 0, 0}),
                                           make_vec(fx.tw.base, {0, 0, 1, 0, 0, 0, 0})});
  CHECK(first == expected);
}

TEST_CASE("affine correspondence") {
  auto& fx = fixture();
  const FieldSpec* E = fx.sp.ext();
  Vec origin = Vec::zero(E, 3);
  origin.c[2] = 1;  // (0:0:1)
  CHECK(affine_correspondence(fx.sp, origin) ==
        ProjPoint(fx.tw.base, {0, 0, 0, 0, 0, 0, 1}));

  Vec at_inf = Vec::zero(E, 3);
  at_inf.c[0] = 1;  // (1:0:0)
  CHECK_THROWS_AS(affine_correspondence(fx.sp, at_inf), GeometryError);

  // Round trip through bb_point_of on random affine points.
  std::mt19937 rng(7);
  for (int t = 0; t < 1000; ++t) {
    Vec p = Vec::zero(E, 3);
    p.c[0] = static_cast<uint16_t>(rng() % E->size);
    p.c[1] = static_cast<uint16_t>(rng() % E->size);
    p.c[2] = 1;
    ProjPoint img = affine_correspondence(fx.sp, p);
    Vec back = bb_point_of(fx.sp, img);
    CHECK(back.c[0] == p.c[0]);
    CHECK(back.c[1] == p.c[1]);
    CHECK(back.c[2] == 1);
  }
}

TEST_CASE("line correspondence preserves incidence") {
  auto& fx = fixture();
  const FieldSpec* E = fx.sp.ext();
  // The line x = 0 contains the spread plane of (0:1).
  Vec x_zero = Vec::zero(E, 3);
  x_zero.c[0] = 1;  // dual (1,0,0)
  Subspace three = line_correspondence(fx.sp, x_zero);
  CHECK(three.r() == 3);
  CHECK(three.contains_sub(fx.sp.planes[static_cast<size_t>(fx.sp.plane_index(param_inf()))]));

  std::mt19937 rng(13);
  for (int t = 0; t < 1000; ++t) {
    // Random affine point and a random line through it (not ell_inf).
    Vec p = Vec::zero(E, 3);
    p.c[0] = static_cast<uint16_t>(rng() % E->size);
    p.c[1] = static_cast<uint16_t>(rng() % E->size);
    p.c[2] = 1;
    Vec dual = Vec::zero(E, 3);
    uint16_t l0 = static_cast<uint16_t>(rng() % E->size);
    uint16_t l1 = static_cast<uint16_t>(rng() % E->size);
    if (l0 == 0 && l1 == 0) continue;
    dual.c[0] = l0;
    dual.c[1] = l1;
    dual.c[2] = E->neg(E->add(E->mul(l0, p.c[0]), E->mul(l1, p.c[1])));
    ProjPoint img = affine_correspondence(fx.sp, p);
    Subspace img_line = line_correspondence(fx.sp, dual);
    CHECK(img_line.contains(img));
  }
}

TEST_CASE("transversal triple") {
  auto& fx = fixture();
  TransversalTriple tr = transversals(fx.sp);  // incidence asserted on build
  const FieldTower& tw = fx.sp.tower;
  // Frobenius-conjugate as point sets: g -> g^q -> g^{q^2} -> g.
  for (int c = 0; c < 3; ++c) {
    std::set<ProjPoint> image;
    for (const ProjPoint& p : points_of(tr.lines[static_cast<size_t>(c)])) {
      Vec v = p.vec();
      for (int j = 0; j < 7; ++j)
        v.c[static_cast<size_t>(j)] = tw.frob_t[v.c[static_cast<size_t>(j)]];
      image.insert(ProjPoint::from_vec(v));
    }
    std::set<ProjPoint> target;
    for (const ProjPoint& p : points_of(tr.lines[static_cast<size_t>((c + 1) % 3)]))
      target.insert(p);
    CHECK(image == target);
  }
  // u is not rational: otherwise g would be fixed by Frobenius.
  bool fixed = true;
  for (uint16_t ui : tr.u)
    if (tw.frob_t[ui] != ui) fixed = false;
  CHECK_FALSE(fixed);
}

TEST_CASE("tangent subplane structure") {
  auto& fx = fixture();
  CHECK(fx.emb.points.size() == 57);  // q^2 + q + 1
  // Exactly one point on ell_inf, and it is (1:0:0).
  int on_inf = 0;
  for (const Vec& p : fx.emb.points)
    if (p.c[2] == 0) ++on_inf;
  CHECK(on_inf == 1);
  const Vec& t = fx.emb.points[static_cast<size_t>(fx.emb.tangent_idx)];
  CHECK(t.c[0] == 1);
  CHECK(t.c[1] == 0);
  CHECK(t.c[2] == 0);

  // Line-meeting profile: any two subplane points lie on a full subline, so
  // every line of PG(2,q^3) meets the subplane in 0, 1 or q+1 points.
  const FieldSpec* E = fx.sp.ext();
  auto count_on_line = [&](const Vec& dual) {
    int n = 0;
    for (const Vec& p : fx.emb.points)
      if (dot(dual, p) == 0) ++n;
    return n;
  };
  for (const Vec& dual : fx.emb.subline_duals) CHECK(count_on_line(dual) == 8);
  std::mt19937 rng(55);
  for (int trial = 0; trial < 2000; ++trial) {
    Vec dual = Vec::zero(E, 3);
    for (int j = 0; j < 3; ++j) dual.c[static_cast<size_t>(j)] = static_cast<uint16_t>(rng() % E->size);
    if (dual.is_zero()) continue;
    int n = count_on_line(dual);
    CHECK((n == 0 || n == 1 || n == 8));
  }
  // Exhaustive over all pairs: the joining line always meets in q+1 points.
  for (size_t i = 0; i < fx.emb.points.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      const Vec& a = fx.emb.points[i];
      const Vec& b = fx.emb.points[j];
      Vec dual = Vec::zero(E, 3);
      dual.c[0] = E->sub(E->mul(a.c[1], b.c[2]), E->mul(a.c[2], b.c[1]));
      dual.c[1] = E->sub(E->mul(a.c[2], b.c[0]), E->mul(a.c[0], b.c[2]));
      dual.c[2] = E->sub(E->mul(a.c[0], b.c[1]), E->mul(a.c[1], b.c[0]));
      CHECK(count_on_line(dual) == 8);
    }
}

TEST_CASE("subplane scroll and dictionary") {
  auto& fx = fixture();
  const RuledQuinticSurface& v = fx.bb.scroll;
  CHECK(v.points().size() == 64);
  CHECK(fx.bb.affine_map.size() == 56);  // q^2 + q affine points each way
  CHECK(fx.bb.alpha_plane_idx == fx.sp.plane_index(param_finite(0)));
  CHECK(v.alpha == fx.sp.planes[static_cast<size_t>(fx.bb.alpha_plane_idx)]);

  // V meets Sigma_inf exactly in the conic directrix.
  std::set<ProjPoint> at_inf;
  for (const ProjPoint& p : v.points())
    if (fx.sp.sigma_inf.on(p)) at_inf.insert(p);
  std::set<ProjPoint> conic(v.conic_points.begin(), v.conic_points.end());
  CHECK(at_inf == conic);

  // Equivalence with the canonical scroll, verified pointwise inside.
  RuledQuinticSurface canon = canonical_scroll(fx.tw.base);
  Mat m = equivalence_map(canon, v);
  for (const ProjPoint& p : canon.points())
    CHECK(v.point_set().count(ProjPoint::from_vec(vec_mat(p.vec(), m))) == 1);

  // In the cubic extension, the transversals are generators of the extended
  // scroll: every point of each transversal satisfies the pulled-back
  // quadrics over GF(q^3).
  TransversalTriple tr = transversals(fx.sp);
  Mat t_inv_ext = embed_mat(fx.tw, v.T_inv);
  for (const Subspace& g : tr.lines)
    for (const ProjPoint& p : points_of(g)) {
      Vec y = vec_mat(p.vec(), t_inv_ext);
      CHECK(QuadricSystem::vanishes(fx.tw.ext, y));
    }
}

TEST_CASE("splash") {
  auto& fx = fixture();
  CHECK(fx.splash.plane_indices.size() == 50);  // q^2 + 1
  CHECK(fx.splash.contains(fx.bb.alpha_plane_idx));
  // Non-splash planes exist: q^3 - q^2 of them.
  int non_splash = 0;
  for (int i = 0; i < fx.sp.size(); ++i)
    if (!fx.splash.contains(i)) ++non_splash;
  CHECK(non_splash == 294);
}

TEST_CASE("3-space profiles about spread planes") {
  auto& fx = fixture();
  int beta = -1, gamma = -1;
  for (int i = 0; i < fx.sp.size() && (beta < 0 || gamma < 0); ++i) {
    if (i == fx.bb.alpha_plane_idx) continue;
    if (fx.splash.contains(i) && beta < 0) beta = i;
    if (!fx.splash.contains(i) && gamma < 0) gamma = i;
  }
  ThreeSpaceProfile pb = classify_3spaces_about(fx.sp, fx.bb, beta);
  CHECK(pb.cubic_count == 1);
  CHECK(pb.le1_count == 342);
  ThreeSpaceProfile pg = classify_3spaces_about(fx.sp, fx.bb, gamma);
  CHECK(pg.cubic_count == 0);
  CHECK(pg.le1_count == 343);
  CHECK_THROWS_AS(classify_3spaces_about(fx.sp, fx.bb, fx.bb.alpha_plane_idx),
                  GeometryError);
}

TEST_CASE("the whole spread battery holds at q=8 and q=9") {
  // Even characteristic and the non-prime field, end to end.
  for (const char* name : {"splash", "3space-profiles", "plane-line-profiles"}) {
    VerifyResult r8 = run_theorem(name, 8, 1);
    INFO("q=8 " << name << " " << r8.detail);
    CHECK(r8.pass);
  }
  for (const char* name : {"splash", "transversals"}) {
    VerifyResult r9 = run_theorem(name, 9, 1);
    INFO("q=9 " << name << " " << r9.detail);
    CHECK(r9.pass);
  }
}

TEST_CASE("plane-line 5-space profiles: the worked cases") {
  auto& fx = fixture();
  int beta = -1, gamma = -1;
  for (int i = 0; i < fx.sp.size() && (beta < 0 || gamma < 0); ++i) {
    if (i == fx.bb.alpha_plane_idx) continue;
    if (fx.splash.contains(i) && beta < 0) beta = i;
    if (!fx.splash.contains(i) && gamma < 0) gamma = i;
  }
  auto lines = lines_of_plane(fx.bb.scroll.alpha);
  REQUIRE(lines.size() == 57);
  auto find_line = [&](int want_i) {
    for (const Subspace& l : lines) {
      int i = 0;
      for (const ProjPoint& c : fx.bb.scroll.conic_points)
        if (l.contains(c)) ++i;
      if (i == want_i) return l;
    }
    throw GeometryError("no line with the requested conic incidence");
  };

  Subspace secant = find_line(2), tangent = find_line(1), exterior = find_line(0);

  PlaneLineProfile p = classify_5spaces_plane_line(fx.sp, fx.bb, beta, secant);
  CHECK(p.i == 2);
  CHECK(p.quintic == 6);
  CHECK(p.cubic == 1);
  CHECK(p.quartic == 0);

  p = classify_5spaces_plane_line(fx.sp, fx.bb, gamma, secant);
  CHECK(p.quintic == 5);
  CHECK(p.quartic == 2);
  CHECK(p.cubic == 0);

  p = classify_5spaces_plane_line(fx.sp, fx.bb, gamma, exterior);
  CHECK(p.quintic == 7);
  CHECK(p.quartic == 0);

  p = classify_5spaces_plane_line(fx.sp, fx.bb, gamma, tangent);
  CHECK(p.quintic == 6);
  CHECK(p.quartic == 1);

  // A line not inside alpha is rejected.  (Alpha here is the spread plane of
  // T, which is {x3 = ... = x6 = 0}.)
  Subspace outside = Subspace::from_rows({make_vec(fx.tw.base, {1, 0, 0, 0, 0, 0, 0}),
                                          make_vec(fx.tw.base, {0, 0, 0, 0, 0, 0, 1})});
  REQUIRE_FALSE(fx.bb.scroll.alpha.contains_sub(outside));
  CHECK_THROWS_AS(classify_5spaces_plane_line(fx.sp, fx.bb, gamma, outside),
                  GeometryError);
}
