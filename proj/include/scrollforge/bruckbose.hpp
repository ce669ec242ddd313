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
 * @file bruckbose.hpp
 * @brief The Bruck-Bose representation of PG(2,q^3) in PG(6,q): the regular
 *        2-spread from field reduction, its transversal lines in the cubic
 *        extension, the tangent-subplane to scroll correspondence, the splash,
 *        and the spread-relative incidence classifications.
 *
 * Coordinate model: PG(6,q) is GF(q^3)^2 x GF(q) over the basis {1, w, w^2},
 * coordinates (x0..x6) with (x0,x1,x2) the first GF(q^3) slot, (x3,x4,x5) the
 * second, and x6 the affine coordinate.  Sigma_inf is {x6 = 0}; the spread
 * plane of (a:b) in PG(1,q^3) is the projectivization of {(la, lb)}.  Affine
 * points (x:y:1) of PG(2,q^3) map to (expand(x), expand(y), 1).
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scrollforge/errors.hpp"
#include "scrollforge/gf.hpp"
#include "scrollforge/projgeom.hpp"
#include "scrollforge/scroll.hpp"
#include "scrollforge/sections.hpp"

namespace scrollforge {

inline Vec embed_vec(const FieldTower& tw, const Vec& v) {
  Vec out = Vec::zero(tw.ext, v.len);
  for (int i = 0; i < v.len; ++i)
    out.c[static_cast<size_t>(i)] = tw.embed_t[v.c[static_cast<size_t>(i)]];
  return out;
}

inline Mat embed_mat(const FieldTower& tw, const Mat& m) {
  Mat out(tw.ext, m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out.at(i, j) = tw.embed_t[m.at(i, j)];
  return out;
}

inline Subspace embed_subspace(const FieldTower& tw, const Subspace& s) {
  return Subspace::from_mat(embed_mat(tw, s.basis()));
}

// ---------------------------------------------------------------------------

/// The regular 2-spread of Sigma_inf = {x6 = 0} obtained by field reduction,
/// its q^3+1 planes indexed by the points (a:b) of PG(1,q^3).
struct RegularSpread {
  FieldTower tower;
  Hyperplane sigma_inf;
  Subspace sigma_inf_sub;
  std::vector<Param> plane_params;  ///< (1:b) for b in GF(q^3), then (0:1)
  std::vector<Subspace> planes;     ///< same order; subspaces of PG(6,q)
  std::vector<Subspace> planes_ext; ///< extensions to PG(6,q^3)
  std::unordered_map<ProjPoint, int, ProjPointHash> plane_of_point;

  const FieldSpec* base() const { return tower.base; }
  const FieldSpec* ext() const { return tower.ext; }
  int q() const { return tower.base->size; }
  int size() const { return static_cast<int>(planes.size()); }  // q^3 + 1

  int plane_index(Param ab) const {
    return is_inf(ab) ? tower.ext->size : ab.y;
  }
  /// Index of the spread plane containing a point of Sigma_inf.
  int plane_of(const ProjPoint& p) const {
    auto it = plane_of_point.find(p);
    if (it == plane_of_point.end())
      throw GeometryError("point not in Sigma_inf");
    return it->second;
  }
};

inline RegularSpread build_spread(const FieldTower& tower) {
  RegularSpread sp;
  sp.tower = tower;
  const FieldSpec* base = tower.base;
  const FieldSpec* ext = tower.ext;
  sp.sigma_inf = Hyperplane(base, {0, 0, 0, 0, 0, 0, 1});
  sp.sigma_inf_sub = sp.sigma_inf.to_subspace();

  // Parameters (1:b) for every b, then (0:1); plane_index matches this order.
  for (int b = 0; b < ext->size; ++b)
    sp.plane_params.push_back(param_finite(static_cast<uint16_t>(b)));
  sp.plane_params.push_back(param_inf());

  const uint16_t w = tower.omega;
  for (Param ab : sp.plane_params) {
    std::vector<Vec> rows;
    uint16_t lambda = 1;
    for (int j = 0; j < 3; ++j) {
      uint16_t la = ext->mul(lambda, ab.x);
      uint16_t lb = ext->mul(lambda, ab.y);
      const auto& ea = tower.expand_t[la];
      const auto& eb = tower.expand_t[lb];
      Vec row = Vec::zero(base, 7);
      for (int t = 0; t < 3; ++t) {
        row.c[static_cast<size_t>(t)] = ea[static_cast<size_t>(t)];
        row.c[static_cast<size_t>(3 + t)] = eb[static_cast<size_t>(t)];
      }
      rows.push_back(row);
      lambda = ext->mul(lambda, w);
    }
    Subspace plane = Subspace::from_rows(rows);
    if (plane.r() != 2)
      throw InternalInconsistency("spread plane is not a plane");
    sp.planes_ext.push_back(embed_subspace(tower, plane));
    sp.planes.push_back(std::move(plane));
  }

  // Partition check: the planes tile Sigma_inf with no overlap.
  for (int i = 0; i < sp.size(); ++i) {
    for (const ProjPoint& p : points_of(sp.planes[static_cast<size_t>(i)])) {
      if (!sp.sigma_inf.on(p))
        throw InternalInconsistency("spread plane leaves Sigma_inf");
      if (!sp.plane_of_point.emplace(p, i).second)
        throw InternalInconsistency("spread planes overlap");
    }
  }
  const uint64_t expect =
      (ipow(static_cast<uint64_t>(base->size), 6) - 1) /
      (static_cast<uint64_t>(base->size) - 1);
  if (sp.plane_of_point.size() != expect)
    throw InternalInconsistency("spread does not cover Sigma_inf");
  return sp;
}

// ---------------------------------------------------------------------------
// The plane PG(2,q^3) and the point/line correspondence.

/// Affine point (x:y:1) of PG(2,q^3) to its PG(6,q) point.
inline ProjPoint affine_correspondence(const RegularSpread& sp, const Vec& bb) {
  if (bb.f != sp.ext() || bb.len != 3)
    throw GeometryError("expected a point of PG(2,q^3)");
  uint16_t z = bb.c[2];
  if (z == 0) throw GeometryError("point lies on the line at infinity");
  uint16_t zi = sp.ext()->inv(z);
  const auto& ex = sp.tower.expand_t[sp.ext()->mul(bb.c[0], zi)];
  const auto& ey = sp.tower.expand_t[sp.ext()->mul(bb.c[1], zi)];
  Vec v = Vec::zero(sp.base(), 7);
  for (int t = 0; t < 3; ++t) {
    v.c[static_cast<size_t>(t)] = ex[static_cast<size_t>(t)];
    v.c[static_cast<size_t>(3 + t)] = ey[static_cast<size_t>(t)];
  }
  v.c[6] = 1;
  return ProjPoint::from_vec(v);
}

/// Inverse of affine_correspondence.
inline Vec bb_point_of(const RegularSpread& sp, const ProjPoint& p) {
  const Vec& v = p.vec();
  if (v.f != sp.base() || v.len != 7)
    throw GeometryError("expected a point of PG(6,q)");
  if (v.c[6] == 0) throw GeometryError("point lies in Sigma_inf");
  uint16_t zi = sp.base()->inv(v.c[6]);
  auto fe = [&](int i) { return FieldElement{sp.base(), sp.base()->mul(v.c[static_cast<size_t>(i)], zi)}; };
  FieldElement x = sp.tower.compose(fe(0), fe(1), fe(2));
  FieldElement y = sp.tower.compose(fe(3), fe(4), fe(5));
  Vec bb = Vec::zero(sp.ext(), 3);
  bb.c[0] = x.idx();
  bb.c[1] = y.idx();
  bb.c[2] = 1;
  return bb;
}

/// The point of ell_inf on a line of PG(2,q^3) given by its dual covector,
/// as a PG(1,q^3) parameter.  The line must not be ell_inf itself.
inline Param line_at_infinity_param(const RegularSpread& sp, const Vec& dual) {
  uint16_t l0 = dual.c[0], l1 = dual.c[1];
  if (l0 == 0 && l1 == 0) throw GeometryError("line is ell_inf");
  // Point (-l1 : l0 : 0).
  uint16_t a = sp.ext()->neg(l1), b = l0;
  if (a != 0) return param_finite(sp.ext()->div(b, a));
  return param_inf();
}

/// The 3-space of PG(6,q) corresponding to a line of PG(2,q^3) (not ell_inf):
/// the span of its spread plane and the image of one of its affine points.
inline Subspace line_correspondence(const RegularSpread& sp, const Vec& dual) {
  Param inf_pt = line_at_infinity_param(sp, dual);
  const Subspace& plane = sp.planes[static_cast<size_t>(sp.plane_index(inf_pt))];
  // An affine point on the line: solve l0 x + l1 y + l2 = 0.
  const FieldSpec* E = sp.ext();
  Vec pt = Vec::zero(E, 3);
  if (dual.c[0] != 0) {
    pt.c[0] = E->neg(E->div(dual.c[2], dual.c[0]));
    pt.c[1] = 0;
  } else {
    pt.c[0] = 0;
    pt.c[1] = E->neg(E->div(dual.c[2], dual.c[1]));
  }
  pt.c[2] = 1;
  ProjPoint img = affine_correspondence(sp, pt);
  Subspace three = span(plane, Subspace::from_points({img}));
  if (three.r() != 3)
    throw InternalInconsistency("line correspondence is not a 3-space");
  return three;
}

// ---------------------------------------------------------------------------
// Transversals.

struct TransversalTriple {
  std::array<Subspace, 3> lines;  ///< g, g^q, g^{q^2} in PG(6,q^3), x6 = 0
  std::array<uint16_t, 3> u;      ///< the Vandermonde solution over GF(q^3)
};

/// The three conjugate transversal lines of the spread in the cubic
/// extension.  u solves the Vandermonde system in the conjugates of omega;
/// the exhaustive incidence check against every extended plane is the safety
/// net for the closed form.
inline TransversalTriple transversals(const RegularSpread& sp) {
  const FieldSpec* E = sp.ext();
  const FieldTower& tw = sp.tower;
  uint16_t w = tw.omega;
  uint16_t wq = tw.frob_t[w];
  uint16_t wq2 = tw.frob_t[wq];

  // Rows: (1, w^q, w^2q | 0), (1, w^q2, w^2q2 | 0), (1, w, w^2 | 1).
  Mat aug(E, 3, 4);
  auto set_row = [&](int r, uint16_t om, uint16_t rhs) {
    aug.at(r, 0) = 1;
    aug.at(r, 1) = om;
    aug.at(r, 2) = E->mul(om, om);
    aug.at(r, 3) = rhs;
  };
  set_row(0, wq, 0);
  set_row(1, wq2, 0);
  set_row(2, w, 1);
  if (rref(aug) != 3)
    throw InternalInconsistency("singular Vandermonde system for transversals");
  std::array<uint16_t, 3> u{};
  for (int i = 0; i < 3; ++i) u[static_cast<size_t>(i)] = aug.at(i, 3);

  TransversalTriple out;
  out.u = u;
  std::array<uint16_t, 3> cur = u;
  for (int c = 0; c < 3; ++c) {
    Vec r1 = Vec::zero(E, 7), r2 = Vec::zero(E, 7);
    for (int t = 0; t < 3; ++t) {
      r1.c[static_cast<size_t>(t)] = cur[static_cast<size_t>(t)];
      r2.c[static_cast<size_t>(3 + t)] = cur[static_cast<size_t>(t)];
    }
    out.lines[static_cast<size_t>(c)] = Subspace::from_rows({r1, r2});
    if (out.lines[static_cast<size_t>(c)].r() != 1)
      throw InternalInconsistency("transversal is not a line");
    for (int t = 0; t < 3; ++t)
      cur[static_cast<size_t>(t)] = tw.frob_t[cur[static_cast<size_t>(t)]];
  }

  for (const Subspace& plane : sp.planes_ext)
    for (const Subspace& g : out.lines)
      if (meet(g, plane).r() != 0)
        throw InternalInconsistency(
            "transversal does not meet an extended spread plane in one point");
  return out;
}

// ---------------------------------------------------------------------------
// The tangent subplane and its scroll.

/// The fixed GF(q)-subplane of PG(2,q^3) tangent to ell_inf: the image of the
/// standard subplane under (x:y:z) -> (z : y : x + w y), which sends the line
/// {x + w y = 0} to ell_inf and the point (0:0:1) to T = (1:0:0).
struct SubplaneEmbedding {
  FieldTower tower;
  std::vector<Vec> points;  ///< q^2+q+1 normalized points over GF(q^3)
  int tangent_idx = -1;     ///< index of T
  /// One entry per line of PG(2,q): the member indices of the subline and the
  /// dual of the PG(2,q^3) line extending it.
  std::vector<std::vector<int>> sublines;
  std::vector<Vec> subline_duals;
};

inline SubplaneEmbedding tangent_subplane(const FieldTower& tower) {
  SubplaneEmbedding emb;
  emb.tower = tower;
  const FieldSpec* base = tower.base;
  const FieldSpec* ext = tower.ext;
  const uint16_t w = tower.omega;

  auto rho = [&](const Vec& p) {
    // (x:y:z) -> (z : y : x + w y), coordinates embedded into GF(q^3)
    Vec out = Vec::zero(ext, 3);
    uint16_t x = tower.embed_t[p.c[0]];
    uint16_t y = tower.embed_t[p.c[1]];
    uint16_t z = tower.embed_t[p.c[2]];
    out.c[0] = z;
    out.c[1] = y;
    out.c[2] = ext->add(x, ext->mul(w, y));
    return out;
  };

  NormalizedVecRange std_pts(base, 2);
  std::vector<ProjPoint> normalized;
  for (uint64_t i = 0; i < std_pts.size(); ++i) {
    ProjPoint p = ProjPoint::from_vec(rho(std_pts.at(i)));
    normalized.push_back(p);
    emb.points.push_back(p.vec());
    // Tangency: only (0:0:1) lands on ell_inf.
    if (p.vec().c[2] == 0) {
      if (emb.tangent_idx >= 0)
        throw InternalInconsistency("subplane meets ell_inf twice");
      emb.tangent_idx = static_cast<int>(i);
    }
  }
  if (emb.tangent_idx < 0)
    throw InternalInconsistency("subplane misses ell_inf");
  for (size_t i = 0; i < normalized.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (normalized[i] == normalized[j])
        throw InternalInconsistency("subplane points collide");

  // Sublines: images of the lines of PG(2,q).
  HyperplaneRange lines(base, 2);
  auto cross = [&](const Vec& a, const Vec& b) {
    Vec d = Vec::zero(ext, 3);
    d.c[0] = ext->sub(ext->mul(a.c[1], b.c[2]), ext->mul(a.c[2], b.c[1]));
    d.c[1] = ext->sub(ext->mul(a.c[2], b.c[0]), ext->mul(a.c[0], b.c[2]));
    d.c[2] = ext->sub(ext->mul(a.c[0], b.c[1]), ext->mul(a.c[1], b.c[0]));
    return d;
  };
  for (uint64_t li = 0; li < lines.size(); ++li) {
    Vec dual = lines.dual_at(li);
    std::vector<int> members;
    for (uint64_t pi = 0; pi < std_pts.size(); ++pi)
      if (dot(dual, std_pts.at(pi)) == 0) members.push_back(static_cast<int>(pi));
    if (static_cast<int>(members.size()) != base->size + 1)
      throw InternalInconsistency("subline has wrong size");
    Vec ext_dual = cross(emb.points[static_cast<size_t>(members[0])],
                         emb.points[static_cast<size_t>(members[1])]);
    for (int idx : members)
      if (dot(ext_dual, emb.points[static_cast<size_t>(idx)]) != 0)
        throw InternalInconsistency("subline is not collinear in PG(2,q^3)");
    emb.sublines.push_back(std::move(members));
    emb.subline_duals.push_back(Hyperplane(ext_dual).dual());
  }
  return emb;
}

/// The scroll of a tangent subplane, with the point dictionary retained.
struct BruckBoseScroll {
  RuledQuinticSurface scroll;
  int alpha_plane_idx = -1;  ///< spread plane of the conic directrix
  /// subplane point index -> its PG(6,q) image (affine points only); this is
  /// a bijection onto scroll.points() minus the conic.
  std::vector<std::pair<int, ProjPoint>> affine_map;
};

inline BruckBoseScroll subplane_to_scroll(const RegularSpread& sp,
                                          const SubplaneEmbedding& emb) {
  const FieldSpec* base = sp.base();

  // Sublines through T correspond to generators; the PG(2,q) line behind such
  // a subline passes through (0:0:1), so its dual is (l0, l1, 0) and the
  // generator label is the direction (x:y) = (-l1 : l0).
  HyperplaneRange base_lines(base, 2);
  std::vector<ProjPoint> conic_pts;   // by label order below
  std::vector<Param> labels;          // generator labels
  std::vector<std::vector<std::pair<int, ProjPoint>>> gen_members;
  for (size_t li = 0; li < emb.sublines.size(); ++li) {
    Vec base_dual = base_lines.dual_at(static_cast<uint64_t>(li));
    bool through_t = false;
    for (int m : emb.sublines[li])
      if (m == emb.tangent_idx) through_t = true;
    if (!through_t) continue;
    if (base_dual.c[2] != 0)
      throw InternalInconsistency("subline through T from a line missing (0:0:1)");
    uint16_t a = base->neg(base_dual.c[1]), b = base_dual.c[0];
    Param label = (a != 0) ? param_finite(base->div(b, a)) : param_inf();

    std::vector<std::pair<int, ProjPoint>> members;
    for (int m : emb.sublines[li]) {
      if (m == emb.tangent_idx) continue;
      members.emplace_back(m, affine_correspondence(sp, emb.points[static_cast<size_t>(m)]));
    }
    std::vector<ProjPoint> imgs;
    for (auto& [idx, p] : members) imgs.push_back(p);
    Subspace line = span_points(imgs);
    if (line.r() != 1)
      throw InternalInconsistency("subline image is not a line");
    Subspace at_inf = meet(line, sp.sigma_inf_sub);
    if (at_inf.r() != 0)
      throw InternalInconsistency("subline image line misses Sigma_inf in a point");
    labels.push_back(label);
    conic_pts.push_back(ProjPoint::from_vec(at_inf.basis().row_vec(0)));
    gen_members.push_back(std::move(members));
  }
  if (static_cast<int>(labels.size()) != base->size + 1)
    throw InternalInconsistency("wrong number of sublines through T");

  // The closure points form the conic directrix inside the spread plane of T.
  Subspace alpha = span_points(conic_pts);
  if (alpha.r() != 2)
    throw InternalInconsistency("closure points of the tangent pencil are not coplanar");
  Param t_param = param_finite(0);  // T = (1:0:0) sits over ell_inf point (1:0)
  int alpha_idx = sp.plane_index(t_param);
  if (!(alpha == sp.planes[static_cast<size_t>(alpha_idx)]))
    throw InternalInconsistency("conic plane is not the spread plane of T");

  auto fit_c = fit_moment_frame(conic_pts, labels, 2);
  if (!fit_c)
    throw InternalInconsistency("closure points do not form a parametrized conic");

  // The cubic directrix: the subline behind the PG(2,q) line z = 0, whose
  // points (x:y:0) are labeled by the generator through them.
  std::vector<ProjPoint> cubic_pts;
  std::vector<Param> cubic_labels;
  {
    NormalizedVecRange std_pts(base, 2);
    for (size_t li = 0; li < emb.sublines.size(); ++li) {
      Vec base_dual = base_lines.dual_at(static_cast<uint64_t>(li));
      if (!(base_dual.c[0] == 0 && base_dual.c[1] == 0)) continue;
      for (int m : emb.sublines[li]) {
        Vec std_pt = std_pts.at(static_cast<uint64_t>(m));
        Param label = (std_pt.c[0] != 0)
                          ? param_finite(base->div(std_pt.c[1], std_pt.c[0]))
                          : param_inf();
        cubic_labels.push_back(label);
        cubic_pts.push_back(affine_correspondence(sp, emb.points[static_cast<size_t>(m)]));
      }
    }
  }
  if (static_cast<int>(cubic_pts.size()) != base->size + 1)
    throw InternalInconsistency("cubic subline has wrong size");
  auto fit_n = fit_moment_frame(cubic_pts, cubic_labels, 3);
  if (!fit_n)
    throw InternalInconsistency("cubic subline image is not a parametrized twisted cubic");

  BruckBoseScroll out;
  out.scroll = scroll_from_frames(*fit_c, *fit_n, Pgl2::identity(base));
  out.alpha_plane_idx = alpha_idx;

  // The dictionary: every affine subplane point maps to a scroll point, and
  // together they exhaust the scroll off Sigma_inf (q^2+q points each way).
  std::set<ProjPoint> seen;
  for (size_t gi = 0; gi < gen_members.size(); ++gi)
    for (auto& [idx, p] : gen_members[gi]) {
      if (!out.scroll.point_set().count(p))
        throw InternalInconsistency("subplane image point not on the scroll");
      if (!seen.insert(p).second)
        throw InternalInconsistency("subplane image points collide");
      out.affine_map.emplace_back(idx, p);
    }
  uint64_t affine_on_scroll = 0;
  for (const ProjPoint& p : out.scroll.points())
    if (!sp.sigma_inf.on(p)) ++affine_on_scroll;
  if (affine_on_scroll != out.affine_map.size())
    throw InternalInconsistency("affine dictionary is not a bijection");
  // And the scroll meets Sigma_inf exactly in the conic.
  for (const ProjPoint& p : out.scroll.points())
    if (sp.sigma_inf.on(p) && !alpha.contains(p))
      throw InternalInconsistency("scroll meets Sigma_inf outside the conic plane");
  return out;
}

// ---------------------------------------------------------------------------
// Splash.

struct Splash {
  std::vector<int> plane_indices;  ///< sorted, size q^2+1
  int alpha_idx = -1;
  std::vector<bool> member;  ///< size q^3+1

  bool contains(int idx) const { return member[static_cast<size_t>(idx)]; }
};

/// The q^2+1 spread planes on extended lines of the subplane.
inline Splash splash_of(const RegularSpread& sp, const SubplaneEmbedding& emb,
                        const BruckBoseScroll& bb) {
  Splash s;
  s.member.assign(static_cast<size_t>(sp.size()), false);
  for (const Vec& dual : emb.subline_duals) {
    Param at_inf = line_at_infinity_param(sp, dual);
    int idx = sp.plane_index(at_inf);
    if (!s.member[static_cast<size_t>(idx)]) {
      s.member[static_cast<size_t>(idx)] = true;
      s.plane_indices.push_back(idx);
    }
  }
  std::sort(s.plane_indices.begin(), s.plane_indices.end());
  s.alpha_idx = bb.alpha_plane_idx;
  const uint64_t q = static_cast<uint64_t>(sp.q());
  if (s.plane_indices.size() != q * q + 1)
    throw TheoremViolation("splash-size", static_cast<long long>(q * q + 1),
                           static_cast<long long>(s.plane_indices.size()));
  if (!s.member[static_cast<size_t>(s.alpha_idx)])
    throw InternalInconsistency("alpha is not a splash plane");
  return s;
}

// ---------------------------------------------------------------------------
// Spread-relative classifications.

/// How the q^3 3-spaces about a spread plane (off Sigma_inf) meet the scroll.
struct ThreeSpaceProfile {
  int plane_idx = -1;
  int cubic_count = 0;      ///< 3-spaces meeting V in a twisted cubic
  uint64_t le1_count = 0;   ///< 3-spaces meeting V in at most one point
};

/// Classifies every 3-space about plane `pi_idx` (not alpha, not in
/// Sigma_inf) by how it meets the scroll.  Each affine scroll point lies in
/// exactly one such 3-space - the one of its Bruck-Bose line through the
/// plane's point at infinity - so a single pass over the scroll suffices.
inline ThreeSpaceProfile classify_3spaces_about(const RegularSpread& sp,
                                                const BruckBoseScroll& bb,
                                                int pi_idx) {
  if (pi_idx == bb.alpha_plane_idx)
    throw GeometryError("3-space profile of alpha is out of scope");
  const FieldSpec* E = sp.ext();
  Param ab = sp.plane_params[static_cast<size_t>(pi_idx)];

  std::map<uint16_t, std::vector<ProjPoint>> classes;
  for (const ProjPoint& p : bb.scroll.points()) {
    if (sp.sigma_inf.on(p)) continue;  // conic points: the 3-spaces miss alpha
    Vec pt = bb_point_of(sp, p);
    uint16_t key;
    if (!is_inf(ab)) {
      // direction (1 : b): the class key is y - b x
      key = E->sub(pt.c[1], E->mul(ab.y, pt.c[0]));
    } else {
      key = pt.c[0];
    }
    classes[key].push_back(p);
  }

  ThreeSpaceProfile prof;
  prof.plane_idx = pi_idx;
  const int q = sp.q();
  for (auto& [key, pts] : classes) {
    if (static_cast<int>(pts.size()) == 1) continue;
    if (static_cast<int>(pts.size()) != q + 1)
      throw InternalInconsistency(
          "3-space about a spread plane meets V in 2..q points");
    if (!is_nrc(pts, 3))
      throw InternalInconsistency("(q+1)-point 3-space section is not a twisted cubic");
    Subspace three = span_points(pts);
    Subspace at_inf = meet(three, sp.sigma_inf_sub);
    if (!(at_inf == sp.planes[static_cast<size_t>(pi_idx)]))
      throw InternalInconsistency("cubic 3-space is not about the plane");
    ++prof.cubic_count;
  }
  prof.le1_count = ipow(static_cast<uint64_t>(q), 3) -
                   static_cast<uint64_t>(prof.cubic_count);
  return prof;
}

/// How the q 5-spaces about <pi, ell> (other than Sigma_inf) meet the scroll,
/// for a spread plane pi != alpha and a line ell of alpha.
struct PlaneLineProfile {
  int plane_idx = -1;
  int i = 0;          ///< |ell meet conic|
  int quintic = 0;
  int cubic = 0;      ///< observed twisted-cubic sections (generators == i)
  int quartic = 0;    ///< observed quartic sections (1 generator each)
};

inline PlaneLineProfile classify_5spaces_plane_line(const RegularSpread& sp,
                                                    const BruckBoseScroll& bb,
                                                    int pi_idx,
                                                    const Subspace& ell) {
  if (pi_idx == bb.alpha_plane_idx)
    throw GeometryError("plane-line profile needs pi != alpha");
  if (ell.r() != 1 || !bb.scroll.alpha.contains_sub(ell))
    throw GeometryError("ell must be a line of alpha");

  PlaneLineProfile prof;
  prof.plane_idx = pi_idx;
  for (const ProjPoint& c : bb.scroll.conic_points)
    if (ell.contains(c)) ++prof.i;

  Subspace four = span(sp.planes[static_cast<size_t>(pi_idx)], ell);
  if (four.r() != 4)
    throw InternalInconsistency("<pi, ell> is not a 4-space");
  SectionClassifier cls(bb.scroll);
  const Vec sigma_dual = sp.sigma_inf.dual();
  int seen = 0;
  for (const Vec& dual : hyperplanes_through(four)) {
    if (dual == sigma_dual) continue;
    ++seen;
    SectionType t = cls.classify_fast(dual);
    switch (t.kind) {
      case SectionKind::quintic_nrc:
        ++prof.quintic;
        break;
      case SectionKind::quartic_nrc:
        ++prof.quartic;
        break;
      case SectionKind::twisted_cubic:
        if (t.g != prof.i)
          throw InternalInconsistency(
              "twisted-cubic 5-space about <pi,ell> with g != |ell meet C|");
        ++prof.cubic;
        break;
      case SectionKind::conic:
        throw InternalInconsistency("conic 5-space about a plane != alpha");
    }
  }
  if (seen != sp.q())
    throw InternalInconsistency("pencil about <pi,ell> has wrong size");
  return prof;
}

/// The q^2+q+1 lines of the conic plane.
inline std::vector<Subspace> lines_of_plane(const Subspace& plane) {
  if (plane.r() != 2) throw GeometryError("lines_of_plane needs a plane");
  const FieldSpec* f = plane.field();
  std::vector<Subspace> out;
  HyperplaneRange duals(f, 2);
  for (uint64_t i = 0; i < duals.size(); ++i) {
    Mat d(f, 1, 3);
    d.set_row(0, duals.dual_at(i));
    Mat sol = nullspace(d);  // 2 x 3: the line in plane coordinates
    Mat rows = mat_mul(sol, plane.basis());
    out.push_back(Subspace::from_mat(std::move(rows)));
  }
  return out;
}

}  // namespace scrollforge
