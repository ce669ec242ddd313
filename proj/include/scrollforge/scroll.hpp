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
 * @file scroll.hpp
 * @brief The ruled quintic surface of PG(6,q): a scroll ruling a conic
 *        directrix against a twisted cubic directrix under a projectivity.
 *
 * Coordinates follow the canonical model: generator parameter theta is the
 * homogeneous pair (x:y) with finite theta = (1:theta) and infinity = (0:1);
 * the canonical point for generator theta and ruling parameter t is
 *
 *     V_{theta,t} = (1, th, th^2, th^3, t, t th, t th^2),
 *
 * i.e. the degree-3 moment vector of theta concatenated with t times its
 * degree-2 moment vector.  A scroll built from arbitrary frames stores the
 * 7x7 transport matrix T carrying the canonical scroll onto it; membership,
 * sections and equivalence maps all route through T.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "scrollforge/errors.hpp"
#include "scrollforge/gf.hpp"
#include "scrollforge/projgeom.hpp"

namespace scrollforge {

/// Homogeneous parameter (x:y), normalized to (1,theta) or (0,1).
struct Param {
  uint16_t x = 1, y = 0;
  friend bool operator==(Param a, Param b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Param a, Param b) { return !(a == b); }
};

inline Param param_finite(uint16_t theta) { return {1, theta}; }
inline Param param_inf() { return {0, 1}; }
inline bool is_inf(Param p) { return p.x == 0; }

/// The q+1 parameters in fixed order: 0, 1, ..., q-1, infinity.
inline std::vector<Param> param_list(const FieldSpec* f) {
  std::vector<Param> ps;
  ps.reserve(static_cast<size_t>(f->size) + 1);
  for (int t = 0; t < f->size; ++t) ps.push_back(param_finite(static_cast<uint16_t>(t)));
  ps.push_back(param_inf());
  return ps;
}

inline std::string param_str(Param p) {
  return is_inf(p) ? std::string("inf") : std::to_string(p.y);
}

/// (x^r, x^{r-1} y, ..., y^r) as a width r+1 vector.
inline Vec moment_vec(const FieldSpec* f, Param p, int r) {
  Vec v = Vec::zero(f, r + 1);
  for (int i = 0; i <= r; ++i) {
    uint16_t e = 1;
    for (int j = 0; j < r - i; ++j) e = f->mul(e, p.x);
    for (int j = 0; j < i; ++j) e = f->mul(e, p.y);
    v.c[static_cast<size_t>(i)] = e;
  }
  return v;
}

/// An element of PGL(2,q): (x:y) -> (a x + b y : c x + d y).
struct Pgl2 {
  const FieldSpec* f = nullptr;
  uint16_t a = 1, b = 0, c = 0, d = 1;

  static Pgl2 identity(const FieldSpec* f) { return {f, 1, 0, 0, 1}; }
  /// theta -> theta + s on finite parameters.
  static Pgl2 shift(const FieldSpec* f, uint16_t s) { return {f, 1, 0, s, 1}; }
  /// theta -> s * theta, s != 0.
  static Pgl2 scale(const FieldSpec* f, uint16_t s) {
    if (s == 0) throw GeometryError("scale projectivity needs s != 0");
    return {f, 1, 0, 0, s};
  }

  uint16_t det() const { return f->sub(f->mul(a, d), f->mul(b, c)); }

  Param apply(Param p) const {
    uint16_t nx = f->add(f->mul(a, p.x), f->mul(b, p.y));
    uint16_t ny = f->add(f->mul(c, p.x), f->mul(d, p.y));
    if (nx != 0) return {1, f->div(ny, nx)};
    if (ny == 0) throw InternalInconsistency("projectivity sent a point to zero");
    return {0, 1};
  }

  /// The (r+1)x(r+1) matrix S with moment_r(phi(x:y)) = moment_r(x:y) * S
  /// as an exact polynomial identity.
  Mat sym_lift(int r) const {
    // Column j holds the coefficients of (a x + b y)^{r-j} (c x + d y)^j
    // on the monomials x^{r-i} y^i.
    Mat s(f, r + 1, r + 1);
    for (int j = 0; j <= r; ++j) {
      std::vector<uint16_t> poly{1};  // coefficients on x^(deg-i) y^i
      auto mul_linear = [&](uint16_t u, uint16_t v) {
        std::vector<uint16_t> out(poly.size() + 1, 0);
        for (size_t i = 0; i < poly.size(); ++i) {
          out[i] = f->add(out[i], f->mul(poly[i], u));
          out[i + 1] = f->add(out[i + 1], f->mul(poly[i], v));
        }
        poly = std::move(out);
      };
      for (int t = 0; t < r - j; ++t) mul_linear(a, b);
      for (int t = 0; t < j; ++t) mul_linear(c, d);
      for (int i = 0; i <= r; ++i) s.at(i, j) = poly[static_cast<size_t>(i)];
    }
    return s;
  }
};

// ---------------------------------------------------------------------------
// The ten defining quadrics of the canonical scroll.

/// Monomial pairs (i,j,k,l) meaning x_i x_j - x_k x_l = 0.
struct QuadricSystem {
  static constexpr int kCount = 10;
  static constexpr int kForms[kCount][4] = {
      {0, 5, 1, 4}, {0, 6, 1, 5}, {1, 5, 2, 4}, {1, 6, 2, 5}, {2, 5, 3, 4},
      {2, 6, 3, 5}, {1, 1, 0, 2}, {2, 2, 1, 3}, {5, 5, 4, 6}, {0, 3, 1, 2}};

  /// Evaluates form `idx` at a width-7 coordinate vector over any field.
  static uint16_t evaluate(const FieldSpec* f, const Vec& v, int idx) {
    const int* m = kForms[idx];
    return f->sub(f->mul(v.c[static_cast<size_t>(m[0])], v.c[static_cast<size_t>(m[1])]),
                  f->mul(v.c[static_cast<size_t>(m[2])], v.c[static_cast<size_t>(m[3])]));
  }

  /// True iff all ten forms vanish (canonical coordinates).
  static bool vanishes(const FieldSpec* f, const Vec& v) {
    for (int i = 0; i < kCount; ++i)
      if (evaluate(f, v, i) != 0) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------

/// The ruled quintic surface, with its ruling structure retained: frames for
/// the two directrices, the ruling projectivity, the transport matrix from
/// canonical coordinates, the (q+1) generators and the full point grid.
class RuledQuinticSurface {
 public:
  const FieldSpec* field = nullptr;
  Mat conic_frame;  ///< 3x7; conic point at theta is moment_2(theta) * frame
  Mat cubic_frame;  ///< 4x7; cubic point at eps is moment_3(eps) * frame
  Pgl2 phi;         ///< ruling projectivity: generator theta joins C_theta to N_phi(theta)
  Mat T;            ///< 7x7 canonical -> this, pointwise on the scroll
  Mat T_inv;
  bool canonical = false;

  std::vector<Param> params;             ///< generator parameters, fixed order
  std::vector<Subspace> generators;      ///< one line per parameter
  std::vector<ProjPoint> conic_points;   ///< conic point on generator i
  std::vector<ProjPoint> cubic_points;   ///< cubic-directrix point on generator i
  Subspace alpha;  ///< plane of the conic directrix
  Subspace pi3;    ///< 3-space of the cubic directrix

  int q() const { return field->size; }
  int gen_count() const { return field->size + 1; }

  /// Point on generator `gen` at ruling parameter t; t = inf is the conic point.
  const ProjPoint& point_at(int gen, Param t) const {
    return grid_[static_cast<size_t>(gen)][t_index(t)];
  }
  const std::vector<ProjPoint>& points() const { return all_points_; }
  const std::unordered_set<ProjPoint, ProjPointHash>& point_set() const {
    return point_set_;
  }

  /// (generator index, ruling parameter) of a point of the scroll.
  std::optional<std::pair<int, Param>> locate(const ProjPoint& p) const {
    auto it = locate_.find(p);
    if (it == locate_.end()) return std::nullopt;
    return it->second;
  }

  /// Membership via the ten quadrics, pulled back through T.
  bool contains(const ProjPoint& p) const {
    if (p.field() != field || p.n() != 6)
      throw GeometryError("contains: point not in PG(6,q)");
    Vec y = canonical ? p.vec() : vec_mat(p.vec(), T_inv);
    return QuadricSystem::vanishes(field, y);
  }

  /// The q+1 points of the twisted-cubic cross-section t(theta) = e theta + f,
  /// in generator order (the point on generator infinity has t = e).
  std::vector<ProjPoint> cross_section(FieldElement e, FieldElement f) const {
    if (e.field() != field || f.field() != field)
      throw FieldError(FieldErrc::mixed_fields, "cross_section parameters");
    std::vector<ProjPoint> pts;
    pts.reserve(static_cast<size_t>(gen_count()));
    for (int i = 0; i < gen_count(); ++i) {
      uint16_t t = is_inf(params[static_cast<size_t>(i)])
                       ? e.idx()
                       : field->add(field->mul(e.idx(), params[static_cast<size_t>(i)].y),
                                    f.idx());
      pts.push_back(point_at(i, param_finite(t)));
    }
    return pts;
  }

  friend RuledQuinticSurface scroll_from_frames(Mat conic_frame, Mat cubic_frame,
                                                Pgl2 phi);

 private:
  size_t t_index(Param t) const {
    return is_inf(t) ? static_cast<size_t>(field->size) : static_cast<size_t>(t.y);
  }
  std::vector<std::vector<ProjPoint>> grid_;  // [gen][t: 0..q-1, q=inf]
  std::vector<ProjPoint> all_points_;
  std::unordered_set<ProjPoint, ProjPointHash> point_set_;
  std::unordered_map<ProjPoint, std::pair<int, Param>, ProjPointHash> locate_;
};

/// Canonical point V_{theta,t} with homogeneous ruling parameter (u:v):
/// u * (moment_3(theta) | 0) + v * (0 | moment_2(theta)).
inline Vec canonical_scroll_vec(const FieldSpec* f, Param theta, Param t) {
  Vec m3 = moment_vec(f, theta, 3);
  Vec m2 = moment_vec(f, theta, 2);
  Vec v = Vec::zero(f, 7);
  for (int i = 0; i < 4; ++i)
    v.c[static_cast<size_t>(i)] = f->mul(t.x, m3.c[static_cast<size_t>(i)]);
  for (int i = 0; i < 3; ++i)
    v.c[static_cast<size_t>(4 + i)] = f->mul(t.y, m2.c[static_cast<size_t>(i)]);
  return v;
}

inline RuledQuinticSurface scroll_from_frames(Mat conic_frame, Mat cubic_frame,
                                              Pgl2 phi) {
  const FieldSpec* f = conic_frame.f;
  if (f == nullptr || cubic_frame.f != f || phi.f != f)
    throw FieldError(FieldErrc::mixed_fields, "scroll frames");
  if (f->size < 7)
    throw FieldError(FieldErrc::q_too_small, "scroll needs q >= 7");
  if (conic_frame.rows != 3 || conic_frame.cols != 7 || cubic_frame.rows != 4 ||
      cubic_frame.cols != 7)
    throw GeometryError("scroll frames must be 3x7 and 4x7");
  if (phi.det() == 0) throw GeometryError("ruling projectivity is singular");

  RuledQuinticSurface s;
  s.field = f;
  s.conic_frame = conic_frame;
  s.cubic_frame = cubic_frame;
  s.phi = phi;

  s.alpha = Subspace::from_mat(conic_frame);
  s.pi3 = Subspace::from_mat(cubic_frame);
  if (s.alpha.r() != 2) throw GeometryError("degenerate conic frame");
  if (s.pi3.r() != 3) throw GeometryError("degenerate cubic frame");
  if (meet(s.alpha, s.pi3).r() >= 0)
    throw GeometryError("conic plane meets cubic 3-space");

  // Transport matrix: cubic block carries the Sym^3 lift of phi so that the
  // canonical generator theta lands on the generator joining C'_theta to
  // N'_phi(theta).
  Mat lifted = mat_mul(phi.sym_lift(3), cubic_frame);
  s.T = Mat(f, 7, 7);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 7; ++j) s.T.at(i, j) = lifted.at(i, j);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 7; ++j) s.T.at(4 + i, j) = conic_frame.at(i, j);
  s.T_inv = mat_inverse(s.T);
  {
    Mat id = mat_identity(f, 7);
    s.canonical = (s.T == id);
  }

  s.params = param_list(f);
  const int gens = s.gen_count();
  s.grid_.resize(static_cast<size_t>(gens));
  std::vector<Param> ruling = param_list(f);
  for (int i = 0; i < gens; ++i) {
    auto& row = s.grid_[static_cast<size_t>(i)];
    row.reserve(ruling.size());
    for (Param t : ruling) {
      Vec v = canonical_scroll_vec(f, s.params[static_cast<size_t>(i)], t);
      if (!s.canonical) v = vec_mat(v, s.T);
      ProjPoint p = ProjPoint::from_vec(v);
      row.push_back(p);
      if (s.point_set_.insert(p).second) {
        s.all_points_.push_back(p);
        s.locate_.emplace(p, std::make_pair(i, t));
      }
    }
    s.cubic_points.push_back(row[0]);                         // t = 0
    s.conic_points.push_back(row[static_cast<size_t>(f->size)]);  // t = inf
    s.generators.push_back(Subspace::from_points({row[0], row.back()}));
    if (s.generators.back().r() != 1)
      throw InternalInconsistency("generator is not a line");
  }

  const size_t expect = static_cast<size_t>(gens) * static_cast<size_t>(gens);
  if (s.point_set_.size() != expect)
    throw InternalInconsistency("scroll point count is not (q+1)^2");
  for (int i = 0; i < gens; ++i)
    for (int j = i + 1; j < gens; ++j)
      if (meet(s.generators[static_cast<size_t>(i)],
               s.generators[static_cast<size_t>(j)]).r() >= 0)
        throw InternalInconsistency("generators are not pairwise skew");
  return s;
}

inline RuledQuinticSurface canonical_scroll(const FieldSpec* f) {
  Mat cf(f, 3, 7);
  cf.at(0, 4) = 1;
  cf.at(1, 5) = 1;
  cf.at(2, 6) = 1;
  Mat nf(f, 4, 7);
  for (int i = 0; i < 4; ++i) nf.at(i, i) = 1;
  return scroll_from_frames(cf, nf, Pgl2::identity(f));
}

/// A homography of PG(6,q) carrying v1 onto v2 pointwise, built by
/// transporting frames (the parameter images of 0, 1 and infinity pin the
/// reparametrization).  Failure is an internal inconsistency: the underlying
/// equivalence theorem guarantees existence.
inline Mat equivalence_map(const RuledQuinticSurface& v1,
                           const RuledQuinticSurface& v2) {
  if (v1.field != v2.field)
    throw FieldError(FieldErrc::mixed_fields, "equivalence_map");
  Mat m = mat_mul(v1.T_inv, v2.T);
  for (const ProjPoint& p : v1.points()) {
    ProjPoint image = ProjPoint::from_vec(vec_mat(p.vec(), m));
    if (v2.point_set().find(image) == v2.point_set().end())
      throw InternalInconsistency("equivalence map does not carry V1 onto V2");
  }
  return m;
}

/// (e, f) of the unique twisted-cubic cross-section through two points on
/// different generators, neither on the conic directrix.
inline std::pair<FieldElement, FieldElement> unique_cubic_through(
    const RuledQuinticSurface& v, const ProjPoint& p, const ProjPoint& r) {
  auto lp = v.locate(p);
  auto lr = v.locate(r);
  if (!lp || !lr) throw GeometryError("unique_cubic_through: point not on scroll");
  auto [g1, t1] = *lp;
  auto [g2, t2] = *lr;
  if (g1 == g2)
    throw GeometryError("unique_cubic_through: points on the same generator");
  if (is_inf(t1) || is_inf(t2))
    throw GeometryError("unique_cubic_through: point on the conic directrix");
  const FieldSpec* f = v.field;
  Param th1 = v.params[static_cast<size_t>(g1)];
  Param th2 = v.params[static_cast<size_t>(g2)];
  uint16_t e, c;
  if (is_inf(th1)) {
    e = t1.y;
    c = f->sub(t2.y, f->mul(e, th2.y));
  } else if (is_inf(th2)) {
    e = t2.y;
    c = f->sub(t1.y, f->mul(e, th1.y));
  } else {
    e = f->div(f->sub(t1.y, t2.y), f->sub(th1.y, th2.y));
    c = f->sub(t1.y, f->mul(e, th1.y));
  }
  return {FieldElement{f, e}, FieldElement{f, c}};
}

/// Common point of all tangent lines of the conic directrix (q even).
inline ProjPoint nucleus_of_conic(const RuledQuinticSurface& v) {
  const FieldSpec* f = v.field;
  if (f->p != 2) throw GeometryError("nucleus exists only for even q");
  // Work inside the conic plane in frame coordinates, where the conic is the
  // standard (x^2, xy, y^2).
  std::vector<Vec> conic;
  for (Param t : param_list(f)) conic.push_back(moment_vec(f, t, 2));
  std::vector<ProjPoint> plane_pts;
  {
    NormalizedVecRange rng(f, 2);
    for (uint64_t i = 0; i < rng.size(); ++i)
      plane_pts.push_back(ProjPoint::from_vec(rng.at(i)));
  }
  auto cross = [&](const Vec& a, const Vec& b) {
    Vec d = Vec::zero(f, 3);
    d.c[0] = f->sub(f->mul(a.c[1], b.c[2]), f->mul(a.c[2], b.c[1]));
    d.c[1] = f->sub(f->mul(a.c[2], b.c[0]), f->mul(a.c[0], b.c[2]));
    d.c[2] = f->sub(f->mul(a.c[0], b.c[1]), f->mul(a.c[1], b.c[0]));
    return d;
  };
  std::vector<Vec> tangents;
  for (const Vec& a : conic) {
    ProjPoint ap = ProjPoint::from_vec(a);
    bool found = false;
    for (const ProjPoint& d : plane_pts) {
      if (d == ap) continue;
      Vec line = cross(a, d.vec());  // dual of the line through a and d
      int hits = 0;
      for (const Vec& c : conic)
        if (dot(line, c) == 0) ++hits;
      if (hits == 1) {
        tangents.push_back(line);
        found = true;
        break;
      }
    }
    if (!found) throw InternalInconsistency("conic point without tangent");
  }
  Vec nucleus = cross(tangents[0], tangents[1]);
  for (const Vec& t : tangents)
    if (dot(t, nucleus) != 0)
      throw InternalInconsistency("tangent lines of the conic do not concur");
  return ProjPoint::from_vec(vec_mat(nucleus, v.conic_frame));
}

}  // namespace scrollforge
