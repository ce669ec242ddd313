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
 * @file projgeom.hpp
 * @brief Projective geometry over a finite field: normalized points, echelon
 *        subspaces, span/meet, and exhaustive enumeration of the points and
 *        hyperplanes of PG(n,.) for n <= 6.
 *
 * Subspaces are canonical: the basis is kept in reduced row echelon form, so
 * two subspaces are equal iff their matrices are identical.  Hyperplane and
 * point enumerations are lexicographic with O(1) random access by index,
 * which is what lets the census shard deterministically.
 */

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <vector>

#include "scrollforge/errors.hpp"
#include "scrollforge/gf.hpp"

namespace scrollforge {

inline constexpr int kMaxCoords = 8;  // PG(6,.) needs 7; one spare

inline uint64_t ipow(uint64_t q, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= q;
  return r;
}

/// A coordinate vector of fixed small width over an interned field.
struct Vec {
  const FieldSpec* f = nullptr;
  int len = 0;
  std::array<uint16_t, kMaxCoords> c{};

  static Vec zero(const FieldSpec* f, int len) {
    Vec v;
    v.f = f;
    v.len = len;
    return v;
  }
  FieldElement at(int i) const { return {f, c[static_cast<size_t>(i)]}; }
  bool is_zero() const {
    for (int i = 0; i < len; ++i)
      if (c[static_cast<size_t>(i)] != 0) return false;
    return true;
  }
  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.f != b.f || a.len != b.len) return false;
    for (int i = 0; i < a.len; ++i)
      if (a.c[static_cast<size_t>(i)] != b.c[static_cast<size_t>(i)]) return false;
    return true;
  }
  friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }
  friend bool operator<(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.len && i < b.len; ++i) {
      if (a.c[static_cast<size_t>(i)] != b.c[static_cast<size_t>(i)])
        return a.c[static_cast<size_t>(i)] < b.c[static_cast<size_t>(i)];
    }
    return a.len < b.len;
  }
};

inline Vec make_vec(const FieldSpec* f, std::initializer_list<int> xs) {
  Vec v = Vec::zero(f, static_cast<int>(xs.size()));
  int i = 0;
  for (int x : xs) v.c[static_cast<size_t>(i++)] = static_cast<uint16_t>(x);
  return v;
}

inline uint16_t dot(const Vec& a, const Vec& b) {
  if (a.f != b.f)
    throw FieldError(FieldErrc::mixed_fields, "dot: mixed fields");
  if (a.len != b.len) throw GeometryError("dot: mixed ambient dimensions");
  const FieldSpec& F = *a.f;
  uint16_t s = 0;
  for (int i = 0; i < a.len; ++i)
    s = F.add(s, F.mul(a.c[static_cast<size_t>(i)], b.c[static_cast<size_t>(i)]));
  return s;
}

inline Vec scaled(const Vec& a, uint16_t s) {
  Vec r = a;
  for (int i = 0; i < a.len; ++i)
    r.c[static_cast<size_t>(i)] = a.f->mul(a.c[static_cast<size_t>(i)], s);
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r = a;
  for (int i = 0; i < a.len; ++i)
    r.c[static_cast<size_t>(i)] =
        a.f->add(a.c[static_cast<size_t>(i)], b.c[static_cast<size_t>(i)]);
  return r;
}

/// A point of PG(n,.): homogeneous coordinates with the first nonzero entry
/// scaled to 1, so points hash and compare as plain values.
class ProjPoint {
 public:
  ProjPoint() = default;

  static ProjPoint from_vec(Vec v) {
    int lead = -1;
    for (int i = 0; i < v.len; ++i)
      if (v.c[static_cast<size_t>(i)] != 0) {
        lead = i;
        break;
      }
    if (lead < 0) throw GeometryError("zero vector is not a projective point");
    uint16_t s = v.f->inv(v.c[static_cast<size_t>(lead)]);
    ProjPoint p;
    p.v_ = scaled(v, s);
    return p;
  }
  ProjPoint(const FieldSpec* f, std::initializer_list<int> xs)
      : ProjPoint(from_vec(make_vec(f, xs))) {}

  const Vec& vec() const { return v_; }
  const FieldSpec* field() const { return v_.f; }
  int n() const { return v_.len - 1; }
  FieldElement at(int i) const { return v_.at(i); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.v_ == b.v_;
  }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) {
    return !(a == b);
  }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
    return a.v_ < b.v_;
  }

 private:
  Vec v_;
};

struct ProjPointHash {
  size_t operator()(const ProjPoint& p) const {
    size_t h = 1469598103934665603ull;
    const Vec& v = p.vec();
    h = (h ^ static_cast<size_t>(v.len)) * 1099511628211ull;
    for (int i = 0; i < v.len; ++i)
      h = (h ^ v.c[static_cast<size_t>(i)]) * 1099511628211ull;
    return h;
  }
};

// ---------------------------------------------------------------------------
// Dense matrices and exact Gaussian elimination.

struct Mat {
  const FieldSpec* f = nullptr;
  int rows = 0, cols = 0;
  std::vector<uint16_t> a;

  Mat() = default;
  Mat(const FieldSpec* f_, int r, int c)
      : f(f_), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  uint16_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  uint16_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  Vec row_vec(int r) const {
    Vec v = Vec::zero(f, cols);
    for (int j = 0; j < cols; ++j) v.c[static_cast<size_t>(j)] = at(r, j);
    return v;
  }
  void set_row(int r, const Vec& v) {
    for (int j = 0; j < cols; ++j) at(r, j) = v.c[static_cast<size_t>(j)];
  }
  friend bool operator==(const Mat& x, const Mat& y) {
    return x.f == y.f && x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
  friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
};

/// In-place reduced row echelon form; returns the rank.  Also drops zero rows
/// so the result has exactly `rank` rows.
inline int rref(Mat& m) {
  const FieldSpec& F = *m.f;
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < m.rows; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    uint16_t inv = F.inv(m.at(rank, col));
    for (int j = 0; j < m.cols; ++j) m.at(rank, j) = F.mul(m.at(rank, j), inv);
    for (int r = 0; r < m.rows; ++r) {
      if (r == rank) continue;
      uint16_t factor = m.at(r, col);
      if (factor == 0) continue;
      for (int j = 0; j < m.cols; ++j)
        m.at(r, j) = F.sub(m.at(r, j), F.mul(factor, m.at(rank, j)));
    }
    ++rank;
  }
  m.a.resize(static_cast<size_t>(rank) * m.cols);
  m.rows = rank;
  return rank;
}

/// Canonical basis (RREF rows) of { x : m x^T = 0 }.
inline Mat nullspace(const Mat& m_in) {
  Mat m = m_in;
  int rank = rref(m);
  const FieldSpec& F = *m.f;
  std::vector<int> pivot_col(static_cast<size_t>(rank));
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
  for (int r = 0; r < rank; ++r) {
    for (int j = 0; j < m.cols; ++j)
      if (m.at(r, j) != 0) {
        pivot_col[static_cast<size_t>(r)] = j;
        is_pivot[static_cast<size_t>(j)] = true;
        break;
      }
  }
  Mat ns(m.f, m.cols - rank, m.cols);
  int out = 0;
  for (int j = 0; j < m.cols; ++j) {
    if (is_pivot[static_cast<size_t>(j)]) continue;
    ns.at(out, j) = 1;
    for (int r = 0; r < rank; ++r)
      ns.at(out, pivot_col[static_cast<size_t>(r)]) = F.neg(m.at(r, j));
    ++out;
  }
  rref(ns);  // canonical form
  return ns;
}

inline Mat mat_mul(const Mat& x, const Mat& y) {
  if (x.f != y.f) throw FieldError(FieldErrc::mixed_fields, "mat_mul");
  if (x.cols != y.rows) throw GeometryError("mat_mul: shape mismatch");
  const FieldSpec& F = *x.f;
  Mat r(x.f, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      uint16_t v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        r.at(i, j) = F.add(r.at(i, j), F.mul(v, y.at(k, j)));
    }
  return r;
}

inline Vec vec_mat(const Vec& v, const Mat& m) {
  if (v.len != m.rows) throw GeometryError("vec_mat: shape mismatch");
  const FieldSpec& F = *m.f;
  Vec r = Vec::zero(m.f, m.cols);
  for (int i = 0; i < v.len; ++i) {
    uint16_t s = v.c[static_cast<size_t>(i)];
    if (s == 0) continue;
    for (int j = 0; j < m.cols; ++j)
      r.c[static_cast<size_t>(j)] = F.add(r.c[static_cast<size_t>(j)], F.mul(s, m.at(i, j)));
  }
  return r;
}

inline Mat mat_identity(const FieldSpec* f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

inline Mat mat_inverse(const Mat& m_in) {
  if (m_in.rows != m_in.cols) throw GeometryError("mat_inverse: not square");
  const int n = m_in.rows;
  const FieldSpec& F = *m_in.f;
  Mat aug(m_in.f, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m_in.at(i, j);
    aug.at(i, n + i) = 1;
  }
  int rank = 0;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = rank; r < n; ++r)
      if (aug.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw GeometryError("mat_inverse: singular matrix");
    if (pivot != rank)
      for (int j = 0; j < 2 * n; ++j) std::swap(aug.at(pivot, j), aug.at(rank, j));
    uint16_t inv = F.inv(aug.at(rank, col));
    for (int j = 0; j < 2 * n; ++j) aug.at(rank, j) = F.mul(aug.at(rank, j), inv);
    for (int r = 0; r < n; ++r) {
      if (r == rank) continue;
      uint16_t factor = aug.at(r, col);
      if (factor == 0) continue;
      for (int j = 0; j < 2 * n; ++j)
        aug.at(r, j) = F.sub(aug.at(r, j), F.mul(factor, aug.at(rank, j)));
    }
    ++rank;
  }
  Mat out(m_in.f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

// ---------------------------------------------------------------------------
// Subspaces.

/// A subspace of PG(n,.), stored as a reduced-echelon basis matrix.  The
/// representation is canonical; equality is matrix equality.  The empty
/// subspace has r() == -1 and no rows.
class Subspace {
 public:
  Subspace() = default;

  static Subspace empty(const FieldSpec* f, int n) {
    Subspace s;
    s.m_ = Mat(f, 0, n + 1);
    return s;
  }
  /// Builds the row space of `rows` (need not be independent).
  static Subspace from_mat(Mat rows) {
    rref(rows);
    Subspace s;
    s.m_ = std::move(rows);
    return s;
  }
  static Subspace from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) throw GeometryError("subspace from empty row list");
    Mat m(rows[0].f, static_cast<int>(rows.size()), rows[0].len);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].f != rows[0].f)
        throw FieldError(FieldErrc::mixed_fields, "subspace rows");
      if (rows[i].len != rows[0].len)
        throw GeometryError("subspace rows: mixed ambient dimensions");
      m.set_row(static_cast<int>(i), rows[i]);
    }
    return from_mat(std::move(m));
  }
  static Subspace from_points(const std::vector<ProjPoint>& pts) {
    std::vector<Vec> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) rows.push_back(p.vec());
    return from_rows(rows);
  }

  int n() const { return m_.cols - 1; }
  int r() const { return m_.rows - 1; }
  const FieldSpec* field() const { return m_.f; }
  const Mat& basis() const { return m_; }

  bool contains(const ProjPoint& p) const { return contains_vec(p.vec()); }
  bool contains_vec(const Vec& v) const {
    if (v.f != m_.f || v.len != m_.cols)
      throw GeometryError("contains: mixed ambient spaces");
    // Reduce v against the echelon basis; contained iff residual is zero.
    const FieldSpec& F = *m_.f;
    Vec x = v;
    for (int r = 0; r < m_.rows; ++r) {
      int pc = pivot_col(r);
      uint16_t factor = x.c[static_cast<size_t>(pc)];
      if (factor == 0) continue;
      for (int j = 0; j < m_.cols; ++j)
        x.c[static_cast<size_t>(j)] = F.sub(x.c[static_cast<size_t>(j)], F.mul(factor, m_.at(r, j)));
    }
    for (int j = 0; j < m_.cols; ++j)
      if (x.c[static_cast<size_t>(j)] != 0) return false;
    return true;
  }
  bool contains_sub(const Subspace& other) const {
    for (int r = 0; r < other.m_.rows; ++r)
      if (!contains_vec(other.m_.row_vec(r))) return false;
    return true;
  }

  /// Covectors h with h . x = 0 for all x in the subspace (RREF rows).
  Mat dual_basis() const { return nullspace(m_); }

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.m_ == y.m_;
  }
  friend bool operator!=(const Subspace& x, const Subspace& y) {
    return !(x == y);
  }

 private:
  int pivot_col(int r) const {
    for (int j = 0; j < m_.cols; ++j)
      if (m_.at(r, j) != 0) return j;
    throw InternalInconsistency("zero row in echelon basis");
  }
  Mat m_;
};

inline Subspace span(const Subspace& a, const Subspace& b) {
  if (a.field() != b.field() || a.n() != b.n())
    throw GeometryError("span: mixed ambient spaces");
  Mat m(a.field(), a.basis().rows + b.basis().rows, a.n() + 1);
  for (int i = 0; i < a.basis().rows; ++i)
    m.set_row(i, a.basis().row_vec(i));
  for (int i = 0; i < b.basis().rows; ++i)
    m.set_row(a.basis().rows + i, b.basis().row_vec(i));
  return Subspace::from_mat(std::move(m));
}

inline Subspace span_points(const std::vector<ProjPoint>& pts) {
  if (pts.empty()) throw GeometryError("span of no points");
  return Subspace::from_points(pts);
}

inline Subspace meet(const Subspace& a, const Subspace& b) {
  if (a.field() != b.field() || a.n() != b.n())
    throw GeometryError("meet: mixed ambient spaces");
  if (a.r() < 0 || b.r() < 0) return Subspace::empty(a.field(), a.n());
  Mat da = a.dual_basis();
  Mat db = b.dual_basis();
  Mat stacked(a.field(), da.rows + db.rows, a.n() + 1);
  for (int i = 0; i < da.rows; ++i) stacked.set_row(i, da.row_vec(i));
  for (int i = 0; i < db.rows; ++i) stacked.set_row(da.rows + i, db.row_vec(i));
  return Subspace::from_mat(nullspace(stacked));
}

// ---------------------------------------------------------------------------
// Hyperplanes and enumeration.

class Hyperplane {
 public:
  Hyperplane() = default;
  explicit Hyperplane(Vec dual) {
    int lead = -1;
    for (int i = 0; i < dual.len; ++i)
      if (dual.c[static_cast<size_t>(i)] != 0) {
        lead = i;
        break;
      }
    if (lead < 0) throw GeometryError("zero covector is not a hyperplane");
    d_ = scaled(dual, dual.f->inv(dual.c[static_cast<size_t>(lead)]));
  }
  Hyperplane(const FieldSpec* f, std::initializer_list<int> xs)
      : Hyperplane(make_vec(f, xs)) {}

  const Vec& dual() const { return d_; }
  int n() const { return d_.len - 1; }
  bool on(const ProjPoint& p) const { return dot(d_, p.vec()) == 0; }
  bool contains(const Subspace& s) const {
    for (int r = 0; r < s.basis().rows; ++r)
      if (dot(d_, s.basis().row_vec(r)) != 0) return false;
    return true;
  }
  Subspace to_subspace() const {
    Mat m(d_.f, 1, d_.len);
    m.set_row(0, d_);
    return Subspace::from_mat(nullspace(m));
  }
  friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
    return a.d_ == b.d_;
  }

 private:
  Vec d_;
};

/// All normalized vectors of width n+1 over a field, in ascending
/// lexicographic order, with O(1) random access.  These are simultaneously
/// the points of PG(n,q) and (read as covectors) its hyperplanes.
class NormalizedVecRange {
 public:
  NormalizedVecRange(const FieldSpec* f, int n) : f_(f), n_(n) {
    uint64_t pw = 1;
    block_.resize(static_cast<size_t>(n + 1));
    // Vectors whose leading 1 sits at position `lead` number q^(n-lead);
    // ascending lex order lists lead = n first, then n-1, ... 0.
    for (int lead = n; lead >= 0; --lead) {
      block_[static_cast<size_t>(n - lead)] = pw;
      pw *= static_cast<uint64_t>(f->size);
    }
    total_ = 0;
    for (uint64_t b : block_) total_ += b;
  }

  uint64_t size() const { return total_; }

  Vec at(uint64_t idx) const {
    if (idx >= total_) throw GeometryError("enumeration index out of range");
    int n = n_;
    uint64_t rest = idx;
    int slot = 0;
    while (rest >= block_[static_cast<size_t>(slot)]) {
      rest -= block_[static_cast<size_t>(slot)];
      ++slot;
    }
    const int lead = n - slot;
    Vec v = Vec::zero(f_, n + 1);
    v.c[static_cast<size_t>(lead)] = 1;
    // Remaining digits, most significant (lowest position) first.
    for (int i = n; i > lead; --i) {
      v.c[static_cast<size_t>(i)] = static_cast<uint16_t>(rest % f_->size);
      rest /= static_cast<uint64_t>(f_->size);
    }
    return v;
  }

 private:
  const FieldSpec* f_;
  int n_;
  std::vector<uint64_t> block_;
  uint64_t total_ = 0;
};

/// Hyperplanes of PG(n,q), each exactly once, lex order of normalized duals.
class HyperplaneRange {
 public:
  HyperplaneRange(const FieldSpec* f, int n) : range_(f, n) {
    if (n > 6) throw GeometryError("enumeration limited to n <= 6");
  }
  uint64_t size() const { return range_.size(); }
  Vec dual_at(uint64_t i) const { return range_.at(i); }
  Hyperplane at(uint64_t i) const { return Hyperplane(range_.at(i)); }

 private:
  NormalizedVecRange range_;
};

inline HyperplaneRange enumerate_hyperplanes(const FieldSpec* f, int n) {
  return HyperplaneRange(f, n);
}

/// Normalized duals of every hyperplane containing the subspace; there are
/// (q^(n-r) - 1)/(q - 1) of them.
inline std::vector<Vec> hyperplanes_through(const Subspace& s) {
  Mat duals = s.dual_basis();
  NormalizedVecRange combos(s.field(), duals.rows - 1);
  std::vector<Vec> out;
  out.reserve(combos.size());
  for (uint64_t i = 0; i < combos.size(); ++i) {
    Vec lambda = combos.at(i);
    Vec d = Vec::zero(s.field(), s.n() + 1);
    for (int r = 0; r < duals.rows; ++r) {
      uint16_t sc = lambda.c[static_cast<size_t>(r)];
      if (sc == 0) continue;
      d = add(d, scaled(duals.row_vec(r), sc));
    }
    out.push_back(Hyperplane(d).dual());
  }
  return out;
}

/// All points of the subspace, each exactly once.
inline std::vector<ProjPoint> points_of(const Subspace& s) {
  std::vector<ProjPoint> pts;
  if (s.r() < 0) return pts;
  const int m = s.r() + 1;
  NormalizedVecRange coeffs(s.field(), m - 1);
  pts.reserve(coeffs.size());
  for (uint64_t i = 0; i < coeffs.size(); ++i) {
    Vec lambda = coeffs.at(i);
    Vec v = Vec::zero(s.field(), s.n() + 1);
    for (int r = 0; r < m; ++r) {
      uint16_t sc = lambda.c[static_cast<size_t>(r)];
      if (sc == 0) continue;
      v = add(v, scaled(s.basis().row_vec(r), sc));
    }
    pts.push_back(ProjPoint::from_vec(v));
  }
  return pts;
}

/// All points of PG(n,q).
inline std::vector<ProjPoint> points_of_space(const FieldSpec* f, int n) {
  NormalizedVecRange range(f, n);
  std::vector<ProjPoint> pts;
  pts.reserve(range.size());
  for (uint64_t i = 0; i < range.size(); ++i)
    pts.push_back(ProjPoint::from_vec(range.at(i)));
  return pts;
}

}  // namespace scrollforge
