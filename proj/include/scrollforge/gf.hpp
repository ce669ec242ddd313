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
 * @file gf.hpp
 * @brief Exact arithmetic in GF(p), GF(q) = GF(p^k) and the cubic extension
 *        GF(q^3), with a fixed compatible embedding GF(q) -> GF(q^3) and the
 *        Frobenius map x -> x^q.
 *
 * Elements are residue classes of polynomials over GF(p), encoded as an index
 * in [0, p^k): the base-p digits of the index are the residue coefficients,
 * low degree first.  Every FieldSpec precomputes full add/mul/neg/inv tables,
 * so all arithmetic is table lookups.  Specs are interned: pointer equality
 * is field equality, and elements carry their spec as a cheap handle so that
 * mixed-field operations fail fast.
 */

#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "scrollforge/errors.hpp"

namespace scrollforge {

namespace gfdetail {

// Dense polynomials over GF(p), coefficients low degree first, no implicit
// trailing zeros trimmed (callers trim where it matters).
using Poly = std::vector<int>;

inline Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

inline int degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[static_cast<size_t>(i)] != 0) return i;
  return -1;
}

inline Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return r;
}

// Remainder of a modulo the monic polynomial m.
inline Poly poly_mod(Poly a, const Poly& m, int p) {
  const int dm = degree(m);
  int da = degree(a);
  while (da >= dm) {
    const int lead = a[static_cast<size_t>(da)];
    for (int i = 0; i <= dm; ++i) {
      size_t pos = static_cast<size_t>(da - dm + i);
      a[pos] = ((a[pos] - lead * m[static_cast<size_t>(i)]) % p + p) % p;
    }
    da = degree(a);
  }
  a.resize(static_cast<size_t>(dm < 0 ? 0 : dm));
  a.resize(static_cast<size_t>(dm), 0);
  return a;
}

inline bool divides(const Poly& d, const Poly& a, int p) {
  return degree(poly_mod(a, d, p)) < 0;
}

// Irreducibility by trial division against every monic polynomial of degree
// 1..deg/2.  Exhaustive and cheap at the degrees used here (<= 12).
inline bool is_irreducible(const Poly& m, int p) {
  const int k = degree(m);
  if (k <= 0) return false;
  if (k == 1) return true;
  for (int d = 1; d <= k / 2; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long v = 0; v < count; ++v) {
      Poly cand(static_cast<size_t>(d) + 1, 0);
      long long t = v;
      for (int i = 0; i < d; ++i) {
        cand[static_cast<size_t>(i)] = static_cast<int>(t % p);
        t /= p;
      }
      cand[static_cast<size_t>(d)] = 1;
      if (divides(cand, m, p)) return false;
    }
  }
  return true;
}

// The least monic irreducible of degree k over GF(p), where candidates are
// ordered by the integer value sum c_i p^i of their non-leading coefficients
// (so x^3 + x + 1 is the choice for GF(8)).  Deterministic by construction.
inline Poly least_irreducible(int p, int k) {
  long long count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (long long v = 0; v < count; ++v) {
    Poly cand(static_cast<size_t>(k) + 1, 0);
    long long t = v;
    for (int i = 0; i < k; ++i) {
      cand[static_cast<size_t>(i)] = static_cast<int>(t % p);
      t /= p;
    }
    cand[static_cast<size_t>(k)] = 1;
    if (is_irreducible(cand, p)) return cand;
  }
  throw InternalInconsistency("no irreducible polynomial found (impossible)");
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace gfdetail

/// A concrete finite field GF(p^k) with its residue representation and full
/// arithmetic tables.  Interned via FieldSpec::get(); compare by pointer.
class FieldSpec {
 public:
  int p = 0;     ///< prime characteristic
  int k = 0;     ///< extension degree over the prime field
  int size = 0;  ///< p^k
  /// Monic irreducible modulus of degree k, coefficients low degree first
  /// (k+1 entries).  For k = 1 this is the polynomial x.
  std::vector<int> modulus;

  uint16_t add(uint16_t a, uint16_t b) const {
    return add_t[static_cast<size_t>(a) * size + b];
  }
  uint16_t sub(uint16_t a, uint16_t b) const { return add(a, neg_t[b]); }
  uint16_t mul(uint16_t a, uint16_t b) const {
    return mul_t[static_cast<size_t>(a) * size + b];
  }
  uint16_t neg(uint16_t a) const { return neg_t[a]; }
  uint16_t inv(uint16_t a) const {
    if (a == 0)
      throw FieldError(FieldErrc::zero_inverse, "inverse of zero");
    return inv_t[a];
  }
  uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }
  uint16_t pow(uint16_t a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    uint16_t r = 1, b = a;
    while (e > 0) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  /// Residue coefficients of an element index, low degree first (k entries).
  std::vector<int> coeffs(uint16_t a) const {
    std::vector<int> c(static_cast<size_t>(k));
    int v = a;
    for (int i = 0; i < k; ++i) {
      c[static_cast<size_t>(i)] = v % p;
      v /= p;
    }
    return c;
  }
  uint16_t from_coeffs(const std::vector<int>& c) const {
    long long v = 0;
    for (int i = k - 1; i >= 0; --i) {
      int ci = i < static_cast<int>(c.size()) ? c[static_cast<size_t>(i)] : 0;
      v = v * p + (((ci % p) + p) % p);
    }
    return static_cast<uint16_t>(v);
  }

  /// Interned spec for GF(p^k); the pointer is stable for program lifetime.
  static const FieldSpec* get(int p, int k);

  // Raw tables, exposed for hot loops.
  std::vector<uint16_t> add_t;  ///< size*size, row-major
  std::vector<uint16_t> mul_t;  ///< size*size, row-major
  std::vector<uint16_t> neg_t;  ///< size
  std::vector<uint16_t> inv_t;  ///< size; entry 0 is unused

 private:
  FieldSpec(int p_, int k_) : p(p_), k(k_) {
    size = 1;
    for (int i = 0; i < k; ++i) size *= p;
    modulus = gfdetail::least_irreducible(p, k);
    build_tables();
  }

  void build_tables() {
    const size_t n = static_cast<size_t>(size);
    add_t.assign(n * n, 0);
    mul_t.assign(n * n, 0);
    neg_t.assign(n, 0);
    inv_t.assign(n, 0);
    // Addition and negation are digit-wise mod p.
    for (int a = 0; a < size; ++a) {
      auto ca = coeffs(static_cast<uint16_t>(a));
      std::vector<int> cn(ca.size());
      for (size_t i = 0; i < ca.size(); ++i) cn[i] = (p - ca[i]) % p;
      neg_t[static_cast<size_t>(a)] = from_coeffs(cn);
      for (int b = 0; b < size; ++b) {
        auto cb = coeffs(static_cast<uint16_t>(b));
        std::vector<int> cs(ca.size());
        for (size_t i = 0; i < ca.size(); ++i) cs[i] = (ca[i] + cb[i]) % p;
        add_t[static_cast<size_t>(a) * n + b] = from_coeffs(cs);
      }
    }
    for (int a = 0; a < size; ++a) {
      auto ca = coeffs(static_cast<uint16_t>(a));
      for (int b = a; b < size; ++b) {
        auto cb = coeffs(static_cast<uint16_t>(b));
        auto prod = gfdetail::poly_mod(gfdetail::poly_mul(ca, cb, p), modulus, p);
        uint16_t r = from_coeffs(prod);
        mul_t[static_cast<size_t>(a) * n + b] = r;
        mul_t[static_cast<size_t>(b) * n + a] = r;
        if (r == 1) {
          inv_t[static_cast<size_t>(a)] = static_cast<uint16_t>(b);
          inv_t[static_cast<size_t>(b)] = static_cast<uint16_t>(a);
        }
      }
    }
    for (int a = 1; a < size; ++a)
      if (inv_t[static_cast<size_t>(a)] == 0)
        throw InternalInconsistency("element without inverse; modulus not irreducible?");
  }
};

inline const FieldSpec* FieldSpec::get(int p, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FieldSpec>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, k);
  auto it = registry.find(key);
  if (it == registry.end()) {
    it = registry.emplace(key, std::unique_ptr<FieldSpec>(new FieldSpec(p, k))).first;
  }
  return it->second.get();
}

/// A field element: an interned spec handle plus a residue index.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FieldSpec* f, uint16_t v) : f_(f), v_(v) {}

  const FieldSpec* field() const { return f_; }
  uint16_t idx() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  std::vector<int> coeffs() const { return f_->coeffs(v_); }

  FieldElement inv() const { return {f_, f_->inv(v_)}; }
  FieldElement pow(long long e) const { return {f_, f_->pow(v_, e)}; }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {a.f_, a.f_->add(a.v_, b.v_)};
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {a.f_, a.f_->sub(a.v_, b.v_)};
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {a.f_, a.f_->mul(a.v_, b.v_)};
  }
  friend FieldElement operator/(FieldElement a, FieldElement b) {
    check_same(a, b);
    return {a.f_, a.f_->div(a.v_, b.v_)};
  }
  FieldElement operator-() const { return {f_, f_->neg(v_)}; }
  friend bool operator==(FieldElement a, FieldElement b) {
    return a.f_ == b.f_ && a.v_ == b.v_;
  }
  friend bool operator!=(FieldElement a, FieldElement b) { return !(a == b); }

 private:
  static void check_same(FieldElement a, FieldElement b) {
    if (a.f_ != b.f_)
      throw FieldError(FieldErrc::mixed_fields, "operands from different fields");
  }
  const FieldSpec* f_ = nullptr;
  uint16_t v_ = 0;
};

/// GF(q) inside GF(q^3): the embedding, Frobenius, and the coordinate basis
/// {1, omega, omega^2} used by the Bruck-Bose model.
struct FieldTower {
  const FieldSpec* base = nullptr;  ///< GF(q)
  const FieldSpec* ext = nullptr;   ///< GF(q^3)
  uint16_t omega = 0;               ///< residue class of the generator variable

  std::vector<uint16_t> embed_t;                 ///< base -> ext
  std::vector<int32_t> unembed_t;                ///< ext -> base, -1 off image
  std::vector<uint16_t> frob_t;                  ///< ext: x -> x^q
  std::vector<std::array<uint16_t, 3>> expand_t; ///< ext -> coords over {1,w,w^2}

  int q() const { return base->size; }

  FieldElement embed(FieldElement x) const {
    if (x.field() != base)
      throw FieldError(FieldErrc::mixed_fields, "embed: element not in GF(q)");
    return {ext, embed_t[x.idx()]};
  }
  FieldElement frobenius(FieldElement x) const {
    if (x.field() != ext)
      throw FieldError(FieldErrc::not_extension_element,
                       "frobenius: element not in GF(q^3)");
    return {ext, frob_t[x.idx()]};
  }
  /// Coordinates c with x = embed(c0) + embed(c1) w + embed(c2) w^2.
  std::array<FieldElement, 3> expand(FieldElement x) const {
    if (x.field() != ext)
      throw FieldError(FieldErrc::not_extension_element,
                       "expand: element not in GF(q^3)");
    const auto& c = expand_t[x.idx()];
    return {FieldElement{base, c[0]}, FieldElement{base, c[1]},
            FieldElement{base, c[2]}};
  }
  FieldElement compose(FieldElement c0, FieldElement c1, FieldElement c2) const {
    uint16_t w = omega, w2 = ext->mul(omega, omega);
    uint16_t v = ext->add(embed_t[c0.idx()],
                          ext->add(ext->mul(embed_t[c1.idx()], w),
                                   ext->mul(embed_t[c2.idx()], w2)));
    return {ext, v};
  }
};

/// Largest q the tables are sized for; above this the artifact is out of its
/// design envelope.
inline constexpr int kHardMaxQ = 16;

/// Configured cap: SCROLLFORGE_MAX_Q if set, else 9.
inline int default_max_q() {
  if (const char* env = std::getenv("SCROLLFORGE_MAX_Q")) {
    int v = std::atoi(env);
    if (v > 0) return v < kHardMaxQ ? v : kHardMaxQ;
  }
  return 9;
}

/// Builds the GF(q) in GF(q^3) tower for a prime power q >= 7.
inline FieldTower make_tower(int q, int max_q = kHardMaxQ) {
  if (q < 2)
    throw FieldError(FieldErrc::not_prime_power,
                     "q = " + std::to_string(q) + " is not a prime power");
  int p = 0;
  for (int d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  int k = 0, t = q;
  while (t > 1) {
    if (t % p != 0)
      throw FieldError(FieldErrc::not_prime_power,
                       "q = " + std::to_string(q) + " is not a prime power");
    t /= p;
    ++k;
  }
  if (q < 7) {
    // q = 6 is not a prime power either, so 7 is the effective minimum.
    throw FieldError(FieldErrc::q_too_small,
                     "q = " + std::to_string(q) + " < 7");
  }
  if (q > max_q || q > kHardMaxQ)
    throw FieldError(FieldErrc::q_too_large,
                     "q = " + std::to_string(q) + " exceeds the configured cap");

  FieldTower tw;
  tw.base = FieldSpec::get(p, k);
  tw.ext = FieldSpec::get(p, 3 * k);
  tw.omega = static_cast<uint16_t>(p);  // the monomial x in the residue ring

  // Embedding: send the base generator to the least root of the base modulus
  // in the extension, then extend GF(p)-linearly and multiplicatively.
  uint16_t root = 0;
  bool found = false;
  for (int c = 0; c < tw.ext->size && !found; ++c) {
    uint16_t acc = 0;  // Horner on the base modulus, evaluated in ext
    for (int i = k; i >= 0; --i) {
      acc = tw.ext->mul(acc, static_cast<uint16_t>(c));
      acc = tw.ext->add(acc, static_cast<uint16_t>(tw.base->modulus[static_cast<size_t>(i)]));
    }
    if (acc == 0) {
      root = static_cast<uint16_t>(c);
      found = true;
    }
  }
  if (!found) throw InternalInconsistency("base modulus has no root in extension");

  tw.embed_t.assign(static_cast<size_t>(tw.base->size), 0);
  tw.unembed_t.assign(static_cast<size_t>(tw.ext->size), -1);
  for (int a = 0; a < tw.base->size; ++a) {
    auto c = tw.base->coeffs(static_cast<uint16_t>(a));
    uint16_t acc = 0;
    for (int i = k - 1; i >= 0; --i) {
      acc = tw.ext->mul(acc, root);
      acc = tw.ext->add(acc, static_cast<uint16_t>(c[static_cast<size_t>(i)]));
    }
    tw.embed_t[static_cast<size_t>(a)] = acc;
    if (tw.unembed_t[acc] != -1)
      throw InternalInconsistency("embedding not injective");
    tw.unembed_t[acc] = a;
  }

  tw.frob_t.assign(static_cast<size_t>(tw.ext->size), 0);
  for (int a = 0; a < tw.ext->size; ++a)
    tw.frob_t[static_cast<size_t>(a)] = tw.ext->pow(static_cast<uint16_t>(a), q);

  // Expansion over {1, omega, omega^2}; filling all q^3 slots exactly once
  // doubles as the basis-independence check.
  tw.expand_t.assign(static_cast<size_t>(tw.ext->size), {0, 0, 0});
  std::vector<bool> seen(static_cast<size_t>(tw.ext->size), false);
  uint16_t w2 = tw.ext->mul(tw.omega, tw.omega);
  for (int c0 = 0; c0 < tw.base->size; ++c0)
    for (int c1 = 0; c1 < tw.base->size; ++c1)
      for (int c2 = 0; c2 < tw.base->size; ++c2) {
        uint16_t v = tw.ext->add(
            tw.embed_t[static_cast<size_t>(c0)],
            tw.ext->add(tw.ext->mul(tw.embed_t[static_cast<size_t>(c1)], tw.omega),
                        tw.ext->mul(tw.embed_t[static_cast<size_t>(c2)], w2)));
        if (seen[v])
          throw InternalInconsistency("{1,omega,omega^2} not a GF(q)-basis");
        seen[v] = true;
        tw.expand_t[v] = {static_cast<uint16_t>(c0), static_cast<uint16_t>(c1),
                          static_cast<uint16_t>(c2)};
      }
  return tw;
}

}  // namespace scrollforge
