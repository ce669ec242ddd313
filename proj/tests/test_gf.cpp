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
#include <vector>

#include "scrollforge/gf.hpp"

using namespace scrollforge;

namespace {

// Test-local polynomial oracle over GF(p): plain ints, full divisor scan
// (degrees 1..k-1, not just k/2), written independently of the library.
using IPoly = std::vector<int>;

int odeg(const IPoly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[static_cast<size_t>(i)] != 0) return i;
  return -1;
}

bool odivides(const IPoly& d, IPoly a, int p) {
  int dd = odeg(d);
  while (odeg(a) >= dd) {
    int shift = odeg(a) - dd;
    int lead = a[static_cast<size_t>(odeg(a))];
    // d is monic, so the quotient digit is just the leading coefficient.
    for (int i = 0; i <= dd; ++i) {
      int& c = a[static_cast<size_t>(i + shift)];
      c = ((c - lead * d[static_cast<size_t>(i)]) % p + p) % p;
    }
  }
  return odeg(a) < 0;
}

bool oracle_irreducible(const IPoly& m, int p) {
  int k = odeg(m);
  if (k <= 0) return false;
  if (k == 1) return true;
  for (int d = 1; d <= k - 1; ++d) {
    long long n = 1;
    for (int i = 0; i < d; ++i) n *= p;
    for (long long v = 0; v < n; ++v) {
      IPoly cand(static_cast<size_t>(d) + 1, 0);
      long long t = v;
      for (int i = 0; i < d; ++i) {
        cand[static_cast<size_t>(i)] = static_cast<int>(t % p);
        t /= p;
      }
      cand[static_cast<size_t>(d)] = 1;
      if (odivides(cand, m, p)) return false;
    }
  }
  return true;
}

long long poly_value(const IPoly& m, int p) {
  long long v = 0;
  for (int i = odeg(m) - 1; i >= 0; --i) v = v * p + m[static_cast<size_t>(i)];
  return v;
}

void check_modulus_least(const FieldSpec* f) {
  REQUIRE(oracle_irreducible(f->modulus, f->p));
  // Everything smaller in the deterministic order must be reducible.
  long long chosen = poly_value(f->modulus, f->p);
  for (long long v = 0; v < chosen; ++v) {
    IPoly cand(static_cast<size_t>(f->k) + 1, 0);
    long long t = v;
    for (int i = 0; i < f->k; ++i) {
      cand[static_cast<size_t>(i)] = static_cast<int>(t % f->p);
      t /= f->p;
    }
    cand[static_cast<size_t>(f->k)] = 1;
    REQUIRE_FALSE(oracle_irreducible(cand, f->p));
  }
}

}  // namespace

TEST_CASE("tower construction and deterministic moduli") {
  FieldTower t7 = make_tower(7);
  CHECK(t7.base->p == 7);
  CHECK(t7.base->k == 1);
  CHECK(t7.base->modulus == std::vector<int>{0, 1});
  CHECK(t7.ext->size == 343);
  CHECK(t7.ext->modulus == std::vector<int>{2, 0, 0, 1});  // x^3 + 2
  check_modulus_least(t7.ext);
  // omega is the residue of the generator variable: omega^3 = -2 here.
  CHECK(t7.ext->pow(t7.omega, 3) == t7.ext->neg(2));

  FieldTower t8 = make_tower(8);
  CHECK(t8.base->modulus == std::vector<int>{1, 1, 0, 1});  // x^3 + x + 1
  check_modulus_least(t8.base);
  CHECK(t8.ext->size == 512);
  CHECK(t8.ext->k == 9);
  REQUIRE(oracle_irreducible(t8.ext->modulus, 2));

  FieldTower t9 = make_tower(9);
  CHECK(t9.base->modulus == std::vector<int>{1, 0, 1});  // x^2 + 1
  CHECK(t9.ext->size == 729);
  REQUIRE(oracle_irreducible(t9.ext->modulus, 3));
  check_modulus_least(t9.base);
}

TEST_CASE("tower precondition errors are distinct") {
  auto code_of = [](int q, int cap) {
    try {
      make_tower(q, cap);
    } catch (const FieldError& e) {
      return e.code;
    }
    return FieldErrc::mixed_fields;  // sentinel: no throw
  };
  CHECK(code_of(6, 16) == FieldErrc::not_prime_power);
  CHECK(code_of(10, 16) == FieldErrc::not_prime_power);
  CHECK(code_of(12, 16) == FieldErrc::not_prime_power);
  CHECK(code_of(4, 16) == FieldErrc::q_too_small);
  CHECK(code_of(5, 16) == FieldErrc::q_too_small);
  CHECK(code_of(11, 9) == FieldErrc::q_too_large);
  CHECK(code_of(32, 16) == FieldErrc::q_too_large);
}

TEST_CASE("arithmetic examples") {
  FieldTower t7 = make_tower(7);
  const FieldSpec* f7 = t7.base;
  CHECK(f7->mul(3, 5) == 1);  // 15 = 1 mod 7

  FieldTower t8 = make_tower(8);
  const FieldSpec* f8 = t8.base;
  // x * x^2 = x^3 = x + 1 under x^3 + x + 1.
  CHECK(f8->mul(2, 4) == 3);

  FieldElement zero{f7, 0};
  CHECK_THROWS_AS(zero.inv(), FieldError);
  FieldElement a{f7, 3}, b{f8, 3};
  CHECK_THROWS_AS(a + b, FieldError);
  CHECK_THROWS_AS(a * b, FieldError);

  FieldElement x{f7, 3};
  CHECK((x * x.inv()).idx() == 1);
  CHECK((x + (-x)).is_zero());
  CHECK((x / x).idx() == 1);
  CHECK(x.pow(6).idx() == 1);
  CHECK(x.pow(0).idx() == 1);
  CHECK((x - x).is_zero());
}

TEST_CASE("multiplicative order: x^(q-1) = 1 exhaustively") {
  for (int q : {7, 8, 9}) {
    FieldTower t = make_tower(q);
    for (int x = 1; x < t.base->size; ++x)
      CHECK(t.base->pow(static_cast<uint16_t>(x), q - 1) == 1);
    const long long ext_order = static_cast<long long>(t.ext->size) - 1;
    for (int x = 1; x < t.ext->size; ++x)
      CHECK(t.ext->pow(static_cast<uint16_t>(x), ext_order) == 1);
  }
}

TEST_CASE("frobenius fixes exactly the embedded base field") {
  FieldTower t = make_tower(7);
  int fixed = 0;
  for (int x = 0; x < t.ext->size; ++x)
    if (t.frob_t[static_cast<size_t>(x)] == x) ++fixed;
  CHECK(fixed == 7);
  for (int c = 0; c < 7; ++c) {
    FieldElement e = t.embed(FieldElement{t.base, static_cast<uint16_t>(c)});
    CHECK(t.frobenius(e) == e);
  }
  FieldElement omega{t.ext, t.omega};
  CHECK(t.frobenius(omega) != omega);
  // Galois group has order 3.
  for (int x = 0; x < t.ext->size; ++x) {
    uint16_t y = t.frob_t[t.frob_t[t.frob_t[static_cast<size_t>(x)]]];
    CHECK(y == x);
  }
  FieldElement base_elt{t.base, 3};
  CHECK_THROWS_AS(t.frobenius(base_elt), FieldError);
}

TEST_CASE("embedding is a field homomorphism") {
  std::mt19937 rng(991);
  for (int q : {7, 8, 9}) {
    FieldTower t = make_tower(q);
    for (int trial = 0; trial < 1000; ++trial) {
      FieldElement x{t.base, static_cast<uint16_t>(rng() % q)};
      FieldElement y{t.base, static_cast<uint16_t>(rng() % q)};
      CHECK(t.embed(x + y) == t.embed(x) + t.embed(y));
      CHECK(t.embed(x * y) == t.embed(x) * t.embed(y));
    }
  }
}

TEST_CASE("field axioms sampled: distributivity and associativity") {
  std::mt19937 rng(1234);
  for (int q : {7, 8, 9}) {
    FieldTower t = make_tower(q);
    for (const FieldSpec* f : {t.base, t.ext}) {
      for (int trial = 0; trial < 1000; ++trial) {
        FieldElement x{f, static_cast<uint16_t>(rng() % f->size)};
        FieldElement y{f, static_cast<uint16_t>(rng() % f->size)};
        FieldElement z{f, static_cast<uint16_t>(rng() % f->size)};
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x * y) * z == x * (y * z));
        CHECK((x + y) + z == x + (y + z));
      }
    }
  }
}

TEST_CASE("expansion over {1, omega, omega^2} is a bijection") {
  for (int q : {7, 8, 9}) {
    FieldTower t = make_tower(q);
    for (int x = 0; x < t.ext->size; ++x) {
      auto c = t.expand(FieldElement{t.ext, static_cast<uint16_t>(x)});
      FieldElement back = t.compose(c[0], c[1], c[2]);
      CHECK(back.idx() == x);
    }
  }
}

TEST_CASE("element coefficients round-trip") {
  FieldTower t = make_tower(8);
  for (int x = 0; x < 8; ++x) {
    auto c = t.base->coeffs(static_cast<uint16_t>(x));
    REQUIRE(c.size() == 3);
    CHECK(t.base->from_coeffs(c) == x);
  }
}
