#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "zetterberg/errors.hpp"
#include "zetterberg/gf.hpp"
#include "zetterberg/intmath.hpp"

using namespace zetterberg;
using namespace zetterberg::gf;

namespace {

Elt rand_elt(const FieldCtx& F, std::mt19937_64& rng) {
  return F.from_index(std::uniform_int_distribution<uint64_t>(0, F.size() - 1)(rng));
}

}  // namespace

TEST_CASE("field spec selection is deterministic and serializable") {
  auto s1 = FieldSpec::make(7, 3);
  auto s2 = FieldSpec::make(7, 3);
  CHECK(s1 == s2);
  CHECK(s1.modulus.size() == 4);
  CHECK(s1.modulus.back() == 1);
  auto j = s1.to_json();
  CHECK(FieldSpec::from_json(j) == s1);
  CHECK_THROWS_AS(FieldSpec::make(4, 2), input_error);
  CHECK_THROWS_AS(FieldSpec::make(2, 3), input_error);
}

TEST_CASE("tower construction") {
  auto f7 = FieldSpec::make(7, 1);
  SUBCASE("s = 1") {
    auto t = make_tower(f7, 1);
    CHECK(t.q0 == 7);
    CHECK(t.q == 7);
    CHECK(t.f_q2->size() == 49);
  }
  SUBCASE("s = 3") {
    auto t = make_tower(f7, 3);
    CHECK(t.q == 343);
    CHECK(t.f_q2->size() == 117649);
  }
  SUBCASE("even s rejected") { CHECK_THROWS_AS(make_tower(f7, 2), input_error); }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(12345);
  for (uint32_t d : {1u, 2u, 3u, 6u}) {
    FieldCtx F(FieldSpec::make(7, d));
    for (int it = 0; it < 200; ++it) {
      Elt a = rand_elt(F, rng), b = rand_elt(F, rng), c = rand_elt(F, rng);
      CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.add(a, F.neg(a)) == F.zero());
      if (!a.is_zero()) CHECK(F.mul(a, F.inv(a)) == F.one());
    }
  }
}

TEST_CASE("generator has full multiplicative order") {
  for (auto [p, d] : {std::pair{7u, 2u}, {7u, 6u}, {23u, 2u}, {47u, 2u}}) {
    FieldCtx F(FieldSpec::make(p, d));
    CHECK(F.mult_order(F.generator()) == F.size() - 1);
  }
}

TEST_CASE("quadratic character") {
  FieldCtx F7(FieldSpec::make(7, 1));
  CHECK(F7.eta(F7.one()) == 1);
  CHECK(F7.eta(F7.constant(6)) == -1);  // -1 is a non-square for q = 3 mod 4
  CHECK(F7.eta(F7.constant(3)) == -1);  // squares mod 7 are {1,2,4}
  CHECK(F7.eta(F7.zero()) == 0);

  FieldCtx F(FieldSpec::make(7, 3));
  int plus = 0, minus = 0;
  for (uint64_t i = 1; i < F.size(); ++i) {
    int e = F.eta(F.from_index(i));
    CHECK(e == F.eta_by_exponent(F.from_index(i)));
    (e == 1 ? plus : minus)++;
  }
  CHECK(plus == (F.size() - 1) / 2);
  CHECK(minus == (F.size() - 1) / 2);

  std::mt19937_64 rng(7);
  for (int it = 0; it < 300; ++it) {
    Elt a = rand_elt(F, rng), b = rand_elt(F, rng);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(F.eta(F.mul(a, b)) == F.eta(a) * F.eta(b));
  }
}

TEST_CASE("sqrt in q = 3 mod 4 fields") {
  FieldCtx F(FieldSpec::make(7, 3));
  std::mt19937_64 rng(99);
  for (int it = 0; it < 100; ++it) {
    Elt a = rand_elt(F, rng);
    Elt sq = F.mul(a, a);
    Elt r = F.sqrt(sq);
    CHECK(F.mul(r, r) == sq);
  }
  CHECK_THROWS_AS(F.sqrt(F.generator()), input_error);  // generator is a non-square
}

TEST_CASE("primitive 2^ell roots") {
  auto t = make_tower(FieldSpec::make(7, 1), 1);
  const FieldCtx& F49 = *t.f_q2;
  Elt theta = primitive_2l_root(F49, 3);
  CHECK(F49.mult_order(theta) == 8);
  CHECK(F49.pow(theta, 4) == F49.neg(F49.one()));
  CHECK_THROWS_AS(primitive_2l_root(F49, 5), input_error);  // 32 does not divide 48

  auto t3 = make_tower(FieldSpec::make(7, 1), 3);
  Elt th = primitive_2l_root(*t3.f_q2, 3);
  CHECK(t3.f_q2->pow(th, 4) == t3.f_q2->neg(t3.f_q2->one()));
  // theta lies outside F_q
  CHECK_FALSE(t3.q_in_q2->contains(th));
}

TEST_CASE("subgroup enumeration") {
  auto t = make_tower(FieldSpec::make(7, 1), 1);
  const FieldCtx& F49 = *t.f_q2;
  auto h = subgroup(F49, 8);
  std::set<uint64_t> seen;
  for (const Elt& e : h) {
    CHECK(F49.pow(e, 8) == F49.one());
    seen.insert(F49.index(e));
  }
  CHECK(seen.size() == 8);
  CHECK_THROWS_AS(subgroup(F49, 5), input_error);
}

TEST_CASE("H meets F_q0 in exactly {1,-1}") {
  auto t = make_tower(FieldSpec::make(7, 1), 3);
  const FieldCtx& F2 = *t.f_q2;
  auto h = subgroup(F2, t.q + 1);
  std::set<uint64_t> inter;
  for (const Elt& e : h) {
    if (t.q0_in_q2->contains(e)) inter.insert(F2.index(e));
  }
  CHECK(inter == std::set<uint64_t>{F2.index(F2.one()), F2.index(F2.neg(F2.one()))});
}

TEST_CASE("half-set decomposition H = cal(H) u -cal(H)") {
  for (uint32_t s : {1u, 3u}) {
    auto t = make_tower(FieldSpec::make(7, 1), s);
    const FieldCtx& F2 = *t.f_q2;
    const uint32_t ell = 3;
    const uint64_t hl_order = (t.q + 1) >> ell;
    Elt theta = primitive_2l_root(F2, ell);
    auto hl = subgroup(F2, hl_order).materialize();
    std::set<uint64_t> half, minus_half;
    Elt coset = F2.one();
    for (uint32_t i = 0; i < (1u << (ell - 1)); ++i) {
      for (const Elt& e : hl) {
        Elt b = F2.mul(coset, e);
        half.insert(F2.index(b));
        minus_half.insert(F2.index(F2.neg(b)));
      }
      coset = F2.mul(coset, theta);
    }
    CHECK(half.size() == (t.q + 1) / 2);
    std::set<uint64_t> H;
    for (const Elt& e : subgroup(F2, t.q + 1)) H.insert(F2.index(e));
    std::set<uint64_t> uni = half;
    uni.insert(minus_half.begin(), minus_half.end());
    CHECK(uni == H);
    for (uint64_t v : half) CHECK(minus_half.count(v) == 0);
  }
}

TEST_CASE("nonsquare representative") {
  FieldCtx F7(FieldSpec::make(7, 1));
  CHECK(F7.index(nonsquare_rep(F7)) == 3);
  FieldCtx F343(FieldSpec::make(7, 3));
  Elt d = nonsquare_rep(F343);
  CHECK(F343.eta(d) == -1);
  CHECK(F343.pow(d, (F343.size() - 1) / 2) == F343.neg(F343.one()));
}

TEST_CASE("embeddings round-trip and are homomorphisms") {
  std::mt19937_64 rng(4321);
  for (uint32_t s : {1u, 3u}) {
    auto t = make_tower(FieldSpec::make(7, 1), s);
    // exhaustive round-trip on the base field
    for (uint64_t i = 0; i < t.q0; ++i) {
      Elt x = t.f_q0->from_index(i);
      CHECK(t.q0_in_q->project(t.q0_in_q->embed(x)) == x);
      CHECK(t.q0_in_q2->project(t.q0_in_q2->embed(x)) == x);
    }
    // sampled round-trip and homomorphism on the middle field
    for (int it = 0; it < 100; ++it) {
      Elt x = rand_elt(*t.f_q, rng), y = rand_elt(*t.f_q, rng);
      Elt ex = t.q_in_q2->embed(x), ey = t.q_in_q2->embed(y);
      CHECK(t.q_in_q2->project(ex) == x);
      CHECK(t.q_in_q2->embed(t.f_q->mul(x, y)) == t.f_q2->mul(ex, ey));
      CHECK(t.q_in_q2->embed(t.f_q->add(x, y)) == t.f_q2->add(ex, ey));
    }
  }
}

TEST_CASE("norm map lands in the middle field") {
  auto t = make_tower(FieldSpec::make(7, 1), 3);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 50; ++it) {
    Elt x = rand_elt(*t.f_q2, rng);
    Elt n = t.f_q2->pow(x, t.q + 1);
    CHECK(t.q_in_q2->contains(n));
  }
}

TEST_CASE("element and context mismatches are rejected") {
  FieldCtx a(FieldSpec::make(7, 1)), b(FieldSpec::make(23, 1));
  CHECK_THROWS_AS(a.add(a.one(), b.one()), input_error);
  CHECK_THROWS_AS(b.eta(a.one()), input_error);
}
