#include <doctest.h>

#include "zetterberg/congruence.hpp"
#include "zetterberg/errors.hpp"
#include "zetterberg/intmath.hpp"

using namespace zetterberg;
using congruence::classify;
using congruence::power_residue_check;

TEST_CASE("classify known fields") {
  CHECK(classify(7).ell == 3);
  CHECK(classify(47).ell == 4);
  CHECK(classify(31).ell == 5);
  CHECK(classify(23).ell == 3);
  CHECK(classify(49).in_s);
  CHECK(classify(343).ell == 3);
  CHECK_FALSE(classify(49).ell.has_value());
  CHECK_THROWS_AS(classify(8), input_error);
  CHECK_THROWS_AS(classify(1), input_error);
}

TEST_CASE("classify partitions the odd integers") {
  for (uint64_t q = 3; q < 10000; q += 2) {
    auto c = classify(q);
    CHECK(c.in_s == !c.ell.has_value());
    if (c.ell) {
      uint32_t ell = *c.ell;
      CHECK(ell >= 3);
      uint64_t mod = uint64_t(1) << (ell + 1);
      CHECK(q % mod == (uint64_t(1) << ell) - 1);
    } else {
      CHECK(q % 8 != 7);
    }
  }
}

TEST_CASE("power residue iff tests, exhaustive") {
  // A^s = 2^ell-1 (mod 2^ell)   iff  A = 2^ell-1 (mod 2^ell)   and s odd
  // A^s = 2^ell-1 (mod 2^ell+1) iff  A = 2^ell-1 (mod 2^ell+1) and s odd
  for (uint64_t a = 1; a < 1024; a += 2) {
    for (uint32_t ell = 2; ell <= 8; ++ell) {
      const uint64_t m1 = uint64_t(1) << ell;
      const uint64_t m2 = m1 << 1;
      bool exists_l = false, exists_l1 = false;
      for (uint32_t s = 1; s <= 12; ++s) {
        auto r = power_residue_check(a, s, ell);
        CHECK(r.holds_mod_2l == (a % m1 == m1 - 1 && s % 2 == 1));
        CHECK(r.holds_mod_2l1 == (a % m2 == m1 - 1 && s % 2 == 1));
        exists_l |= r.holds_mod_2l;
        exists_l1 |= r.holds_mod_2l1;
      }
      CHECK(exists_l == (a % m1 == m1 - 1));
      CHECK(exists_l1 == (a % m2 == m1 - 1));
    }
  }
}

TEST_CASE("A = 7 mod 16 powers stay 7 mod 16 exactly at odd exponents") {
  for (uint64_t a = 7; a < 4096; a += 16) {
    for (uint32_t s = 1; s <= 12; ++s) {
      bool is7 = intmath::powmod(a, s, 16) == 7;
      CHECK(is7 == (s % 2 == 1));
    }
  }
}

TEST_CASE("spec examples") {
  CHECK(power_residue_check(7, 3, 3).holds_mod_2l1);
  CHECK_FALSE(power_residue_check(7, 2, 3).holds_mod_2l1);
  // 15 = -1 mod 16: odd powers are 15 mod 16, never 7; mod 8 they are 7
  CHECK_FALSE(power_residue_check(15, 5, 3).holds_mod_2l1);
  CHECK(power_residue_check(15, 5, 3).holds_mod_2l);
}
