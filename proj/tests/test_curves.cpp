#include <doctest.h>

#include "zetterberg/curves.hpp"
#include "zetterberg/errors.hpp"
#include "zetterberg/properties.hpp"

using namespace zetterberg;
using namespace zetterberg::curves;
using gf::FieldSpec;
using properties::Parity;

TEST_CASE("curve counts at the desk-scale towers") {
  auto t71 = gf::make_tower(FieldSpec::make(7, 1), 1);
  auto c71 = count_N(t71);
  CHECK(c71.m == 3);
  CHECK(c71.N_s == 0);
  CHECK(c71.N_chi == 8);
  CHECK(c71.genus == 5);
  CHECK(c71.hasse_weil_ok);
  CHECK(count_points_direct(t71) == 8);

  auto t73 = gf::make_tower(FieldSpec::make(7, 1), 3);
  auto c73 = count_N(t73);
  CHECK(c73.N_s == 42);
  CHECK(c73.N_chi == 344);
  CHECK(c73.hasse_weil_ok);
  CHECK(count_points_direct(t73) == 344);

  auto t231 = gf::make_tower(FieldSpec::make(23, 1), 1);
  auto c231 = count_N(t231);
  CHECK(c231.m == 11);
  CHECK(c231.N_s == 0);
  CHECK(c231.N_chi == 2048);
  CHECK(c231.genus == 1 + (1 << 10) * 9);
  CHECK(c231.hasse_weil_ok);
  CHECK(count_points_direct(t231) == 2048);
}

TEST_CASE("odd-branch variant counts u = 0 separately") {
  auto t71 = gf::make_tower(FieldSpec::make(7, 1), 1);
  auto c = count_N(t71, Parity::odd);
  CHECK(c.N_s == 1);       // u = 0 qualifies: eta(-beta_i) = +1 when q = 3 mod 4
  CHECK(c.N_s_star == 0);  // but contributes no F_q^* witness
  CHECK(c.N_chi == 16);
  CHECK(count_points_direct(t71, Parity::odd) == 16);
}

TEST_CASE("curve counts agree with I(q0) membership") {
  for (uint32_t s : {1u, 3u}) {
    auto t = gf::make_tower(FieldSpec::make(7, 1), s);
    bool by_curve = count_N(t, Parity::even).N_s_star > 0 ||
                    count_N(t, Parity::odd).N_s_star > 0;
    CHECK(by_curve == properties::in_I(FieldSpec::make(7, 1), s).member);
  }
}

TEST_CASE("s_star thresholds of the worked examples") {
  CHECK(s_star(7).s_star == 3);
  CHECK(s_star(23).s_star == 7);
  CHECK(s_star(31).s_star == 9);
  CHECK(s_star(47).s_star == 11);
}

TEST_CASE("s_star minimality and parity") {
  for (uint64_t q0 : {7ull, 23ull, 31ull, 47ull, 71ull, 79ull}) {
    auto r = s_star(q0);
    CHECK(r.s_star % 2 == 1);
    CHECK(s_star_holds(q0, r.s_star));
    if (r.s_star > 2) CHECK_FALSE(s_star_holds(q0, r.s_star - 2));
    // and the inequality keeps holding above the threshold
    CHECK(s_star_holds(q0, r.s_star + 2));
  }
  CHECK_THROWS_AS(s_star(13), input_error);
}

TEST_CASE("threshold coherence: N_s > 0 at s >= s_star where enumerable") {
  // s_star(7) = 3 and q = 7^5 is still enumerable
  for (uint32_t s : {3u, 5u}) {
    auto t = gf::make_tower(FieldSpec::make(7, 1), s);
    CHECK(count_N(t).N_s > 0);
  }
}

TEST_CASE("serialization") {
  auto t = gf::make_tower(FieldSpec::make(7, 1), 1);
  auto j = count_N(t).to_json();
  CHECK(j["N_chi"] == 8);
  CHECK(j["parity"] == "even");
  CHECK(s_star(23).to_json()["s_star"] == 7);
}
