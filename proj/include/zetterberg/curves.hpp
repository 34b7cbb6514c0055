#pragma once

#include <cstdint>

#include <json.hpp>

#include "zetterberg/gf.hpp"
#include "zetterberg/properties.hpp"

namespace zetterberg::curves {

/// Point count of the fiber-product curve chi over F_q with branch set the
/// m nonzero squares (even) or non-squares (odd, derived variant) of F_{q0}.
struct CurveCount {
  uint64_t q0 = 0;
  uint32_t s = 0;
  uint64_t q = 0;
  uint32_t m = 0;
  properties::Parity parity = properties::Parity::even;
  uint64_t N_s = 0;       // u in F_q with every u^2 - alpha_i a nonzero square
  uint64_t N_s_star = 0;  // same restricted to u != 0 (the solvability count)
  uint64_t N_chi = 0;     // 2^m (1 + N_s)
  uint64_t genus = 0;     // 1 + 2^(m-1)(m-2)
  bool hasse_weil_ok = false;

  nlohmann::json to_json() const;
};

/// Exact N_s by scanning F_q; N_chi assembled by the 2^m(1 + N_s) identity;
/// Hasse-Weil membership checked in exact integer arithmetic.
CurveCount count_N(const gf::Tower& t, properties::Parity parity = properties::Parity::even);

/// Independent count: sums the affine fibre sizes prod_i (1 + eta(u^2 - alpha_i))
/// over u and adds the 2^m points over P_infinity. Asserts each fibre is 0 or
/// 2^m and that branch-set fibres are empty.
uint64_t count_points_direct(const gf::Tower& t,
                             properties::Parity parity = properties::Parity::even);

struct SStarResult {
  uint64_t q0 = 0;
  uint32_t m = 0;
  uint32_t s_star = 0;

  nlohmann::json to_json() const;
};

/// The threshold inequality q0^s + 1 - 2 genus q0^(s/2) > 2^m at one odd s,
/// evaluated exactly (square both sides after a sign check).
bool s_star_holds(uint64_t q0, uint32_t s);

/// Smallest odd s for which the inequality holds; covering radius 3 is then
/// guaranteed for all odd s >= s_star.
SStarResult s_star(uint64_t q0);

}  // namespace zetterberg::curves
