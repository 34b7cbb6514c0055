#include "zetterberg/congruence.hpp"

#include <bit>

#include "zetterberg/errors.hpp"
#include "zetterberg/intmath.hpp"

namespace zetterberg::congruence {

TwoAdicClass classify(uint64_t q) {
  if (q < 3 || q % 2 == 0) throw input_error("q must be an odd integer >= 3");
  TwoAdicClass c;
  c.q = q;
  if (q % 8 != 7) {
    c.in_s = true;
    return c;
  }
  c.ell = uint32_t(std::countr_one(q));
  return c;
}

PowerResidue power_residue_check(uint64_t a, uint32_t s, uint32_t ell) {
  if (a % 2 == 0 || s < 1 || ell < 2 || ell >= 62) {
    throw input_error("require odd a, s >= 1, 2 <= ell < 62");
  }
  PowerResidue r;
  const uint64_t m1 = uint64_t(1) << ell;
  const uint64_t m2 = m1 << 1;
  const uint64_t target = m1 - 1;
  r.holds_mod_2l = intmath::powmod(a, s, m1) == target % m1;
  r.holds_mod_2l1 = intmath::powmod(a, s, m2) == target;
  return r;
}

}  // namespace zetterberg::congruence
