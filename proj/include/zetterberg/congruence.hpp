#pragma once

#include <cstdint>
#include <optional>

namespace zetterberg::congruence {

/// 2-adic class of an odd field size q: either q != 7 mod 8 (the set the
/// prior constructions already cover) or the unique ell >= 3 with
/// q = 2^ell - 1 mod 2^(ell+1).
struct TwoAdicClass {
  uint64_t q = 0;
  bool in_s = false;
  std::optional<uint32_t> ell;
};

/// Classify an odd q >= 3. ell is read off the 2-adic expansion: the number
/// of trailing one bits.
TwoAdicClass classify(uint64_t q);

struct PowerResidue {
  bool holds_mod_2l = false;   // A^s = 2^ell - 1 (mod 2^ell)
  bool holds_mod_2l1 = false;  // A^s = 2^ell - 1 (mod 2^(ell+1))
};

/// Evaluates both congruences directly by modular exponentiation.
PowerResidue power_residue_check(uint64_t a, uint32_t s, uint32_t ell);

}  // namespace zetterberg::congruence
