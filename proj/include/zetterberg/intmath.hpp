#pragma once

#include <cstdint>
#include <vector>

namespace zetterberg::intmath {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

bool is_prime(uint64_t n);

/// Prime factorization, ascending, with multiplicity. Trial division for
/// small factors, Pollard rho above 10^12.
std::vector<uint64_t> factorize(uint64_t n);

/// Distinct prime factors, ascending.
std::vector<uint64_t> prime_factors(uint64_t n);

/// p^d, throws input_error on overflow past 2^63.
uint64_t checked_pow(uint64_t p, uint32_t d);

}  // namespace zetterberg::intmath
