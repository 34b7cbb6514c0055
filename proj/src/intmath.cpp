#include "zetterberg/intmath.hpp"

#include <algorithm>

#include "zetterberg/errors.hpp"

namespace zetterberg::intmath {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

namespace {

bool miller_rabin(uint64_t n, uint64_t a) {
  if (a % n == 0) return true;
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  uint64_t x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

uint64_t pollard_rho(uint64_t n) {
  if ((n & 1) == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    auto f = [n, c](uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      uint64_t diff = x > y ? x - y : y - x;
      if (diff == 0) {
        d = 0;  // cycle without factor, retry with next c
        break;
      }
      d = std::__gcd(diff, n);
    }
    if (d != 0 && d != n) return d;
  }
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // deterministic base set for 64-bit inputs
  for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    if (!miller_rabin(n, a)) return false;
  }
  return true;
}

std::vector<uint64_t> factorize(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t p : {2ull, 3ull, 5ull}) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  uint64_t d = 7;
  while (d * d <= n && d < 1000000) {
    while (n % d == 0) {
      out.push_back(d);
      n /= d;
    }
    d += 2;
  }
  // remaining part has no factor below 10^6
  std::vector<uint64_t> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    uint64_t v = stack.back();
    stack.pop_back();
    if (v == 1) continue;
    if (is_prime(v)) {
      out.push_back(v);
      continue;
    }
    uint64_t f = pollard_rho(v);
    stack.push_back(f);
    stack.push_back(v / f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  auto all = factorize(n);
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

uint64_t checked_pow(uint64_t p, uint32_t d) {
  unsigned __int128 r = 1;
  for (uint32_t i = 0; i < d; ++i) {
    r *= p;
    if (r > (static_cast<unsigned __int128>(1) << 63)) {
      throw input_error("field size p^d exceeds 2^63");
    }
  }
  return static_cast<uint64_t>(r);
}

}  // namespace zetterberg::intmath
