#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gorhom {

/// Arbitrary-precision integer used for every matrix entry and module order.
using Int = mpz_class;

/// Non-negative gcd; gcd(0, 0) = 0.
Int gcd(const Int& a, const Int& b);

/// Non-negative lcm; lcm(0, x) = 0.
Int lcm(const Int& a, const Int& b);

/// Representative of a modulo m in [0, m). m must be positive.
Int mod(const Int& a, const Int& m);

/// Exponent of p in n (n != 0).
unsigned valuation(const Int& n, const Int& p);

/// Prime factorization of |n| by trial division, primes ascending. n != 0.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

/// Positive divisors of n > 0, ascending.
std::vector<Int> divisors(const Int& n);

/// Find a unit u (mod m) with a ≡ u · gcd(a, m) (mod m). Returns (gcd, u, u^{-1}).
struct UnitSplit {
  Int part;
  Int unit;
  Int unit_inverse;
};
UnitSplit unit_split(const Int& a, const Int& m);

std::string to_string(const Int& a);

bool fits_int64(const Int& a);

}  // namespace gorhom
