#include "gorhom/integer.hpp"

#include <algorithm>
#include <stdexcept>

namespace gorhom {

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int mod(const Int& a, const Int& m) {
  if (m <= 0) throw std::invalid_argument("mod: modulus must be positive");
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

unsigned valuation(const Int& n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Int x = abs(n);
  unsigned v = 0;
  while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
    x /= p;
    ++v;
  }
  return v;
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
  if (n == 0) throw std::invalid_argument("factorize: zero");
  std::vector<std::pair<Int, unsigned>> out;
  Int x = abs(n);
  for (Int p = 2; p * p <= x; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
      x /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (x > 1) out.emplace_back(x, 1);
  return out;
}

std::vector<Int> divisors(const Int& n) {
  if (n <= 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<Int> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

UnitSplit unit_split(const Int& a, const Int& m) {
  const Int r = mod(a, m);
  if (r == 0) return {0, 1, 1};
  const Int g = gcd(r, m);
  const Int cofactor = r / g;
  const Int reduced = m / g;
  // cofactor is a unit mod m/g; lift it to a unit mod m.
  Int u = cofactor;
  while (gcd(u, m) != 1) u += reduced;
  u = mod(u, m);
  Int inv;
  mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
  if (m == 1) inv = 0;
  return {g, u, inv};
}

std::string to_string(const Int& a) { return a.get_str(); }

bool fits_int64(const Int& a) { return a.fits_slong_p(); }

}  // namespace gorhom
