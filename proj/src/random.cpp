#include "gorhom/random.hpp"

namespace gorhom::gen {

long uniform(Engine& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

FPModule module(Engine& rng, const Ring& ring, std::size_t max_gens, const std::vector<Int>& z_orders) {
  const std::size_t g = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_gens)));
  std::vector<Int> orders;
  const std::vector<Int> pool = ring.is_finite() ? divisors(ring.modulus()) : z_orders;
  for (std::size_t i = 0; i < g; ++i) {
    const Int& o = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool.size()) - 1))];
    if (o != 1) orders.push_back(o);
  }
  return FPModule(ring, orders);
}

FPModule finite_module(Engine& rng, const Ring& ring, const Int& exponent_bound, std::size_t max_gens, const Int& max_size) {
  Int e = exponent_bound;
  if (ring.is_finite()) e = gcd(e, ring.modulus());
  const std::vector<Int> pool = divisors(e);
  const std::size_t g = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_gens)));
  std::vector<Int> orders;
  Int size = 1;
  for (std::size_t i = 0; i < g; ++i) {
    const Int& o = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool.size()) - 1))];
    if (o == 1 || size * o > max_size) continue;
    size *= o;
    orders.push_back(o);
  }
  return FPModule(ring, orders);
}

ModuleHom hom(Engine& rng, const FPModule& m, const FPModule& n) {
  const HomSpace h(m, n);
  Matrix c(m.ring(), h.module().gens(), 1);
  for (std::size_t i = 0; i < h.module().gens(); ++i) {
    const Int& o = h.module().order(i);
    const long hi = o == 0 ? 5 : static_cast<long>(o.get_ui()) - 1;
    c.set(i, 0, uniform(rng, 0, hi));
  }
  return h.map(c);
}

Matrix elements(Engine& rng, const FPModule& m, std::size_t count) {
  Matrix c(m.ring(), m.gens(), count);
  for (std::size_t i = 0; i < m.gens(); ++i) {
    const Int& o = m.order(i);
    const long hi = o == 0 ? 7 : static_cast<long>(o.get_ui()) - 1;
    for (std::size_t j = 0; j < count; ++j) c.set(i, j, uniform(rng, o == 0 ? -7 : 0, hi));
  }
  return c;
}

ChainComplex complex(Engine& rng, const Ring& ring, int lo, int len, const Int& max_size) {
  const Int bound = ring.is_finite() ? ring.modulus() : Int(4);
  std::vector<FPModule> terms;
  std::vector<ModuleHom> d;
  for (int i = 0; i < len; ++i) {
    FPModule t = ring.is_finite() ? finite_module(rng, ring, bound, 3, max_size) : module(rng, ring, 2);
    if (i > 0) {
      const FPModule& below = terms.back();
      const Kernel k = d.empty() ? Kernel{below, ModuleHom::identity(below)} : kernel(d.back());
      d.push_back(k.inclusion * hom(rng, t, k.module));
    }
    terms.push_back(std::move(t));
  }
  if (terms.empty()) return ChainComplex::zero(ring);
  return ChainComplex(ring, lo, std::move(terms), std::move(d));
}

ChainMap chain_map(Engine& rng, const ChainComplex& x, const ChainComplex& y, int attempts) {
  // Pick f_n on the lowest degree first, then f_n must satisfy ∂f_n = f_{n-1}∂ : solve
  // for a particular lift and add a random map into the cycles.
  for (int a = 0; a < attempts; ++a) {
    std::map<int, ModuleHom> c;
    bool ok = true;
    for (int n = x.lo(); n <= x.hi() && ok; ++n) {
      const ModuleHom prev = c.count(n - 1) ? c.at(n - 1) : ModuleHom::zero(x.term(n - 1), y.term(n - 1));
      const ModuleHom want = prev * x.d(n);
      std::optional<ModuleHom> part;
      try {
        part = factor_through(y.d(n), want);
      } catch (const CheckFailed&) {
        // the lift exists elementwise but not as a map from this source
      }
      if (!part) {
        ok = false;
        break;
      }
      const Kernel z = kernel(y.d(n));
      c.emplace(n, *part + z.inclusion * hom(rng, x.term(n), z.module));
    }
    if (ok) return ChainMap(x, y, std::move(c));
  }
  return ChainMap::zero(x, y);
}

}  // namespace gorhom::gen
