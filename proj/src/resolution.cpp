#include "gorhom/resolution.hpp"

#include <algorithm>

namespace gorhom {

std::string dimension_string(const Dimension& d) { return d ? std::to_string(*d) : "∞"; }

ModuleHom free_cover(const FPModule& m) {
  return ModuleHom(FPModule::free(m.ring(), m.gens()), m, Matrix::identity(m.ring(), m.gens()));
}

Resolution free_resolution(const FPModule& m, std::size_t len) {
  Resolution r;
  r.target = m;
  ModuleHom cover = free_cover(m);
  r.terms.push_back(cover.src());
  r.maps.push_back(cover);
  for (std::size_t k = 1; k <= len; ++k) {
    Kernel ker = kernel(r.maps.back());
    if (ker.module.is_zero()) break;
    FPModule p = FPModule::free(m.ring(), ker.module.gens());
    ModuleHom d(p, r.terms.back(), ker.inclusion.matrix());
    r.terms.push_back(std::move(p));
    r.maps.push_back(std::move(d));
  }
  return r;
}

void verify_resolution(const Resolution& r) {
  if (r.maps.empty()) throw CheckFailed("resolution has no terms");
  if (!is_surjective(r.maps[0])) throw CheckFailed("augmentation is not onto");
  for (std::size_t k = 0; k < r.terms.size(); ++k)
    if (!is_projective(r.terms[k])) throw CheckFailed("term " + std::to_string(k) + " is not projective");
  for (std::size_t k = 1; k < r.maps.size(); ++k) {
    if (!(r.maps[k - 1] * r.maps[k]).is_zero()) throw CheckFailed("composite at " + std::to_string(k) + " is nonzero");
    if (!homology(r.maps[k], r.maps[k - 1]).module.is_zero())
      throw CheckFailed("resolution not exact at term " + std::to_string(k - 1));
  }
}

FPModule syzygy(const FPModule& m, std::size_t i) {
  if (i == 0) return m;
  ModuleHom current = free_cover(m);
  FPModule k;
  for (std::size_t step = 1; step <= i; ++step) {
    Kernel ker = kernel(current);
    if (ker.module.is_zero()) return FPModule::zero(m.ring());
    k = ker.module;
    if (step == i) break;
    current = ModuleHom(FPModule::free(m.ring(), k.gens()), current.src(), ker.inclusion.matrix());
  }
  return k;
}

std::vector<std::pair<Int, unsigned>> elementary_divisors(const FPModule& m) {
  std::vector<std::pair<Int, unsigned>> out;
  for (const auto& o : m.orders())
    if (o > 0)
      for (const auto& pe : factorize(o)) out.push_back(pe);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool full_power(const Ring& ring, const Int& p, unsigned e) { return valuation(ring.modulus(), p) == e; }

Int power(const Int& p, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
  return r;
}

}  // namespace

FPModule strip_projective(const FPModule& m) {
  const Ring& ring = m.ring();
  std::vector<Int> orders;
  for (const auto& [p, e] : elementary_divisors(m))
    if (ring.is_integers() || !full_power(ring, p, e)) orders.push_back(power(p, e));
  return from_canonical(canonical_form(FPModule(ring, std::move(orders))));
}

bool is_projective(const FPModule& m) {
  if (m.ring().is_integers())
    return std::all_of(m.orders().begin(), m.orders().end(), [](const Int& o) { return o == 0; });
  for (const auto& [p, e] : elementary_divisors(m))
    if (!full_power(m.ring(), p, e)) return false;
  return true;
}

bool is_injective_module(const FPModule& m) {
  if (m.ring().is_integers()) throw Refused("injectivity over Z is not decided (f.g. injectives do not exist)");
  return is_projective(m);
}

ModuleHom injective_envelope(const FPModule& m) {
  const Ring& ring = m.ring();
  if (ring.is_integers()) throw Refused("injective envelopes over Z are not finitely generated");
  std::vector<Int> orders;
  std::vector<std::pair<std::size_t, Int>> entries;  // (source generator, multiplier) per target generator
  for (std::size_t i = 0; i < m.gens(); ++i)
    for (const auto& [p, a] : factorize(m.order(i))) {
      const unsigned v = valuation(ring.modulus(), p);
      orders.push_back(power(p, v));
      entries.emplace_back(i, power(p, v - a));
    }
  FPModule e(ring, orders);
  Matrix mat(ring, e.gens(), m.gens());
  for (std::size_t t = 0; t < entries.size(); ++t) mat.set(t, entries[t].first, entries[t].second);
  return ModuleHom(m, e, mat);
}

FPModule cosyzygy(const FPModule& m, std::size_t i) {
  if (m.ring().is_integers()) throw Refused("cosyzygies over Z need non-finitely-generated injectives");
  FPModule cur = m;
  for (std::size_t k = 0; k < i; ++k) cur = cokernel(injective_envelope(cur)).module;
  return cur;
}

FPModule character_dual(const FPModule& m) {
  if (!m.is_finite()) throw Refused("character dual of a module with a free Z summand is not finitely generated");
  if (m.is_zero()) return m;
  return character_dual(m, m.exponent());
}

FPModule character_dual(const FPModule& m, const Int& n) {
  if (!m.is_finite()) throw Refused("character dual of a module with a free Z summand is not finitely generated");
  if (n == 1 || m.is_zero()) return FPModule::zero(m.ring());
  if (!mpz_divisible_p(n.get_mpz_t(), m.exponent().get_mpz_t()))
    throw std::invalid_argument("character dual: exponent does not divide " + n.get_str());
  return HomSpace(m, FPModule::cyclic(m.ring(), n)).module();
}

ModuleHom character_dual(const ModuleHom& f, const Int& n) {
  const FPModule q = n == 1 ? FPModule::zero(f.src().ring()) : FPModule::cyclic(f.src().ring(), n);
  const HomSpace from(f.dst(), q), to(f.src(), q);
  return hom_pre(from, to, f);
}

Dimension pd(const FPModule& m) {
  if (m.ring().is_integers()) return is_projective(m) ? 0u : 1u;
  return is_projective(m) ? Dimension(0u) : std::nullopt;
}

Dimension id(const FPModule& m) {
  if (m.ring().is_integers()) throw Refused("injective dimension over Z is not computed");
  return pd(m);
}

Dimension fd(const FPModule& m) { return pd(m); }

InclusionWitness make_inclusion(const ModuleHom& incl) {
  if (!is_injective(incl)) throw CheckFailed("map is not injective");
  Cokernel c = cokernel(incl);
  return InclusionWitness{incl, std::move(c.module), std::move(c.projection)};
}

std::vector<Int> w_test_moduli(const InclusionWitness& w) {
  if (w.incl.src().ring().is_finite()) return {};
  Int e = 1;
  for (const auto& o : w.quotient.orders())
    if (o > 0) e = lcm(e, o);
  std::vector<Int> out;
  for (const auto& d : divisors(e))
    if (d > 1) out.push_back(d);
  return out;
}

bool is_w_pure(const InclusionWitness& w) {
  const Ring& ring = w.incl.src().ring();
  // W = projectives over ℤ/m, and tensoring with a projective keeps injections.
  if (ring.is_finite()) return true;
  for (const auto& d : w_test_moduli(w)) {
    const FPModule t = FPModule::cyclic(ring, d);
    const TensorSpace from(t, w.incl.src()), to(t, w.incl.dst());
    if (!is_injective(tensor_map(from, to, ModuleHom::identity(t), w.incl))) return false;
  }
  return true;
}

}  // namespace gorhom
