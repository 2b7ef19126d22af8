#include "gorhom/derived.hpp"

namespace gorhom {

namespace {

// P_k, or 0 beyond the computed length.
FPModule term(const Resolution& r, std::size_t k) {
  return k < r.terms.size() ? r.terms[k] : FPModule::zero(r.target.ring());
}

// d_k : P_k → P_{k-1} (k ≥ 1), zero where the resolution ran out.
ModuleHom differential(const Resolution& r, std::size_t k) {
  if (k < r.maps.size()) return r.maps[k];
  return ModuleHom::zero(term(r, k), term(r, k - 1));
}

}  // namespace

DerivedModule ext(unsigned i, const FPModule& m, const FPModule& n) { return ext(i, m, n, i + 1); }

DerivedModule ext(unsigned i, const FPModule& m, const FPModule& n, std::size_t len) {
  const Resolution r = free_resolution(m, std::max<std::size_t>(len, i + 1));
  const HomSpace hi(term(r, i), n), hnext(term(r, i + 1), n);
  const ModuleHom out = hom_pre(hi, hnext, differential(r, i + 1));
  ModuleHom in;
  if (i == 0) {
    in = ModuleHom::zero(FPModule::zero(m.ring()), hi.module());
  } else {
    const HomSpace hprev(term(r, i - 1), n);
    in = hom_pre(hprev, hi, differential(r, i));
  }
  return DerivedModule{homology(in, out).module, i, Variance::Ext, len};
}

DerivedModule tor(unsigned i, const FPModule& m, const FPModule& n) { return tor(i, m, n, i + 1); }

DerivedModule tor(unsigned i, const FPModule& m, const FPModule& n, std::size_t len) {
  const Resolution r = free_resolution(m, std::max<std::size_t>(len, i + 1));
  const ModuleHom idn = ModuleHom::identity(n);
  const TensorSpace ti(term(r, i), n), tnext(term(r, i + 1), n);
  const ModuleHom in = tensor_map(tnext, ti, differential(r, i + 1), idn);
  ModuleHom out;
  if (i == 0) {
    out = ModuleHom::zero(ti.module(), FPModule::zero(m.ring()));
  } else {
    const TensorSpace tprev(term(r, i - 1), n);
    out = tensor_map(ti, tprev, differential(r, i), idn);
  }
  return DerivedModule{homology(in, out).module, i, Variance::Tor, len};
}

bool exact_at(const ModuleHom& f, const ModuleHom& g) {
  if (!(g * f).is_zero()) return false;
  return homology(f, g).module.is_zero();
}

void verify_short_exact(const ShortExact& s) {
  if (s.alpha.dst() != s.beta.src()) throw CheckFailed("short exact sequence: maps not composable");
  if (!is_injective(s.alpha)) throw CheckFailed("short exact sequence: first map not injective");
  if (!is_surjective(s.beta)) throw CheckFailed("short exact sequence: second map not onto");
  if (!exact_at(s.alpha, s.beta)) throw CheckFailed("short exact sequence: not exact in the middle");
}

TorLesReport tor_les(const FPModule& w, const ShortExact& ses) {
  verify_short_exact(ses);
  const FPModule& a = ses.alpha.src();
  const FPModule& b = ses.alpha.dst();
  const FPModule& c = ses.beta.dst();
  const Resolution r = free_resolution(c, 2);
  const ModuleHom idw = ModuleHom::identity(w);

  // Chain lift of P → C along β, then α.
  const ModuleHom eps = r.maps[0];
  const ModuleHom a0 = *factor_through(ses.beta, eps);
  const ModuleHom d1 = differential(r, 1);
  const auto a1 = factor_through(ses.alpha, a0 * d1);
  if (!a1) throw CheckFailed("tor_les: lift into A failed");

  const TensorSpace w0(w, term(r, 0)), w1(w, term(r, 1)), w2(w, term(r, 2));
  const Homology h = homology(tensor_map(w2, w1, idw, differential(r, 2)), tensor_map(w1, w0, idw, d1));

  const TensorSpace wa(w, a), wb(w, b), wc(w, c);
  TorLesReport rep;
  rep.tor1 = h.module;
  rep.wa = wa.module();
  rep.wb = wb.module();
  rep.wc = wc.module();
  const ModuleHom w_a1 = tensor_map(w1, wa, idw, *a1);
  rep.delta = ModuleHom(h.module, wa.module(), w_a1.matrix() * h.cycles.inclusion.matrix() * h.section);
  rep.w_alpha = tensor_map(wa, wb, idw, ses.alpha);
  rep.w_beta = tensor_map(wb, wc, idw, ses.beta);
  rep.exact_at_wa = exact_at(rep.delta, rep.w_alpha);
  rep.exact_at_wb = exact_at(rep.w_alpha, rep.w_beta);
  rep.onto_wc = is_surjective(rep.w_beta);
  return rep;
}

}  // namespace gorhom
