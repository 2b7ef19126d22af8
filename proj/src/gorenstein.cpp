#include "gorhom/gorenstein.hpp"

#include <algorithm>

namespace gorhom {

namespace {

const Ring& ring_of(const Subject& s) {
  return std::visit([](const auto& v) -> const Ring& { return v.ring(); }, s);
}

FPModule cyclic_or_zero(const Ring& ring, const Int& d) {
  return d == 1 ? FPModule::zero(ring) : FPModule::cyclic(ring, d);
}

GDim max_dim(const GDim& a, const GDim& b) {
  if (!a.computable || !b.computable) return GDim::unknown();
  if (!a.value || !b.value) return GDim::of(std::nullopt);
  return GDim::of(std::max(*a.value, *b.value));
}

ShortExact trivial_cover(const FPModule& x) {
  return ShortExact{ModuleHom::zero(FPModule::zero(x.ring()), x), ModuleHom::identity(x)};
}

ShortExact trivial_envelope(const FPModule& x) {
  return ShortExact{ModuleHom::identity(x), ModuleHom::zero(x, FPModule::zero(x.ring()))};
}

ShortExact free_presentation(const FPModule& x) {
  const ModuleHom cover = free_cover(x);
  const Kernel k = kernel(cover);
  return ShortExact{k.inclusion, cover};
}

ShortExact into_envelope(const FPModule& x) {
  const ModuleHom e = injective_envelope(x);
  return ShortExact{e, cokernel(e).projection};
}

// 0 → X → X ⊕ F → F → 0 with F free of rank 1
ShortExact add_free(const FPModule& x) {
  const FPModule f = FPModule::free(x.ring(), 1);
  return ShortExact{sum_injection(x, f, 0), sum_projection(x, f, 1)};
}

}  // namespace

std::string GDim::to_string() const {
  if (!computable) return "not computable over this ring";
  return dimension_string(value);
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::QuasiFrobenius: return "quasi-Frobenius collapse";
    case Rule::FiniteGlobalDimension: return "finite global dimension: Gpd = pd, Gfd = fd";
    case Rule::InjectiveNotComputed: return "no finitely generated injectives over Z";
    case Rule::Degreewise: return "degreewise rule";
    case Rule::WByFinitePd: return "W = finite projective dimension";
    case Rule::WByExactCycles: return "W = exact with cycles of finite projective dimension";
  }
  return "?";
}

std::string GorensteinReport::gpd_line() const {
  std::string why;
  for (Rule r : justification)
    if (r == Rule::QuasiFrobenius || r == Rule::FiniteGlobalDimension || r == Rule::Degreewise)
      why += (why.empty() ? "" : ", ") + rule_name(r);
  return "Gpd = " + gpd.to_string() + " (" + why + "); pd = " + dimension_string(pd);
}

GorensteinReport classify(const FPModule& m) {
  GorensteinReport g;
  g.subject = m;
  g.pd = gorhom::pd(m);
  if (m.ring().is_finite()) {
    g.gpd = g.gid = g.gfd = GDim::of(0u);
    g.justification.push_back(Rule::QuasiFrobenius);
  } else {
    g.gpd = GDim::of(g.pd);
    g.gfd = GDim::of(fd(m));
    g.gid = GDim::unknown();
    g.justification.push_back(Rule::FiniteGlobalDimension);
    g.justification.push_back(Rule::InjectiveNotComputed);
  }
  g.w_member = g.pd.has_value();
  g.justification.push_back(Rule::WByFinitePd);
  return g;
}

GorensteinReport classify(const ChainComplex& x) {
  GorensteinReport g;
  g.subject = x;
  g.gpd = g.gfd = GDim::of(0u);
  g.gid = x.ring().is_finite() ? GDim::of(0u) : GDim::unknown();
  for (int n = x.lo(); n <= x.hi(); ++n) {
    const GorensteinReport t = classify(x.term(n));
    g.gpd = max_dim(g.gpd, t.gpd);
    g.gfd = max_dim(g.gfd, t.gfd);
    if (x.ring().is_finite()) g.gid = max_dim(g.gid, t.gid);
  }
  g.pd = pd_complex(x);
  g.w_member = g.pd.has_value();
  g.justification.push_back(Rule::Degreewise);
  if (x.ring().is_finite()) {
    g.justification.push_back(Rule::QuasiFrobenius);
  } else {
    g.justification.push_back(Rule::FiniteGlobalDimension);
    g.justification.push_back(Rule::InjectiveNotComputed);
  }
  g.justification.push_back(Rule::WByExactCycles);
  return g;
}

GorensteinReport classify(const Subject& s) {
  return std::visit([](const auto& v) { return classify(v); }, s);
}

unsigned fdi(const Ring& ring) { return ring.is_finite() ? 0 : 1; }
unsigned fdp(const Ring& ring) { return ring.is_finite() ? 0 : 1; }

bool gp_r_member(const Subject& s, unsigned r) { return classify(s).gpd.at_most(r); }

bool gi_r_member(const Subject& s, unsigned r) {
  if (!ring_of(s).is_finite()) throw Refused("Gorenstein injective dimension over Z is not computable");
  return classify(s).gid.at_most(r);
}

bool gf_r_member(const Subject& s, unsigned r) { return classify(s).gfd.at_most(r); }

bool p_r_member(const FPModule& m, unsigned r) {
  const Dimension d = pd(m);
  return d && *d <= r;
}

bool w_member(const Subject& s) { return classify(s).w_member; }

bool gp_r_member_by_syzygy(const FPModule& m, unsigned r) { return gp_r_member(syzygy(m, r), 0); }

// ---------------------------------------------------------------- cogenerating sets

std::vector<FPModule> cogenerating_modules(CogenKind kind, const Ring& ring, unsigned r) {
  if (!ring.is_finite()) throw Refused("cogenerating sets are enumerated over Z/m only");
  std::vector<FPModule> out;
  const Int& m = ring.modulus();
  if (kind == CogenKind::T_syzygy) {
    auto ds = divisors(m);
    std::reverse(ds.begin(), ds.end());
    for (const Int& d : ds) out.push_back(cyclic_or_zero(ring, d));
    return out;
  }
  if (kind == CogenKind::X_complexes) throw std::invalid_argument("cogenerating_modules: X is a set of complexes");
  auto seen = [&](const FPModule& x) {
    return std::any_of(out.begin(), out.end(), [&](const FPModule& y) { return isomorphic(x, y); });
  };
  for (const auto& [p, v] : elementary_divisors(FPModule::free(ring, 1))) {
    Int q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), v);
    const FPModule j = FPModule::cyclic(ring, q);
    for (unsigned i = r;; ++i) {
      const FPModule s = i == 0 ? j : strip_projective(syzygy(j, i));
      if (!seen(s)) out.push_back(s);
      if (s.is_zero()) break;
    }
  }
  return out;
}

std::vector<ChainComplex> cogenerating_complexes(const Ring& ring, int bound) {
  if (!ring.is_finite()) throw Refused("cogenerating sets are enumerated over Z/m only");
  std::vector<ChainComplex> out;
  auto ds = divisors(ring.modulus());
  std::reverse(ds.begin(), ds.end());
  for (int k = -bound; k <= bound; ++k)
    for (const Int& d : ds)
      if (d > 1) out.push_back(sphere(k, FPModule::cyclic(ring, d)));
  return out;
}

namespace {

template <class T, class F>
CogenerationReport cogeneration(const std::vector<T>& set, const std::vector<T>& members, const std::vector<T>& nonmembers,
                                F&& ext1) {
  CogenerationReport rep;
  for (const T& s : set) {
    std::vector<CanonicalForm> row;
    for (const T& y : members) {
      row.push_back(canonical_form(ext1(s, y)));
      if (!row.back().is_zero()) rep.members_orthogonal = false;
    }
    rep.member_ext.push_back(std::move(row));
  }
  for (const T& y : nonmembers) {
    const bool hit = std::any_of(set.begin(), set.end(), [&](const T& s) { return !ext1(s, y).is_zero(); });
    rep.nonmember_detected.push_back(hit);
    if (!hit) rep.nonmembers_detected = false;
  }
  return rep;
}

}  // namespace

CogenerationReport verify_cogeneration(const std::vector<FPModule>& set, const std::vector<FPModule>& members,
                                       const std::vector<FPModule>& nonmembers) {
  return cogeneration(set, members, nonmembers, [](const FPModule& s, const FPModule& y) { return ext(1, s, y).value; });
}

CogenerationReport verify_cogeneration(const std::vector<ChainComplex>& set, const std::vector<ChainComplex>& members,
                                       const std::vector<ChainComplex>& nonmembers) {
  return cogeneration(set, members, nonmembers, [](const ChainComplex& s, const ChainComplex& y) { return ext_ch(1, s, y); });
}

// ---------------------------------------------------------------- approximations

std::string class_name(ModuleClass c, unsigned r) {
  const std::string rs = std::to_string(r);
  switch (c) {
    case ModuleClass::GP: return "GP_" + rs;
    case ModuleClass::GI: return "GI_" + rs;
    case ModuleClass::GF: return "GF_" + rs;
    case ModuleClass::W: return "W";
    case ModuleClass::P: return "P_" + rs;
    case ModuleClass::PPerp: return "P_" + rs + "^perp";
    case ModuleClass::GFPerp: return "GF_" + rs + "^perp";
  }
  return "?";
}

bool in_class(ModuleClass c, unsigned r, const FPModule& m) {
  const bool finite_ring = m.ring().is_finite();
  switch (c) {
    case ModuleClass::GP: return gp_r_member(m, r);
    case ModuleClass::GI: return gi_r_member(m, r);
    case ModuleClass::GF: return gf_r_member(m, r);
    case ModuleClass::W: return w_member(m);
    case ModuleClass::P: return p_r_member(m, r);
    case ModuleClass::PPerp:
      // over Z/m P_r = P_0; over Z, P_r^perp for r ≥ 1 is the injectives, and no nonzero f.g. one exists
      if (finite_ring || r == 0) return true;
      return m.is_zero();
    case ModuleClass::GFPerp:
      // GF_r^perp: injectives over Z/m (= projectives); over Z the cotorsion modules for r = 0
      // (finitely generated ones are the finite ones) and the injectives for r ≥ 1
      if (finite_ring) return is_projective(m);
      return r == 0 ? m.is_finite() : m.is_zero();
  }
  return false;
}

ModuleClass left_class(CotorsionPair p) {
  switch (p) {
    case CotorsionPair::GP_W: return ModuleClass::GP;
    case CotorsionPair::W_GI: return ModuleClass::W;
    case CotorsionPair::Pr_perp: return ModuleClass::P;
    case CotorsionPair::GFr_perp: return ModuleClass::GF;
  }
  return ModuleClass::GP;
}

ModuleClass right_class(CotorsionPair p) {
  switch (p) {
    case CotorsionPair::GP_W: return ModuleClass::W;
    case CotorsionPair::W_GI: return ModuleClass::GI;
    case CotorsionPair::Pr_perp: return ModuleClass::PPerp;
    case CotorsionPair::GFr_perp: return ModuleClass::GFPerp;
  }
  return ModuleClass::W;
}

namespace {

unsigned class_r(ModuleClass c, CotorsionPair p, unsigned r) {
  // GP_W and W_GI are the r = 0 pairs
  if (p == CotorsionPair::GP_W || p == CotorsionPair::W_GI) return 0;
  (void)c;
  return r;
}

std::pair<const FPModule*, const FPModule*> left_right(const ApproximationWitness& w) {
  // cover: left = A (middle), right = B (kernel); envelope: right = B′ (middle), left = A′ (cokernel)
  if (w.side == Side::Cover) return {&w.sequence.alpha.dst(), &w.sequence.alpha.src()};
  return {&w.sequence.beta.dst(), &w.sequence.alpha.dst()};
}

}  // namespace

ApproximationWitness approximation_witness(CotorsionPair pair, const FPModule& x, Side side, unsigned r) {
  const bool fin = x.ring().is_finite();
  auto refuse = [&]() -> ShortExact {
    throw Refused("no finitely generated approximation for this pair over " + x.ring().name());
  };
  ShortExact s;
  switch (pair) {
    case CotorsionPair::GP_W:
      if (side == Side::Cover) s = fin ? trivial_cover(x) : free_presentation(x);
      else s = fin ? into_envelope(x) : trivial_envelope(x);
      break;
    case CotorsionPair::W_GI:
      if (!fin) s = refuse();
      else s = side == Side::Cover ? free_presentation(x) : add_free(x);
      break;
    case CotorsionPair::Pr_perp:
      if (side == Side::Cover) s = (!fin && r >= 1) ? trivial_cover(x) : free_presentation(x);
      else s = (fin || r == 0) ? trivial_envelope(x) : refuse();
      break;
    case CotorsionPair::GFr_perp:
      if (side == Side::Cover) s = (fin || r >= 1) ? trivial_cover(x) : refuse();
      else s = fin ? into_envelope(x) : refuse();
      break;
  }
  ApproximationWitness w{pair, r, side, x, s, {}};
  const auto [left, right] = left_right(w);
  const ModuleClass lc = left_class(pair), rc = right_class(pair);
  const unsigned rr = class_r(lc, pair, r);
  w.certificates.push_back(canonical_form(*left).to_string() + " in " + class_name(lc, rr));
  w.certificates.push_back(canonical_form(*right).to_string() + " in " + class_name(rc, rr));
  if (!verify_witness(w)) throw CheckFailed("approximation witness failed verification");
  return w;
}

bool verify_witness(const ApproximationWitness& w) {
  try {
    verify_short_exact(w.sequence);
  } catch (const CheckFailed&) {
    return false;
  }
  if (w.side == Side::Cover && w.sequence.beta.dst() != w.x) return false;
  if (w.side == Side::Envelope && w.sequence.alpha.src() != w.x) return false;
  const auto [left, right] = left_right(w);
  const unsigned rr = class_r(left_class(w.pair), w.pair, w.r);
  return in_class(left_class(w.pair), rr, *left) && in_class(right_class(w.pair), rr, *right);
}

// ---------------------------------------------------------------- filtrations

bool FiltrationSet::contains(const FPModule& q) const {
  if (cyclics) {
    const CanonicalForm c = canonical_form(q);
    return c.factors.size() + c.free_rank <= 1;
  }
  return std::any_of(members.begin(), members.end(), [&](const FPModule& s) { return isomorphic(s, q); });
}

namespace {

constexpr std::size_t kMaxPeel = std::size_t{1} << 16;

// Lexicographically least element of maximal order whose cyclic span is in s.
std::optional<Matrix> peel_element(const FPModule& q, const FiltrationSet& s) {
  const Int size = q.cardinality();
  if (size > kMaxPeel) throw Refused("filtration: quotient too large to search (" + size.get_str() + " elements)");
  const Ring& ring = q.ring();
  std::vector<Int> c(q.gens(), 0);
  std::optional<Matrix> best;
  Int best_order = 1;
  std::vector<Int> allowed;  // orders d with R/(d) in s (cyclic members)
  while (true) {
    Int ord = 1;
    for (std::size_t i = 0; i < c.size(); ++i) ord = lcm(ord, q.order(i) / gcd(c[i], q.order(i)));
    if (ord > best_order && s.contains(FPModule::cyclic(ring, ord))) {
      best_order = ord;
      best = Matrix::column_vector(ring, c);
    }
    // odometer, last coordinate fastest
    std::size_t i = c.size();
    while (i > 0) {
      --i;
      if (++c[i] < q.order(i)) break;
      c[i] = 0;
      if (i == 0) return best;
    }
    if (c.empty()) return best;
  }
}

}  // namespace

FiltrationChain build_filtration(const FPModule& m, const FiltrationSet& s) {
  if (!m.is_finite()) throw Refused("filtrations are built for finite modules");
  const Ring& ring = m.ring();
  FiltrationChain chain{m, {}, {}};
  Matrix gens(ring, m.gens(), 0);
  std::optional<ModuleHom> prev;
  while (true) {
    const ModuleHom span(FPModule::free(ring, gens.cols()), m, gens);
    const Cokernel q = cokernel(span);
    if (q.module.is_zero()) break;
    const auto e = peel_element(q.module, s);
    if (!e) throw CheckFailed("no filtration by the given set: no element of " + canonical_form(q.module).to_string() + " spans a member");
    gens = Matrix::hcat(gens, m.reduce(q.section * *e));
    const Submodule sub = submodule(m, gens);
    InclusionWitness w = make_inclusion(sub.inclusion);
    const ModuleHom step = prev ? *factor_through(w.incl, *prev) : ModuleHom::zero(FPModule::zero(ring), w.incl.src());
    chain.quotients.push_back(cokernel(step).module);
    prev = w.incl;
    chain.stages.push_back(std::move(w));
  }
  return chain;
}

bool verify_filtration(const FiltrationChain& c, const FiltrationSet& s) {
  const Ring& ring = c.module.ring();
  if (c.stages.size() != c.quotients.size()) return false;
  if (c.stages.empty()) return c.module.is_zero();
  for (const auto& st : c.stages)
    if (st.incl.dst() != c.module || !is_injective(st.incl)) return false;
  if (!is_surjective(c.stages.back().incl)) return false;
  for (std::size_t i = 0; i < c.stages.size(); ++i) {
    ModuleHom step = ModuleHom::zero(FPModule::zero(ring), c.stages[i].incl.src());
    if (i > 0) {
      const auto h = factor_through(c.stages[i].incl, c.stages[i - 1].incl);
      if (!h) return false;
      step = *h;
    }
    const FPModule q = cokernel(step).module;
    if (!isomorphic(q, c.quotients[i]) || !s.contains(q)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- purity

bool PurityClosureReport::passed() const {
  if (!sub.gfd.at_most(0) || !quotient.gfd.at_most(0)) return false;
  return std::all_of(les.begin(), les.end(), [](const TorLesReport& r) { return r.exact() && r.tor1.is_zero(); });
}

PurityClosureReport w_purity_closure_check(const FPModule& e, const InclusionWitness& w) {
  if (w.incl.dst() != e) throw std::invalid_argument("purity check: inclusion does not land in the given module");
  if (!classify(e).gfd.at_most(0)) throw Refused("purity check: the module is not Gorenstein flat");
  if (!is_w_pure(w)) throw Refused("purity check: the inclusion is not W-pure");
  PurityClosureReport rep{classify(w.incl.src()), classify(w.quotient), {}, {}};
  const Ring& ring = e.ring();
  rep.test_modules.push_back(FPModule::free(ring, 1));
  if (ring.is_integers()) {
    std::vector<Int> ds = w_test_moduli(w);
    for (const Int d : {Int(2), Int(3)})
      if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
    for (const Int& d : ds) rep.test_modules.push_back(FPModule::cyclic(ring, d));
  }
  const ShortExact ses{w.incl, w.projection};
  for (const FPModule& t : rep.test_modules) rep.les.push_back(tor_les(t, ses));
  return rep;
}

}  // namespace gorhom
