#include <gtest/gtest.h>

#include "gorhom/gorenstein.hpp"
#include "gorhom/oracle.hpp"
#include "gorhom/random.hpp"

using namespace gorhom;

namespace {

const Ring ZZ = Ring::integers();
const Ring Z4 = Ring::integers_mod(4);
const Ring Z6 = Ring::integers_mod(6);

FPModule cyc(const Ring& r, long o) { return FPModule::cyclic(r, o); }
FPModule mod(const Ring& r, std::vector<Int> o) { return FPModule(r, std::move(o)); }
std::string cf(const FPModule& m) { return canonical_form(m).to_string(); }

// Every diagonal module with orders drawn (with repetition, non-decreasing) from `orders`,
// at most `max_gens` summands.
std::vector<FPModule> all_modules(const Ring& ring, const std::vector<Int>& orders, std::size_t max_gens) {
  std::vector<FPModule> out;
  std::vector<Int> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    out.push_back(FPModule(ring, cur));
    if (cur.size() == max_gens) return;
    for (std::size_t i = from; i < orders.size(); ++i) {
      cur.push_back(orders[i]);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// ℤ/4-modules ℤ/2^a ⊕ ℤ/4^b with at most `max_size` elements.
std::vector<FPModule> z4_modules(long max_size) {
  std::vector<FPModule> out;
  for (const FPModule& m : all_modules(Z4, {2, 4}, 8))
    if (m.cardinality() <= max_size) out.push_back(m);
  return out;
}

std::string ses_string(const ShortExact& s) {
  return "0 -> " + cf(s.alpha.src()) + " -> " + cf(s.alpha.dst()) + " -> " + cf(s.beta.dst()) + " -> 0";
}

}  // namespace

// ---------------------------------------------------------------- classify

TEST(Classify, TwoOverZ4) {
  const GorensteinReport g = classify(cyc(Z4, 2));
  EXPECT_EQ(g.gpd, GDim::of(0u));
  EXPECT_EQ(g.gid, GDim::of(0u));
  EXPECT_EQ(g.gfd, GDim::of(0u));
  EXPECT_FALSE(g.pd.has_value());
  EXPECT_FALSE(g.w_member);
  EXPECT_EQ(g.gpd_line(), "Gpd = 0 (quasi-Frobenius collapse); pd = ∞");
}

TEST(Classify, FreeModulesHaveZeroDimensions) {
  for (const Ring& r : {ZZ, Z4, Z6}) {
    const GorensteinReport g = classify(FPModule::free(r, 2));
    EXPECT_EQ(g.gpd, GDim::of(0u));
    EXPECT_EQ(g.gfd, GDim::of(0u));
    EXPECT_EQ(g.pd, Dimension(0u));
    EXPECT_TRUE(g.w_member);
    if (r.is_finite()) EXPECT_EQ(g.gid, GDim::of(0u));
  }
}

TEST(Classify, IntegersMarkGidNotComputable) {
  const GorensteinReport g = classify(cyc(ZZ, 6));
  EXPECT_EQ(g.gpd, GDim::of(1u));
  EXPECT_EQ(g.gfd, GDim::of(1u));
  EXPECT_FALSE(g.gid.computable);
  EXPECT_EQ(g.gid.to_string(), "not computable over this ring");
  EXPECT_TRUE(g.w_member);
  EXPECT_THROW(gi_r_member(Subject(cyc(ZZ, 2)), 1), Refused);
}

TEST(Classify, SphereOverZ) {
  const GorensteinReport g = classify(sphere(0, cyc(ZZ, 2)));
  EXPECT_EQ(g.gpd, GDim::of(1u));
  EXPECT_EQ(g.gfd, GDim::of(1u));
  EXPECT_FALSE(g.w_member);  // not exact
}

TEST(Classify, DiskOverZ4IsGorensteinProjectiveWithInfinitePd) {
  const ChainComplex d = disk(1, cyc(Z4, 2));
  const GorensteinReport g = classify(d);
  EXPECT_EQ(g.gpd, GDim::of(0u));
  EXPECT_FALSE(g.pd.has_value());
  EXPECT_FALSE(g.w_member);
  EXPECT_TRUE(gp_r_member(Subject(d), 0));
}

TEST(Membership, Examples) {
  for (const FPModule& m : z4_modules(16)) EXPECT_TRUE(gp_r_member(Subject(m), 0)) << cf(m);
  EXPECT_FALSE(gp_r_member(Subject(cyc(ZZ, 2)), 0));
  EXPECT_TRUE(gp_r_member(Subject(cyc(ZZ, 2)), 1));
  EXPECT_FALSE(gf_r_member(Subject(cyc(ZZ, 2)), 0));
}

// GP_1 ∩ W = P_1 over ℤ; pd is read off Ext¹(M, ℤ) independently
TEST(Membership, GPIntersectWIsPExhaustiveOverZ) {
  int count = 0;
  for (const FPModule& t : all_modules(ZZ, {2, 3, 4}, 3))
    for (std::size_t f = 0; f <= 2; ++f) {
      const FPModule m = FPModule::direct_sum(t, FPModule::free(ZZ, f));
      const bool gp_w = gp_r_member(Subject(m), 1) && w_member(Subject(m));
      EXPECT_EQ(gp_w, p_r_member(m, 1)) << cf(m);
      EXPECT_EQ(gp_r_member(Subject(m), 1), gp_r_member_by_syzygy(m, 1)) << cf(m);
      EXPECT_EQ(gp_r_member(Subject(m), 0), gp_r_member_by_syzygy(m, 0)) << cf(m);
      const bool torsion_free = ext(1, m, FPModule::free(ZZ, 1)).value.is_zero();
      EXPECT_EQ(gp_r_member(Subject(m), 0), torsion_free) << cf(m);
      ++count;
    }
  EXPECT_EQ(count, 60);
}

TEST(Membership, WIffFinitePdIffFiniteId) {
  for (const Ring& r : {Z4, Z6}) {
    std::vector<Int> ds = divisors(r.modulus());
    ds.erase(ds.begin());  // drop 1
    for (const FPModule& m : all_modules(r, ds, 2)) {
      const GorensteinReport g = classify(m);
      EXPECT_EQ(g.w_member, g.pd.has_value()) << cf(m);
      EXPECT_EQ(g.w_member, id(m).has_value()) << cf(m);
    }
  }
}

TEST(Properties, GpdBoundedByFdi) {
  gen::Engine rng(61);
  for (const Ring& r : {ZZ, Z4, Z6}) {
    for (int t = 0; t < 20; ++t) {
      const GorensteinReport g = classify(gen::module(rng, r, 3));
      ASSERT_TRUE(g.gpd.computable && g.gpd.value);
      EXPECT_LE(*g.gpd.value, fdi(r));
    }
    for (int t = 0; t < 8; ++t) {
      const GorensteinReport g = classify(gen::complex(rng, r, -1, 3));
      EXPECT_LE(*g.gpd.value, fdi(r));
    }
  }
}

TEST(Properties, GpdOfComplexIsDegreewiseMax) {
  gen::Engine rng(62);
  for (const Ring& r : {ZZ, Z4}) {
    for (int t = 0; t < 15; ++t) {
      const ChainComplex x = gen::complex(rng, r, -2, 4);
      unsigned best = 0;
      for (int n = x.lo(); n <= x.hi(); ++n) best = std::max(best, *classify(x.term(n)).gpd.value);
      EXPECT_EQ(classify(x).gpd, GDim::of(best));
      EXPECT_EQ(classify(x).gfd, GDim::of(best));
    }
  }
}

TEST(Properties, WOfComplexesMatchesExactCycles) {
  // disks on anything are exact; a disk has finite pd_complex iff its module does
  EXPECT_TRUE(classify(disk(0, FPModule::free(Z4, 1))).w_member);
  EXPECT_TRUE(classify(disk(2, cyc(ZZ, 3))).w_member);
  EXPECT_FALSE(classify(disk(0, cyc(Z4, 2))).w_member);
}

// ---------------------------------------------------------------- cogeneration

TEST(Cogeneration, TOverZ4) {
  const auto t = cogenerating_modules(CogenKind::T_syzygy, Z4);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(cf(t[0]), "Z/4");
  EXPECT_EQ(cf(t[1]), "Z/2");
  EXPECT_EQ(cf(t[2]), "0");
}

TEST(Cogeneration, SrDegenerates) {
  for (unsigned r = 1; r <= 3; ++r) {
    const auto s = cogenerating_modules(CogenKind::S_r_injective, Z4, r);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_TRUE(s[0].is_zero());
  }
  const auto s0 = cogenerating_modules(CogenKind::S_r_injective, Z6, 0);
  ASSERT_EQ(s0.size(), 3u);  // Z/2, Z/3, 0
  EXPECT_THROW(cogenerating_modules(CogenKind::T_syzygy, ZZ), Refused);
  EXPECT_THROW(cogenerating_complexes(ZZ, 1), Refused);
}

TEST(Cogeneration, XOverZ4) {
  const auto x = cogenerating_complexes(Z4, 1);
  ASSERT_EQ(x.size(), 6u);
  for (const auto& c : x) {
    EXPECT_EQ(c.lo(), c.hi());
    EXPECT_LE(std::abs(c.lo()), 1);
  }
}

TEST(Cogeneration, TAgainstSamples) {
  const auto t = cogenerating_modules(CogenKind::T_syzygy, Z4);
  const std::vector<FPModule> w = {FPModule::zero(Z4), FPModule::free(Z4, 1), FPModule::free(Z4, 2)};
  const CogenerationReport rep = verify_cogeneration(t, w, {cyc(Z4, 2)});
  EXPECT_TRUE(rep.members_orthogonal);
  EXPECT_TRUE(rep.nonmembers_detected);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.member_ext.size(), 3u);

  const CogenerationReport empty = verify_cogeneration(std::vector<FPModule>{}, w, {});
  EXPECT_TRUE(empty.passed());
  const CogenerationReport missed = verify_cogeneration(std::vector<FPModule>{}, w, {cyc(Z4, 2)});
  EXPECT_TRUE(missed.members_orthogonal);
  EXPECT_FALSE(missed.nonmembers_detected);
}

TEST(Cogeneration, XAgainstComplexSamples) {
  const auto x = cogenerating_complexes(Z4, 1);
  // W-members: exact complexes with projective cycles; non-member: a sphere on Z/2
  const std::vector<ChainComplex> members = {disk(0, FPModule::free(Z4, 1)), disk(1, FPModule::free(Z4, 1))};
  const CogenerationReport rep = verify_cogeneration(x, members, {sphere(0, cyc(Z4, 2))});
  EXPECT_TRUE(rep.passed());
}

// ---------------------------------------------------------------- approximations

TEST(Approximation, Examples) {
  const auto a = approximation_witness(CotorsionPair::GP_W, cyc(Z4, 2), Side::Cover);
  EXPECT_EQ(ses_string(a.sequence), "0 -> 0 -> Z/2 -> Z/2 -> 0");
  const auto b = approximation_witness(CotorsionPair::W_GI, cyc(Z4, 2), Side::Envelope);
  EXPECT_EQ(ses_string(b.sequence), "0 -> Z/2 -> Z/2 ⊕ Z/4 -> Z/4 -> 0");
  const auto c = approximation_witness(CotorsionPair::Pr_perp, cyc(ZZ, 2), Side::Cover);
  EXPECT_EQ(ses_string(c.sequence), "0 -> Z -> Z -> Z/2 -> 0");
  for (const auto* w : {&a, &b, &c}) {
    EXPECT_TRUE(verify_witness(*w));
    EXPECT_EQ(w->certificates.size(), 2u);
  }
}

TEST(Approximation, UnsupportedCombinationsRefuse) {
  EXPECT_THROW(approximation_witness(CotorsionPair::W_GI, cyc(ZZ, 2), Side::Cover), Refused);
  EXPECT_THROW(approximation_witness(CotorsionPair::W_GI, cyc(ZZ, 2), Side::Envelope), Refused);
  EXPECT_THROW(approximation_witness(CotorsionPair::Pr_perp, cyc(ZZ, 2), Side::Envelope, 1), Refused);
}

TEST(Approximation, AllSmallZ4Modules) {
  // exactness also checked by counting: |B| = |A| |C|
  int n = 0;
  for (const FPModule& x : z4_modules(16))
    for (auto pair : {CotorsionPair::GP_W, CotorsionPair::W_GI, CotorsionPair::Pr_perp, CotorsionPair::GFr_perp})
      for (auto side : {Side::Cover, Side::Envelope})
        for (unsigned r : {0u, 1u}) {
          const auto w = approximation_witness(pair, x, side, r);
          EXPECT_TRUE(verify_witness(w));
          const ShortExact& s = w.sequence;
          EXPECT_EQ(s.alpha.dst().cardinality(), s.alpha.src().cardinality() * s.beta.dst().cardinality());
          ++n;
        }
  EXPECT_GT(n, 100);
}

TEST(Approximation, IntegerModules) {
  for (const FPModule& x : all_modules(ZZ, {0, 2, 3}, 2)) {
    for (auto side : {Side::Cover, Side::Envelope})
      EXPECT_TRUE(verify_witness(approximation_witness(CotorsionPair::GP_W, x, side))) << cf(x);
    EXPECT_TRUE(verify_witness(approximation_witness(CotorsionPair::Pr_perp, x, Side::Cover, 0)));
    EXPECT_TRUE(verify_witness(approximation_witness(CotorsionPair::Pr_perp, x, Side::Cover, 1)));
    EXPECT_TRUE(verify_witness(approximation_witness(CotorsionPair::GFr_perp, x, Side::Cover, 1)));
  }
}

TEST(Approximation, TamperedWitnessFails) {
  auto w = approximation_witness(CotorsionPair::GP_W, cyc(Z4, 2), Side::Envelope);
  EXPECT_TRUE(verify_witness(w));
  w.sequence.alpha = ModuleHom::zero(w.sequence.alpha.src(), w.sequence.alpha.dst());
  EXPECT_FALSE(verify_witness(w));
  auto v = approximation_witness(CotorsionPair::GP_W, cyc(Z4, 2), Side::Cover);
  v.pair = CotorsionPair::GFr_perp;  // Z/2 is not injective over Z/4, so the right term is wrong
  v.sequence = ShortExact{ModuleHom::identity(cyc(Z4, 2)), ModuleHom::zero(cyc(Z4, 2), cyc(Z4, 2))};
  EXPECT_FALSE(verify_witness(v));
}

// ---------------------------------------------------------------- filtrations

TEST(Filtration, Examples) {
  const FiltrationChain c = build_filtration(mod(Z4, {2, 4}), FiltrationSet::all_cyclics());
  ASSERT_EQ(c.length(), 2u);
  EXPECT_EQ(cf(c.quotients[0]), "Z/4");
  EXPECT_EQ(cf(c.quotients[1]), "Z/2");
  EXPECT_TRUE(verify_filtration(c, FiltrationSet::all_cyclics()));

  const FiltrationChain z = build_filtration(FPModule::zero(Z4), FiltrationSet::all_cyclics());
  EXPECT_EQ(z.length(), 0u);
  EXPECT_TRUE(verify_filtration(z, FiltrationSet::all_cyclics()));

  EXPECT_THROW(build_filtration(cyc(Z4, 2), FiltrationSet::of({cyc(Z4, 4)})), CheckFailed);
}

TEST(Filtration, ExplicitSet) {
  const FiltrationSet s = FiltrationSet::of({cyc(Z4, 2)});
  const FiltrationChain c = build_filtration(mod(Z4, {4, 4}), s);
  EXPECT_EQ(c.length(), 4u);
  EXPECT_TRUE(verify_filtration(c, s));
  EXPECT_FALSE(verify_filtration(c, FiltrationSet::of({cyc(Z4, 4)})));
}

TEST(Filtration, AllZ4ModulesUpTo64) {
  for (const FPModule& m : z4_modules(64)) {
    const FiltrationChain c = build_filtration(m, FiltrationSet::all_cyclics());
    EXPECT_TRUE(verify_filtration(c, FiltrationSet::all_cyclics())) << cf(m);
    EXPECT_EQ(c.length(), m.gens()) << cf(m);
    Int size = 1;
    for (const auto& q : c.quotients) size *= q.cardinality();
    EXPECT_EQ(size, m.cardinality());
  }
}

TEST(Filtration, MixedModulusAndTampering) {
  const FPModule m = mod(Z6, {2, 6, 3});
  FiltrationChain c = build_filtration(m, FiltrationSet::all_cyclics());
  EXPECT_TRUE(verify_filtration(c, FiltrationSet::all_cyclics()));
  c.stages.pop_back();
  c.quotients.pop_back();
  EXPECT_FALSE(verify_filtration(c, FiltrationSet::all_cyclics()));
}

// ---------------------------------------------------------------- purity

TEST(Purity, EverySubmoduleOverZ4) {
  gen::Engine rng(63);
  for (int t = 0; t < 20; ++t) {
    const FPModule e = gen::finite_module(rng, Z4, 4, 3, 64);
    const Submodule s = submodule(e, gen::elements(rng, e, 2));
    const InclusionWitness w = make_inclusion(s.inclusion);
    if (!is_w_pure(w)) continue;
    const PurityClosureReport rep = w_purity_closure_check(e, w);
    EXPECT_TRUE(rep.passed()) << cf(e);
    EXPECT_EQ(rep.sub.gfd, GDim::of(0u));
    EXPECT_EQ(rep.quotient.gfd, GDim::of(0u));
  }
}

TEST(Purity, FreeSummandOverZ) {
  const FPModule e = FPModule::free(ZZ, 2);
  const InclusionWitness w = make_inclusion(sum_injection(FPModule::free(ZZ, 1), FPModule::free(ZZ, 1), 0));
  const PurityClosureReport rep = w_purity_closure_check(e, w);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(cf(w.incl.src()), "Z");
  EXPECT_EQ(cf(w.quotient), "Z");
  EXPECT_GE(rep.test_modules.size(), 3u);
}

TEST(Purity, NonPureRefuses) {
  const FPModule z = FPModule::free(ZZ, 1);
  const InclusionWitness w = make_inclusion(ModuleHom(z, z, Matrix::column_vector(ZZ, {2})));
  EXPECT_THROW(w_purity_closure_check(z, w), Refused);
  // target not Gorenstein flat
  const FPModule t = cyc(ZZ, 2);
  EXPECT_THROW(w_purity_closure_check(t, make_inclusion(ModuleHom::identity(t))), Refused);
}
