#include <gtest/gtest.h>

#include "gorhom/graded_bridge.hpp"
#include "gorhom/oracle.hpp"
#include "gorhom/random.hpp"

using namespace gorhom;

namespace {

const Ring ZZ = Ring::integers();
const Ring Z2 = Ring::integers_mod(2);
const Ring Z4 = Ring::integers_mod(4);

std::string cf(const FPModule& m) { return canonical_form(m).to_string(); }

bool termwise_iso(const ChainComplex& a, const ChainComplex& b, int shift = 0) {
  const int lo = std::min(a.lo(), b.lo() + shift), hi = std::max(a.hi(), b.hi() + shift);
  for (int n = lo; n <= hi; ++n)
    if (!isomorphic(a.term(n), b.term(n - shift))) return false;
  return true;
}

unsigned f2_dim(const FPModule& m) {
  unsigned d = 0;
  for (Int c = m.cardinality(); c > 1; c /= 2) ++d;
  return d;
}

}  // namespace

TEST(GradedBridge, PsiExamples) {
  const GradedAModule t = psi(sphere(0, FPModule::free(ZZ, 1)));
  EXPECT_EQ(t.carrier.lo(), 0);
  EXPECT_EQ(t.carrier.hi(), 0);
  EXPECT_TRUE(t.carrier.d(0).is_zero());

  // A over Z/2 as a table: basis 1, x; x·1 = x, x·x = 0; D¹ carries the same data
  const GradedAModule a = psi(disk(1, FPModule::free(Z2, 1)));
  const oracle::F2GradedModule o = oracle::f2_graded(phi(a));
  ASSERT_EQ(o.dim(), 2u);
  EXPECT_EQ(o.degree, (std::vector<int>{0, 1}));
  EXPECT_EQ(o.x, (std::vector<std::vector<int>>{{0, 1}, {0, 0}}));
  EXPECT_EQ(phi(GradedAModule::free(Z2, 1)).term(1), a.carrier.term(1));
}

TEST(GradedBridge, RoundTrips) {
  gen::Engine rng(71);
  for (const Ring& r : {ZZ, Z4}) {
    for (int t = 0; t < 10; ++t) {
      const ChainComplex x = gen::complex(rng, r, -1, 3);
      const ChainComplex y = gen::complex(rng, r, -1, 3);
      EXPECT_TRUE(phi(psi(x)) == x);
      const ChainMap f = gen::chain_map(rng, x, y);
      const GradedAHom g = psi(f);
      EXPECT_TRUE(is_a_linear(g));
      EXPECT_TRUE(phi(g) == f);
    }
  }
}

TEST(GradedBridge, NonLinearPiecesRejected) {
  const GradedAModule a = GradedAModule::free(Z4, 0);
  // identity on degree 0 only does not commute with x
  GradedAHom g{a, a, {{0, ModuleHom::identity(a.carrier.term(0))}}};
  EXPECT_FALSE(is_a_linear(g));
  EXPECT_THROW(phi(g), CheckFailed);
}

TEST(GradedBridge, TensorExamples) {
  for (const Ring& r : {Z2, Z4, ZZ}) {
    const GradedAModule a = GradedAModule::free(r, 0);
    EXPECT_TRUE(termwise_iso(phi(a_tensor(a, a)), phi(a)));
    const GradedAModule z = psi(ChainComplex::zero(r));
    EXPECT_TRUE(phi(a_tensor(z, a)).is_zero());
  }
  // against trivial modules: degreewise R-tensor of M / xM
  const FPModule k = FPModule::cyclic(Z4, 2);
  const GradedAModule m = psi(disk(1, FPModule::free(Z4, 1)));
  const ChainComplex t = phi(a_tensor(m, GradedAModule::trivial(k, 0)));
  EXPECT_EQ(cf(t.term(1)), "Z/2");
  EXPECT_TRUE(t.term(0).is_zero());
}

TEST(GradedBridge, TensorUnitAndAssociativity) {
  gen::Engine rng(72);
  for (int t = 0; t < 8; ++t) {
    const GradedAModule a = GradedAModule::free(Z4, 0);
    const GradedAModule m = psi(gen::complex(rng, Z4, -1, 3));
    const GradedAModule n = psi(gen::complex(rng, Z4, 0, 2));
    const GradedAModule p = psi(gen::complex(rng, Z4, 0, 2));
    EXPECT_TRUE(termwise_iso(phi(a_tensor(a, m)), phi(m)));
    EXPECT_TRUE(termwise_iso(phi(a_tensor(a_tensor(m, n), p)), phi(a_tensor(m, a_tensor(n, p)))));
  }
}

TEST(GradedBridge, ExtOfTrivialModule) {
  const GradedAModule k = GradedAModule::trivial(FPModule::cyclic(Z2, 2));
  EXPECT_TRUE(ext_a(1, k, k).is_zero());  // degree-preserving
  const auto shifts = ext_a_shifts(1, k, k);
  ASSERT_EQ(shifts.size(), 1u);
  EXPECT_EQ(shifts.begin()->first, 1);
  EXPECT_EQ(cf(ext_a_total(1, k, k)), "Z/2");
  EXPECT_EQ(oracle::a_ext1_dim_ungraded(oracle::f2_graded(phi(k)), oracle::f2_graded(phi(k))), 1u);
  EXPECT_EQ(cf(ext_a(1, k, shift(k, 1))), "Z/2");
}

TEST(GradedBridge, FreeSourceHasNoExt) {
  gen::Engine rng(73);
  for (const Ring& r : {Z2, Z4, ZZ}) {
    const GradedAModule a = GradedAModule::free(r, 1);
    for (int t = 0; t < 4; ++t) {
      const GradedAModule n = psi(gen::complex(rng, r, -1, 3));
      for (unsigned i = 1; i <= 2; ++i) EXPECT_TRUE(ext_a_total(i, a, n).is_zero());
    }
  }
}

TEST(GradedBridge, TorOfTrivialModule) {
  const GradedAModule k = GradedAModule::trivial(FPModule::cyclic(Z2, 2));
  const ChainComplex t = tor_a(1, k, k);
  const auto o = oracle::a_tor_dims(1, oracle::f2_graded(phi(k)), oracle::f2_graded(phi(k)));
  ASSERT_EQ(o.size(), 1u);
  EXPECT_EQ(o.begin()->first, -1);
  EXPECT_EQ(cf(t.term(-1)), "Z/2");
  EXPECT_TRUE(t.trimmed().lo() == -1 && t.trimmed().hi() == -1);
}

TEST(GradedBridge, ModuleEnumeration) {
  EXPECT_EQ(oracle::f2_graded_modules(0, 0, 2).size(), 3u);
  EXPECT_EQ(oracle::f2_graded_modules(0, 1, 1).size(), 5u);  // 0, S0, S1, S0+S1, D1
  const auto mods = oracle::f2_graded_modules(0, 2, 2);
  EXPECT_EQ(mods.size(), 61u);
  for (std::size_t i = 0; i < mods.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      bool same = true;
      for (int n = 0; n <= 2 && same; ++n) same = isomorphic(mods[i].term(n), mods[j].term(n)) && isomorphic(homology(mods[i], n), homology(mods[j], n));
      EXPECT_FALSE(same) << i << " " << j;
    }
}

// Graded A-modules with pieces of size ≤ 4 in degrees 0..2, on a deterministic subset of
// pairs; the acceptance suite runs every pair.
TEST(GradedBridge, OracleAgreementSampled) {
  const auto mods = oracle::f2_graded_modules(0, 2, 2);
  std::vector<oracle::F2GradedModule> tables;
  for (const auto& m : mods) tables.push_back(oracle::f2_graded(m));
  for (std::size_t i = 0; i < mods.size(); ++i)
    for (std::size_t j = 0; j < mods.size(); ++j) {
      if ((i + 2 * j) % 4 != 0) continue;
      const GradedAModule m = psi(mods[i]), n = psi(mods[j]);
      const auto& om = tables[i];
      const auto& on = tables[j];
      // Tor_0 and Tor_1 by degree
      const ChainComplex t0 = phi(a_tensor(m, n)), t1 = tor_a(1, m, n);
      const auto o0 = oracle::a_tor_dims(0, om, on), o1 = oracle::a_tor_dims(1, om, on);
      for (int d = -2; d <= 4; ++d) {
        ASSERT_EQ(f2_dim(t0.term(d)), o0.count(d) ? o0.at(d) : 0u) << i << "," << j << " deg " << d;
        ASSERT_EQ(f2_dim(t1.term(d)), o1.count(d) ? o1.at(d) : 0u) << i << "," << j << " deg " << d;
      }
      if ((i + j) % 3 != 0) continue;
      const auto shifts = ext_a_shifts(1, m, n);
      unsigned total = 0;
      for (int s = -4; s <= 4; ++s) {
        const unsigned e = shifts.count(s) ? f2_dim(shifts.at(s)) : 0u;
        ASSERT_EQ(e, oracle::a_ext1_dim(om, on, s)) << i << "," << j << " shift " << s;
        total += e;
      }
      ASSERT_EQ(total, oracle::a_ext1_dim_ungraded(om, on)) << i << "," << j;
    }
}

// ---------------------------------------------------------------- dg classes

TEST(DgClass, Examples) {
  gen::Engine rng(74);
  const ChainComplex frees = gen::complex(rng, ZZ, 0, 3);
  ChainComplex free_x = ChainComplex::zero(ZZ);
  // bounded complex of frees over Z: a sum of disks and spheres on Z
  free_x = direct_sum(disk(1, FPModule::free(ZZ, 1)), sphere(0, FPModule::free(ZZ, 2)));
  const DgResult a = dg_class_test(free_x, DgKind::Projective, 0);
  EXPECT_TRUE(a.accepted);
  EXPECT_GT(a.certificate.samples, 0u);
  EXPECT_TRUE(a.certificate.sufficient_only);

  const DgResult b = dg_class_test(sphere(0, FPModule::cyclic(ZZ, 2)), DgKind::Projective, 1);
  EXPECT_TRUE(b.accepted);
  const DgResult c = dg_class_test(sphere(0, FPModule::cyclic(ZZ, 2)), DgKind::Projective, 0);
  EXPECT_FALSE(c.accepted);
  EXPECT_FALSE(c.certificate.degreewise);
  EXPECT_THROW(dg_class_test(free_x, DgKind::Injective, 0), Refused);
  (void)frees;
}

TEST(DgClass, FreeComplexesOverZ4AndFlatness) {
  gen::Engine rng(75);
  const FPModule f = FPModule::free(Z4, 1);
  const ChainComplex x(Z4, 0, {f, f, f}, {ModuleHom(f, f, Matrix::column_vector(Z4, {2})), ModuleHom(f, f, Matrix::column_vector(Z4, {2}))});
  for (DgKind k : {DgKind::Projective, DgKind::Injective, DgKind::Flat}) {
    const DgResult r = dg_class_test(x, k, 0);
    EXPECT_TRUE(r.accepted) << dg_kind_name(k);
    EXPECT_EQ(r.certificate.samples, r.certificate.samples_passed);
  }
  EXPECT_FALSE(dg_class_test(sphere(0, FPModule::cyclic(Z4, 2)), DgKind::Flat, 3).accepted);
  EXPECT_TRUE(dg_class_test(sphere(0, FPModule::free(ZZ, 1)), DgKind::Flat, 0).accepted);
}

TEST(Correspondence, Examples) {
  const ChainComplex frees = direct_sum(disk(2, FPModule::free(ZZ, 1)), sphere(1, FPModule::free(ZZ, 1)));
  const CorrespondenceReport a = correspondence_harness(frees, 0);
  EXPECT_TRUE(a.dg.accepted);
  EXPECT_TRUE(a.gp_r);
  EXPECT_TRUE(a.consistent);

  const CorrespondenceReport b = correspondence_harness(disk(1, FPModule::free(ZZ, 1)), 0);
  EXPECT_TRUE(b.exact);
  EXPECT_TRUE(b.in_w);
  EXPECT_TRUE(b.consistent);

  const CorrespondenceReport c = correspondence_harness(sphere(0, FPModule::free(ZZ, 1)), 0);
  EXPECT_FALSE(c.exact);
  EXPECT_FALSE(c.in_w);
  EXPECT_TRUE(c.consistent);

  EXPECT_THROW(correspondence_harness(sphere(0, FPModule::free(Z4, 1)), 0), Refused);
}

TEST(Correspondence, NoContradictionsOnRandomComplexes) {
  gen::Engine rng(76);
  for (int t = 0; t < 20; ++t) {
    const ChainComplex x = gen::complex(rng, ZZ, -1, 3);
    for (unsigned r : {0u, 1u}) EXPECT_TRUE(correspondence_harness(x, r, 100 + t).consistent);
  }
}
