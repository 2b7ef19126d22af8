#include <gtest/gtest.h>

#include "gorhom/derived.hpp"
#include "gorhom/oracle.hpp"
#include "gorhom/random.hpp"

using namespace gorhom;

namespace {

const Ring ZZ = Ring::integers();
const Ring Z4 = Ring::integers_mod(4);

std::string cf(const FPModule& m) { return canonical_form(m).to_string(); }
FPModule cyc(const Ring& r, long o) { return FPModule::cyclic(r, o); }

// Ring size for the oracle: ℤ/m itself, or a multiple of both exponents over ℤ.
unsigned oracle_ring(const FPModule& m, const FPModule& n) {
  if (m.ring().is_finite()) return static_cast<unsigned>(m.ring().modulus().get_ui());
  Int e = 1;
  if (!m.is_zero()) e *= m.exponent();
  if (!n.is_zero()) e *= n.exponent();
  return static_cast<unsigned>(e.get_ui());
}

}  // namespace

TEST(Ext, TwoIntoZ) { EXPECT_EQ(cf(ext(1, cyc(ZZ, 2), FPModule::free(ZZ, 1)).value), "Z/2"); }

TEST(Ext, FreeSourceVanishes) {
  for (const Ring& r : {ZZ, Z4})
    for (unsigned i = 1; i <= 3; ++i)
      EXPECT_TRUE(ext(i, FPModule::free(r, 2), FPModule(r, {2, r.free_order()})).value.is_zero());
}

TEST(Ext, TwoTwoOverZ4) {
  const DerivedModule d = ext(1, cyc(Z4, 2), cyc(Z4, 2));
  EXPECT_EQ(cf(d.value), "Z/2");
  EXPECT_EQ(d.degree, 1u);
  EXPECT_EQ(d.variance, Variance::Ext);
  EXPECT_EQ(d.resolution_length, 2u);
  EXPECT_EQ(oracle::brute_ext1(oracle::translate(cyc(Z4, 2), 4), oracle::translate(cyc(Z4, 2), 4)).order, 2);
}

TEST(Tor, TwoTwoOverZ) {
  EXPECT_EQ(cf(tor(1, cyc(ZZ, 2), cyc(ZZ, 2)).value), "Z/2");
  const auto t = oracle::translate(cyc(ZZ, 2), 4);
  EXPECT_EQ(oracle::brute_tor1(t, t).order, 2);
}

TEST(Tor, FreeSourceVanishes) {
  for (const Ring& r : {ZZ, Z4})
    for (unsigned i = 1; i <= 3; ++i)
      EXPECT_TRUE(tor(i, FPModule::free(r, 1), FPModule(r, {2, r.free_order()})).value.is_zero());
}

TEST(Tor, TwoTwoOverZ4) {
  EXPECT_EQ(cf(tor(1, cyc(Z4, 2), cyc(Z4, 2)).value), "Z/2");
  const auto t = oracle::translate(cyc(Z4, 2), 4);
  EXPECT_EQ(oracle::brute_tor1(t, t).order, 2);
}

TEST(Ext, DegreeZeroIsHom) {
  gen::Engine rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Ring ring = trial % 2 ? ZZ : Ring::integers_mod(12);
    const FPModule m = gen::module(rng, ring, 3), n = gen::module(rng, ring, 3);
    ASSERT_EQ(canonical_form(ext(0, m, n).value), canonical_form(hom_module(m, n)));
    ASSERT_EQ(canonical_form(tor(0, m, n).value), canonical_form(tensor_module(m, n)));
  }
}

TEST(Ext, StableUnderLongerResolutions) {
  gen::Engine rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const Ring ring = trial % 2 ? ZZ : Ring::integers_mod(8);
    const FPModule m = gen::module(rng, ring, 3), n = gen::module(rng, ring, 3);
    for (unsigned i = 0; i <= 2; ++i) {
      ASSERT_EQ(canonical_form(ext(i, m, n).value), canonical_form(ext(i, m, n, i + 4).value));
      ASSERT_EQ(canonical_form(tor(i, m, n).value), canonical_form(tor(i, m, n, i + 4).value));
    }
  }
}

TEST(Ext, VanishAboveTwoOverZ) {
  gen::Engine rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const FPModule m = gen::module(rng, ZZ, 3), n = gen::module(rng, ZZ, 3);
    for (unsigned i = 2; i <= 3; ++i) {
      ASSERT_TRUE(ext(i, m, n).value.is_zero());
      ASSERT_TRUE(tor(i, m, n).value.is_zero());
    }
  }
}

TEST(Ext, DimensionShifting) {
  gen::Engine rng(24);
  for (int trial = 0; trial < 60; ++trial) {
    const Ring ring = trial % 3 == 0 ? ZZ : Ring::integers_mod(trial % 3 == 1 ? 8 : 12);
    const FPModule m = gen::module(rng, ring, 2), n = gen::module(rng, ring, 2);
    for (unsigned r = 1; r <= 3; ++r)
      ASSERT_EQ(canonical_form(ext(1, syzygy(m, r), n).value), canonical_form(ext(r + 1, m, n).value))
          << cf(m) << " " << cf(n) << " r=" << r;
  }
}

TEST(Tor, Symmetric) {
  gen::Engine rng(25);
  for (int trial = 0; trial < 60; ++trial) {
    const Ring ring = trial % 2 ? ZZ : Ring::integers_mod(12);
    const FPModule m = gen::module(rng, ring, 3), n = gen::module(rng, ring, 3);
    for (unsigned i = 0; i <= 2; ++i)
      ASSERT_EQ(canonical_form(tor(i, m, n).value), canonical_form(tor(i, n, m).value));
  }
}

TEST(Ext, DualityWithTor) {
  gen::Engine rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    const Ring ring = trial % 3 == 0 ? ZZ : Ring::integers_mod(trial % 3 == 1 ? 4 : 6);
    const FPModule m = gen::finite_module(rng, ring, 12, 3, 64), n = gen::finite_module(rng, ring, 12, 3, 64);
    const FPModule lhs = ext(1, m, character_dual(n)).value;
    const FPModule t = tor(1, n, m).value;
    ASSERT_EQ(canonical_form(lhs), canonical_form(character_dual(t)));
  }
}

TEST(Ext, MatchesOracle) {
  gen::Engine rng(27);
  int nonzero = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Ring ring = trial % 3 == 0 ? ZZ : Ring::integers_mod(trial % 3 == 1 ? 8 : 12);
    const Int bound = ring.is_finite() ? ring.modulus() : Int(4);
    const FPModule m = gen::finite_module(rng, ring, bound, 2, 16), n = gen::finite_module(rng, ring, bound, 2, 16);
    const unsigned k = oracle_ring(m, n);
    if (k > oracle::kMaxRing) continue;
    const auto tm = oracle::translate(m, k), tn = oracle::translate(n, k);
    const auto e = oracle::brute_ext1(tm, tn);
    const CanonicalForm ours = canonical_form(ext(1, m, n).value);
    ASSERT_EQ(ours.factors, e.factors) << cf(m) << " " << cf(n) << " over " << ring.name();
    const auto t = oracle::brute_tor1(tm, tn);
    ASSERT_EQ(canonical_form(tor(1, m, n).value).factors, t.factors) << cf(m) << " " << cf(n);
    nonzero += !ours.is_zero();
  }
  EXPECT_GT(nonzero, 30);
}

TEST(Ext, OracleOnZ2IsTrivial) {
  const Ring z2 = Ring::integers_mod(2);
  const auto t = oracle::translate(FPModule::free(z2, 1), 2);
  EXPECT_EQ(oracle::brute_ext1(t, t).order, 1);
  EXPECT_TRUE(ext(1, FPModule::free(z2, 1), FPModule::free(z2, 1)).value.is_zero());
}

TEST(ShortExact, RejectsNonExact) {
  const FPModule z = FPModule::free(ZZ, 1);
  const ModuleHom two(z, z, Matrix::parse(ZZ, "[[2]]"));
  const ModuleHom three(z, cyc(ZZ, 3), Matrix::parse(ZZ, "[[1]]"));
  EXPECT_THROW(verify_short_exact({two, three}), CheckFailed);
  EXPECT_THROW(tor_les(cyc(ZZ, 2), {two, three}), CheckFailed);
}

TEST(TorLes, SplitSequenceHasZeroConnectingMap) {
  const FPModule a = cyc(ZZ, 2), c = cyc(ZZ, 4);
  const ShortExact s{sum_injection(a, c, 0), sum_projection(a, c, 1)};
  for (const FPModule& w : {cyc(ZZ, 2), cyc(ZZ, 4), FPModule::free(ZZ, 1)}) {
    const TorLesReport r = tor_les(w, s);
    EXPECT_TRUE(r.exact());
    EXPECT_TRUE(r.delta.is_zero());
  }
}

TEST(TorLes, FreeCoefficientsGiveShortExact) {
  const FPModule z = FPModule::free(ZZ, 1);
  const ShortExact s{ModuleHom(z, z, Matrix::parse(ZZ, "[[2]]")), ModuleHom(z, cyc(ZZ, 2), Matrix::parse(ZZ, "[[1]]"))};
  const TorLesReport r = tor_les(FPModule::free(ZZ, 2), s);
  EXPECT_TRUE(r.tor1.is_zero());
  EXPECT_TRUE(r.exact());
  EXPECT_TRUE(is_injective(r.w_alpha));
}

TEST(TorLes, ConnectingMapIsIsoForTwo) {
  const FPModule z = FPModule::free(ZZ, 1);
  const ShortExact s{ModuleHom(z, z, Matrix::parse(ZZ, "[[2]]")), ModuleHom(z, cyc(ZZ, 2), Matrix::parse(ZZ, "[[1]]"))};
  const TorLesReport r = tor_les(cyc(ZZ, 2), s);
  EXPECT_EQ(cf(r.tor1), "Z/2");
  EXPECT_EQ(cf(r.wa), "Z/2");
  EXPECT_TRUE(is_isomorphism(r.delta));
  EXPECT_TRUE(r.exact());
}

TEST(TorLes, RandomSequencesAreExact) {
  gen::Engine rng(28);
  for (int trial = 0; trial < 80; ++trial) {
    const Ring ring = trial % 2 ? ZZ : Ring::integers_mod(12);
    const FPModule m = gen::module(rng, ring, 3), n = gen::module(rng, ring, 3);
    const ModuleHom f = gen::hom(rng, m, n);
    const Kernel k = kernel(f);
    const Image im = image(f);
    const ShortExact s{k.inclusion, im.corestriction};
    const FPModule w = gen::module(rng, ring, 2);
    const TorLesReport r = tor_les(w, s);
    ASSERT_TRUE(r.exact()) << cf(m) << " -> " << cf(n) << " W=" << cf(w);
    ASSERT_EQ(canonical_form(r.tor1), canonical_form(tor(1, w, im.module).value));
  }
}
