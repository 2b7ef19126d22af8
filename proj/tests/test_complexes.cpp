#include <gtest/gtest.h>

#include "gorhom/complex.hpp"
#include "gorhom/oracle.hpp"
#include "gorhom/random.hpp"

using namespace gorhom;

namespace {

const Ring ZZ = Ring::integers();
const Ring Z4 = Ring::integers_mod(4);
const Ring Z6 = Ring::integers_mod(6);

FPModule cyc(const Ring& r, long o) { return FPModule::cyclic(r, o); }
std::string cf(const FPModule& m) { return canonical_form(m).to_string(); }

bool same_shape(const ChainComplex& a, const ChainComplex& b) {
  const int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  for (int n = lo; n <= hi; ++n)
    if (canonical_form(a.term(n)) != canonical_form(b.term(n)) || canonical_form(homology(a, n)) != canonical_form(homology(b, n)))
      return false;
  return true;
}

std::string debug(const ChainComplex& x) {
  std::string s = "[" + std::to_string(x.lo()) + "]";
  for (int n = x.lo(); n <= x.hi(); ++n) {
    s += " " + cf(x.term(n));
    if (n < x.hi()) s += " <-" + x.d(n + 1).matrix().to_string() + "-";
  }
  return s;
}

}  // namespace

TEST(Complexes, SpheresAndDisks) {
  const ChainComplex d = disk(1, FPModule::free(Z4, 1));
  EXPECT_EQ(d.lo(), 0);
  EXPECT_EQ(d.hi(), 1);
  EXPECT_EQ(d.d(1).matrix().to_string(), "[[1]]");
  EXPECT_TRUE(is_exact(d));
  EXPECT_TRUE(sphere(0, FPModule::zero(ZZ)).is_zero());
  const ChainComplex s = sphere(3, FPModule::free(ZZ, 1));
  EXPECT_EQ(cf(homology(s, 3)), "Z");
  for (int m = 0; m <= 5; ++m)
    if (m != 3) EXPECT_TRUE(homology(s, m).is_zero());
  EXPECT_EQ(cf(homology(sphere(-2, cyc(Z4, 2)), -2)), "Z/2");
}

TEST(Complexes, RejectsNonzeroSquare) {
  const FPModule r = FPModule::free(ZZ, 1);
  const ModuleHom id = ModuleHom::identity(r);
  EXPECT_THROW(ChainComplex(ZZ, 0, {r, r, r}, {id, id}), CheckFailed);
  try {
    ChainComplex(ZZ, 0, {r, r, r}, {id, id});
  } catch (const CheckFailed& e) {
    EXPECT_NE(std::string(e.what()).find("degree 2"), std::string::npos);
  }
}

TEST(Complexes, Suspension) {
  gen::Engine rng(31);
  const ChainComplex x = gen::complex(rng, Z4, -1, 3);
  EXPECT_EQ(suspension(0, x), x);
  EXPECT_EQ(suspension(1, sphere(0, FPModule::free(ZZ, 1))), sphere(1, FPModule::free(ZZ, 1)));
  const ChainComplex sd = suspension(1, disk(1, FPModule::free(Z4, 1)));
  EXPECT_EQ(sd.lo(), 1);
  EXPECT_EQ(sd.hi(), 2);
  EXPECT_EQ(sd.d(2).matrix().to_string(), "[[3]]");
  for (int trial = 0; trial < 30; ++trial) {
    const ChainComplex y = gen::complex(rng, trial % 2 ? ZZ : Z6, static_cast<int>(gen::uniform(rng, -2, 2)), 3);
    for (int k = -3; k <= 3; ++k) ASSERT_EQ(suspension(-k, suspension(k, y)), y);
  }
}

TEST(Tensor, DiskTimesSphere) {
  const ChainComplex t = tensor(disk(1, FPModule::free(Z4, 1)), sphere(0, cyc(Z4, 2)));
  EXPECT_EQ(t, disk(1, cyc(Z4, 2)));
  EXPECT_EQ(tensor(sphere(1, cyc(ZZ, 2)), sphere(1, cyc(ZZ, 2))), sphere(2, cyc(ZZ, 2)));
}

TEST(Tensor, UnitLaw) {
  gen::Engine rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const Ring& ring = trial % 3 == 0 ? ZZ : trial % 3 == 1 ? Z4 : Z6;
    const ChainComplex x = gen::complex(rng, ring, -1, 4);
    const ChainComplex s = sphere(0, FPModule::free(ring, 1));
    const TensorComplex t = tensor_data(x, s);
    ASSERT_TRUE(same_shape(t.complex, x));
    std::map<int, ModuleHom> c;
    for (int n = x.lo(); n <= x.hi(); ++n) c.emplace(n, ModuleHom(x.term(n), t.complex.term(n), Matrix::identity(ring, x.term(n).gens())));
    ASSERT_TRUE(is_isomorphism(ChainMap(x, t.complex, c)));
  }
}

TEST(Tensor, KoszulSignsGiveComplexes) {
  gen::Engine rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const Ring& ring = trial % 2 ? Z4 : ZZ;
    const ChainComplex x = gen::complex(rng, ring, 0, 3), y = gen::complex(rng, ring, -1, 3);
    EXPECT_NO_THROW(tensor(x, y));
    EXPECT_NO_THROW(bar_tensor(x, y));
    EXPECT_NO_THROW(hom_prime(x, y));
    EXPECT_NO_THROW(bar_hom(x, y));
  }
}

TEST(BarTensor, AgreesWithTensorWhereNoBoundaries) {
  const ChainComplex x = disk(1, FPModule::free(Z4, 1));
  for (const FPModule& n : {cyc(Z4, 2), FPModule::free(Z4, 1)}) {
    const BarTensor bt = bar_tensor_data(x, sphere(0, n));
    // B_1 = 0 so degree 1 is untouched; B_0 is everything
    EXPECT_EQ(canonical_form(bt.complex.term(1)), canonical_form(bt.tensor.complex.term(1)));
    EXPECT_TRUE(bt.complex.term(0).is_zero());
  }
  EXPECT_TRUE(bar_tensor(ChainComplex::zero(Z4), x).is_zero());
}

TEST(BarTensor, DisksMatchOracle) {
  const ChainComplex x = disk(1, FPModule::free(Z4, 1));
  const ChainComplex q = bar_tensor(x, x);
  const auto tx = oracle::translate(x, 4);
  for (int n = 0; n <= 2; ++n) EXPECT_EQ(q.term(n).cardinality(), oracle::bar_tensor_size(tx, tx, n, 4)) << n;
  EXPECT_EQ(cf(q.term(2)), "Z/4");
  EXPECT_EQ(cf(q.term(1)), "Z/4");
  EXPECT_TRUE(q.term(0).is_zero());
}

TEST(BarTensor, RandomMatchOracle) {
  gen::Engine rng(34);
  int nontrivial = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Ring& ring = trial % 2 ? Z4 : Z6;
    const unsigned r = static_cast<unsigned>(ring.modulus().get_ui());
    const ChainComplex x = gen::complex(rng, ring, 0, 3, 8), y = gen::complex(rng, ring, 0, 2, 8);
    const ChainComplex q = bar_tensor(x, y);
    const auto tx = oracle::translate(x, r), ty = oracle::translate(y, r);
    for (int n = q.lo(); n <= q.hi(); ++n) {
      ASSERT_EQ(q.term(n).cardinality(), oracle::bar_tensor_size(tx, ty, n, r))
          << "degree " << n << " x=" << debug(x) << " y=" << debug(y);
      nontrivial += !q.term(n).is_zero();
    }
  }
  EXPECT_GT(nontrivial, 10);
}

TEST(HomPrime, SingleFactor) {
  const ChainComplex h = hom_prime(sphere(0, cyc(ZZ, 2)), sphere(1, cyc(ZZ, 2)));
  EXPECT_EQ(cf(h.term(1)), "Z/2");
  EXPECT_TRUE(h.term(0).is_zero());
}

TEST(BarHom, ContainsIdentity) {
  gen::Engine rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    const ChainComplex x = gen::complex(rng, trial % 2 ? ZZ : Z4, -1, 3);
    const BarHom bh = bar_hom_data(x, x);
    const ChainMap id = ChainMap::identity(x);
    DegreeMap f{x, x, 0, {}};
    for (int n = x.lo(); n <= x.hi(); ++n) f.components.emplace(n, id.at(n));
    const auto c = bh.coordinates(f);
    ASSERT_TRUE(c.has_value());
    ASSERT_EQ(bh.chain_map(*c), id);
  }
}

TEST(BarHom, DegreeZeroCountsChainMaps) {
  gen::Engine rng(36);
  int nontrivial = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const ChainComplex x = gen::complex(rng, Z4, 0, 3, 8), y = gen::complex(rng, Z4, 0, 3, 8);
    const FPModule z0 = bar_hom(x, y).term(0);
    const Int n = oracle::count_chain_maps(oracle::translate(x, 4), oracle::translate(y, 4));
    ASSERT_EQ(z0.cardinality(), n);
    nontrivial += n > 1;
  }
  EXPECT_GT(nontrivial, 10);
}

TEST(BarHom, RandomChainMapsHaveCoordinates) {
  gen::Engine rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const Ring& ring = trial % 2 ? ZZ : Z6;
    const ChainComplex x = gen::complex(rng, ring, 0, 3), y = gen::complex(rng, ring, 0, 3);
    const ChainMap f = gen::chain_map(rng, x, y);
    const BarHom bh = bar_hom_data(x, y);
    DegreeMap d{x, y, 0, {}};
    for (int n = x.lo(); n <= x.hi(); ++n) d.components.emplace(n, f.at(n));
    const auto c = bh.coordinates(d);
    ASSERT_TRUE(c.has_value());
    ASSERT_EQ(bh.chain_map(*c), f);
  }
}

TEST(Pontryagin, Examples) {
  EXPECT_EQ(pontryagin(sphere(0, cyc(Z4, 2))), sphere(-1, cyc(Z4, 2)));
  EXPECT_TRUE(pontryagin(ChainComplex::zero(Z4)).is_zero());
  const ChainComplex d = pontryagin(disk(1, FPModule::free(Z4, 1)));
  EXPECT_EQ(d, disk(-1, FPModule::free(Z4, 1)));
  EXPECT_THROW(pontryagin(sphere(0, FPModule::free(ZZ, 1))), Refused);
}

TEST(Pontryagin, SignOnBoundary) {
  // ∂ on X⁺ at degree m carries (-1)^{m-1}
  const FPModule z = FPModule::free(Z4, 1);
  const ChainComplex x(Z4, 1, {z, z}, {ModuleHom(z, z, Matrix::parse(Z4, "[[2]]"))});
  const ChainComplex p = pontryagin(x);
  EXPECT_EQ(p.lo(), -3);
  EXPECT_EQ(p.d(-2).matrix().to_string(), "[[2]]");
  const ChainComplex y(Z4, 0, {z, z}, {ModuleHom(z, z, Matrix::parse(Z4, "[[1]]"))});
  EXPECT_EQ(pontryagin(y).d(-1).matrix().to_string(), "[[1]]");
  const ChainComplex w(Z4, 1, {z, z}, {ModuleHom(z, z, Matrix::parse(Z4, "[[1]]"))});
  EXPECT_EQ(pontryagin(w).d(-2).matrix().to_string(), "[[3]]");
}

TEST(Pontryagin, DoubleDualAndFunctoriality) {
  gen::Engine rng(38);
  for (int trial = 0; trial < 30; ++trial) {
    const Ring& ring = trial % 3 == 0 ? ZZ : trial % 3 == 1 ? Z4 : Z6;
    const ChainComplex x = gen::complex(rng, ring, -1, 3);
    if (!x.is_finite()) continue;
    const Int n = ring.is_finite() ? ring.modulus() : Int(12);
    if (!x.is_zero() && !mpz_divisible_p(n.get_mpz_t(), exponent(x).get_mpz_t())) continue;
    ASSERT_TRUE(same_shape(pontryagin(pontryagin(x, n), n), x));
    const ChainComplex y = gen::complex(rng, ring, -1, 3);
    if (!y.is_finite() || (!y.is_zero() && !mpz_divisible_p(n.get_mpz_t(), exponent(y).get_mpz_t()))) continue;
    const ChainMap f = gen::chain_map(rng, x, y);
    ASSERT_NO_THROW(pontryagin(f, n));
    ASSERT_EQ(pontryagin(ChainMap::identity(x), n), ChainMap::identity(pontryagin(x, n)));
  }
}

TEST(Homology, Examples) {
  const FPModule z = FPModule::free(Z4, 1);
  const ModuleHom two(z, z, Matrix::parse(Z4, "[[2]]"));
  const ChainComplex x(Z4, 0, {z, z, z}, {two, two});
  EXPECT_TRUE(homology(x, 1).is_zero());
  EXPECT_EQ(cf(homology(x, 0)), "Z/2");
  EXPECT_EQ(cf(homology(x, 2)), "Z/2");
  EXPECT_FALSE(is_exact(x));
  for (int m = -1; m <= 2; ++m) EXPECT_TRUE(homology(disk(1, cyc(Z4, 2)), m).is_zero());
  EXPECT_EQ(cf(homology(sphere(2, cyc(Z4, 2)), 2)), "Z/2");
}

TEST(Homotopy, Examples) {
  const ChainComplex d = disk(1, FPModule::free(Z4, 1));
  const auto h0 = null_homotopy(ChainMap::zero(d, d));
  ASSERT_TRUE(h0.has_value());
  const auto h1 = null_homotopy(ChainMap::identity(d));
  ASSERT_TRUE(h1.has_value());
  EXPECT_TRUE(verify_homotopy(*h1));
  EXPECT_FALSE(null_homotopy(ChainMap::identity(sphere(0, cyc(Z4, 2)))).has_value());
}

TEST(Homotopy, BoundariesOfRandomMapsAreNullHomotopic) {
  gen::Engine rng(39);
  for (int trial = 0; trial < 30; ++trial) {
    const Ring& ring = trial % 2 ? ZZ : Z4;
    const ChainComplex x = gen::complex(rng, ring, 0, 3), y = gen::complex(rng, ring, 0, 4);
    std::map<int, ModuleHom> s;
    for (int k = x.lo(); k <= x.hi(); ++k) s.emplace(k, gen::hom(rng, x.term(k), y.term(k + 1)));
    auto at = [&](int k) { return s.count(k) ? s.at(k) : ModuleHom::zero(x.term(k), y.term(k + 1)); };
    std::map<int, ModuleHom> f;
    for (int k = x.lo(); k <= x.hi(); ++k) f.emplace(k, y.d(k + 1) * at(k) + at(k - 1) * x.d(k));
    const auto h = null_homotopy(ChainMap(x, y, f));
    ASSERT_TRUE(h.has_value());
  }
}

TEST(ComplexKernels, KernelAndCokernelOfRandomMaps) {
  gen::Engine rng(40);
  for (int trial = 0; trial < 30; ++trial) {
    const Ring& ring = trial % 2 ? ZZ : Z6;
    const ChainComplex x = gen::complex(rng, ring, 0, 3), y = gen::complex(rng, ring, 0, 3);
    const ChainMap f = gen::chain_map(rng, x, y);
    const ComplexKernel k = kernel(f);
    const ComplexCokernel c = cokernel(f);
    ASSERT_TRUE((f * k.inclusion).is_zero());
    ASSERT_TRUE((c.projection * f).is_zero());
    for (int n = x.lo(); n <= x.hi(); ++n) ASSERT_TRUE(is_injective(k.inclusion.at(n)));
    for (int n = y.lo(); n <= y.hi(); ++n) ASSERT_TRUE(is_surjective(c.projection.at(n)));
  }
}

TEST(PontryaginIso, RandomComplexes) {
  gen::Engine rng(41);
  int checked = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const Ring& ring = trial % 2 ? Z4 : Z6;
    const ChainComplex x = gen::complex(rng, ring, static_cast<int>(gen::uniform(rng, -2, 1)), 4);
    const Int n = ring.modulus();
    const PontryaginIso iso = pontryagin_iso(x, n);
    ASSERT_EQ(iso.phi * iso.psi, ChainMap::identity(iso.dual));
    ASSERT_EQ(iso.psi * iso.phi, ChainMap::identity(iso.bar.complex));
    ASSERT_TRUE(is_isomorphism(iso.phi));
    ++checked;
  }
  EXPECT_GE(checked, 20);
}
