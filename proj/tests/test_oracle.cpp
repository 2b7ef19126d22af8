#include <gtest/gtest.h>

#include "gorhom/oracle.hpp"

using namespace gorhom;
using namespace gorhom::oracle;

namespace {

const Ring Z4 = Ring::integers_mod(4);

FiniteModuleTable t(std::vector<Int> orders, unsigned n) {
  return translate(FPModule(Ring::integers_mod(n), std::move(orders)), n);
}

}  // namespace

TEST(OracleHoms, Examples) {
  EXPECT_EQ(enumerate_homs(t({2}, 2), t({2}, 2)).size(), 2u);
  EXPECT_EQ(enumerate_homs(t({2}, 4), t({4}, 4)).size(), 2u);
  EXPECT_EQ(enumerate_homs(t({}, 4), t({2, 4}, 4)).size(), 1u);
  EXPECT_EQ(enumerate_homs(t({4}, 4), t({2, 4}, 4)).size(), 8u);
}

TEST(OracleHoms, EveryListedMapIsAdditive) {
  const auto m = t({2, 4}, 4), n = t({4, 4}, 4);
  for (const auto& f : enumerate_homs(m, n))
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b)
        ASSERT_EQ(f[m.add(static_cast<Elem>(a), static_cast<Elem>(b))], n.add(f[a], f[b]));
}

TEST(OracleExt, Examples) {
  EXPECT_EQ(brute_ext1(t({4}, 4), t({2, 4}, 4)).order, 1);
  EXPECT_EQ(brute_ext1(t({2}, 4), t({2}, 4)).order, 2);
  EXPECT_EQ(brute_ext1(t({2}, 2), t({2}, 2)).order, 1);
  // ℤ/2 by ℤ/2 as abelian groups: ℤ/4 or the split one
  const auto e = brute_ext1(t({2}, 4), t({2}, 4));
  EXPECT_EQ(e.factors, std::vector<Int>{2});
  // over ℤ/8 the extensions of ℤ/4 by ℤ/2 form ℤ/2
  EXPECT_EQ(brute_ext1(t({4}, 8), t({2}, 8)).factors, std::vector<Int>{2});
}

TEST(OracleExt, TensorAndTor) {
  EXPECT_EQ(tensor_size(t({2}, 12), t({3}, 12)), 1);
  EXPECT_EQ(tensor_size(t({4}, 8), t({2, 8}, 8)), 8);
  EXPECT_EQ(brute_tor1(t({4}, 8), t({2, 8}, 8)).factors, std::vector<Int>{2});
}

TEST(OracleTables, RejectsBrokenTables) {
  // ℤ/3 addition with ring ℤ/2 acting: 2 does not annihilate
  std::vector<std::vector<Elem>> add{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::vector<Elem>> act{{0, 0, 0}, {0, 1, 2}};
  EXPECT_THROW(FiniteModuleTable(2, add, act), std::invalid_argument);
  // not commutative
  std::vector<std::vector<Elem>> bad{{0, 1}, {0, 0}};
  EXPECT_THROW(FiniteModuleTable(2, bad, {{0, 0}, {0, 1}}), std::invalid_argument);
  // scalar table disagreeing with repeated addition
  EXPECT_THROW(FiniteModuleTable(3, add, {{0, 0, 0}, {0, 1, 2}, {0, 1, 2}}), std::invalid_argument);
  EXPECT_NO_THROW(FiniteModuleTable(3, add, {{0, 0, 0}, {0, 1, 2}, {0, 2, 1}}));
}

TEST(OracleTables, BoundsFailLoudly) {
  EXPECT_THROW(t({4, 4, 4, 4}, 4), BoundExceeded);
  EXPECT_THROW(translate(FPModule(Ring::integers_mod(32), {32}), 32), BoundExceeded);
}

TEST(OracleTables, PcPresentationNormalForms) {
  const auto m = t({2, 4}, 4);
  const PcPresentation pc = pc_presentation(m);
  ASSERT_EQ(pc.gens.size(), 2u);
  EXPECT_EQ(pc.rel_order[0], 4u);
  EXPECT_EQ(pc.rel_order[1], 2u);
  for (std::size_t a = 0; a < m.size(); ++a) {
    Elem v = 0;
    for (std::size_t i = 0; i < pc.gens.size(); ++i) v = m.add(v, m.act(pc.normal_form[a][i], pc.gens[i]));
    EXPECT_EQ(v, a);
  }
}

TEST(OracleTables, SyzygyOfTwoOverFour) {
  EXPECT_EQ(syzygy_factors(t({2}, 4)), std::vector<Int>{2});
  EXPECT_TRUE(syzygy_factors(t({4}, 4)).empty());
  EXPECT_EQ(exponent(t({2, 4}, 4)), 4u);
  EXPECT_EQ(invariant_factors(dual(t({2, 4}, 4))), (std::vector<Int>{2, 4}));
  EXPECT_EQ(canonical_form(t({2}, 4), Z4).to_string(), "Z/2");
}
