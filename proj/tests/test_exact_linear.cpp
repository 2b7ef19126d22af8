#include <gtest/gtest.h>

#include <random>

#include "gorhom/exact_linear.hpp"

using namespace gorhom;

namespace {

const Ring ZZ = Ring::integers();

Matrix random_matrix(std::mt19937_64& rng, const Ring& ring, int lo, int hi, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim(0, max_dim);
  std::uniform_int_distribution<int> val(lo, hi);
  const std::size_t r = dim(rng), c = dim(rng);
  Matrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, val(rng));
  return m;
}

// Determinant by cofactor expansion; fine for the ≤6×6 sizes here.
Int det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  Int total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    const Int minor = det(m.select_rows(rows).select_columns(cols));
    total += (j % 2 ? -1 : 1) * m.at(0, j) * minor;
  }
  return total;
}

void check_snf(const Matrix& a) {
  const SNFResult r = snf(a, {true, true, true});
  ASSERT_EQ(r.u * a * r.v, r.d) << a.to_string();
  ASSERT_EQ(r.u * r.u_inverse, Matrix::identity(a.ring(), a.rows()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) ASSERT_EQ(r.d.at(i, j), 0);
  const auto inv = r.invariants();
  for (std::size_t i = 0; i < r.rank; ++i) {
    ASSERT_NE(inv[i], 0);
    if (a.ring().is_finite()) ASSERT_TRUE(mpz_divisible_p(a.ring().modulus().get_mpz_t(), inv[i].get_mpz_t()));
    else ASSERT_GT(inv[i], 0);
    if (i + 1 < r.rank) ASSERT_TRUE(mpz_divisible_p(inv[i + 1].get_mpz_t(), inv[i].get_mpz_t()));
  }
  for (std::size_t i = r.rank; i < std::min(a.rows(), a.cols()); ++i) ASSERT_EQ(r.d.at(i, i), 0);
}

}  // namespace

TEST(Snf, IdentityStaysIdentity) {
  const auto r = snf(Matrix::identity(ZZ, 2));
  EXPECT_EQ(r.d, Matrix::identity(ZZ, 2));
  EXPECT_EQ(r.u, Matrix::identity(ZZ, 2));
  EXPECT_EQ(r.v, Matrix::identity(ZZ, 2));
}

TEST(Snf, Diag2And3) {
  const auto r = snf(Matrix::parse(ZZ, "[[2,0],[0,3]]"));
  EXPECT_EQ(r.d, Matrix::parse(ZZ, "[[1,0],[0,6]]"));
}

TEST(Snf, AlreadyInFormOverZ4) {
  const Ring z4 = Ring::integers_mod(4);
  EXPECT_EQ(snf(Matrix::parse(z4, "[[2]]")).d, Matrix::parse(z4, "[[2]]"));
}

TEST(Snf, UnitPivotNormalizedOverZ6) {
  const Ring z6 = Ring::integers_mod(6);
  const auto r = snf(Matrix::parse(z6, "[[5,4],[4,2]]"));
  check_snf(r.a);
}

TEST(Snf, EmptyShapes) {
  check_snf(Matrix::parse(ZZ, "[]"));
  check_snf(Matrix::parse(ZZ, "[[],[]]"));
  check_snf(Matrix(ZZ, 0, 3));
}

TEST(Snf, RandomIntegerDivisibilityChain) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 1000; ++n) check_snf(random_matrix(rng, ZZ, -50, 50, 6));
}

TEST(Snf, RandomModularDivisibilityChain) {
  std::mt19937_64 rng(12);
  for (int m : {2, 4, 6, 8, 9, 12, 30, 36}) {
    const Ring r = Ring::integers_mod(m);
    for (int n = 0; n < 200; ++n) check_snf(random_matrix(rng, r, 0, m - 1, 6));
  }
}

TEST(Snf, BigModulusFallback) {
  std::mt19937_64 rng(13);
  const Ring r = Ring::integers_mod(Int("1000000000000000000000"));
  for (int n = 0; n < 100; ++n) check_snf(random_matrix(rng, r, -1000, 1000, 5));
}

TEST(Snf, UnimodularTransformsOverZ) {
  std::mt19937_64 rng(14);
  for (int n = 0; n < 200; ++n) {
    const Matrix a = random_matrix(rng, ZZ, -9, 9, 5);
    const auto r = snf(a);
    EXPECT_EQ(abs(det(r.u)), 1);
    EXPECT_EQ(abs(det(r.v)), 1);
  }
}

TEST(Solve, IdentityReturnsRhs) {
  const Matrix b = Matrix::column_vector(ZZ, {7, -3});
  EXPECT_EQ(solve(Matrix::identity(ZZ, 2), b), b);
}

TEST(Solve, ParityObstruction) { EXPECT_FALSE(solve(Matrix::parse(ZZ, "[[2]]"), Matrix::parse(ZZ, "[[1]]"))); }

TEST(Solve, TwoOverZ4) {
  const Ring z4 = Ring::integers_mod(4);
  const Matrix a = Matrix::parse(z4, "[[2]]");
  const auto x = solve(a, Matrix::parse(z4, "[[2]]"));
  ASSERT_TRUE(x);
  EXPECT_TRUE(x->at(0, 0) == 1 || x->at(0, 0) == 3);
  EXPECT_EQ(a * *x, Matrix::parse(z4, "[[2]]"));
}

TEST(Solve, DimensionMismatchThrows) {
  EXPECT_THROW(solve(Matrix::identity(ZZ, 2), Matrix::column_vector(ZZ, {1})), std::invalid_argument);
}

TEST(Solve, RandomConsistency) {
  std::mt19937_64 rng(15);
  for (const Ring& r : {ZZ, Ring::integers_mod(4), Ring::integers_mod(12)}) {
    for (int n = 0; n < 300; ++n) {
      const Matrix a = random_matrix(rng, r, -20, 20, 5);
      Matrix x(r, a.cols(), 1);
      for (std::size_t i = 0; i < a.cols(); ++i) x.set(i, 0, static_cast<long>(rng() % 41) - 20);
      const Matrix b = a * x;
      const auto y = solve(a, b);
      ASSERT_TRUE(y);
      EXPECT_EQ(a * *y, b);
    }
  }
}

TEST(Kernel, UnitHasNoKernel) { EXPECT_EQ(kernel_generators(Matrix::parse(ZZ, "[[1]]")).cols(), 0u); }

TEST(Kernel, TwoOverZ4) {
  const Ring z4 = Ring::integers_mod(4);
  EXPECT_EQ(kernel_generators(Matrix::parse(z4, "[[2]]")), Matrix::parse(z4, "[[2]]"));
}

TEST(Kernel, TwoMinusTwo) {
  const Matrix k = kernel_generators(Matrix::parse(ZZ, "[[2,-2]]"));
  ASSERT_EQ(k.cols(), 1u);
  // generator is ±[1,1]
  EXPECT_TRUE(k == Matrix::parse(ZZ, "[[1],[1]]") || k == Matrix::parse(ZZ, "[[-1],[-1]]"));
}

// Brute-force check: every kernel vector over small ℤ/m is a combination of the generators.
TEST(Kernel, GeneratesFullKernelOverSmallRings) {
  std::mt19937_64 rng(16);
  for (int m : {2, 4, 6, 8}) {
    const Ring r = Ring::integers_mod(m);
    for (int n = 0; n < 40; ++n) {
      Matrix a = random_matrix(rng, r, 0, m - 1, 3);
      const Matrix k = kernel_generators(a);
      EXPECT_TRUE((a * k).is_zero());
      // enumerate all of (ℤ/m)^cols
      std::vector<Int> x(a.cols(), 0);
      std::size_t brute = 0;
      for (;;) {
        const Matrix v = Matrix::column_vector(r, x);
        if ((a * v).is_zero()) {
          ++brute;
          EXPECT_TRUE(solve(k, v)) << a.to_string();
        }
        std::size_t i = 0;
        while (i < x.size() && (x[i] += 1) == m) x[i++] = 0;
        if (i == x.size()) break;
      }
      EXPECT_GT(brute, 0u);
    }
  }
}
