#include <gtest/gtest.h>

#include "okwa/zlattice.hpp"
#include "test_support.hpp"

using namespace okwa;
using namespace okwa::testing;

namespace {

bool is_hnf(const HnfResult& h) {
  for (std::size_t j = 0; j < h.rank(); ++j) {
    std::size_t p = h.pivot_rows[j];
    if (j > 0 && h.pivot_rows[j - 1] >= p) return false;
    if (h.h(p, j) < 1) return false;
    for (std::size_t i = p + 1; i < h.h.rows(); ++i)
      if (h.h(i, j) != 0) return false;
    for (std::size_t k = j + 1; k < h.rank(); ++k)
      if (h.h(p, k) < 0 || h.h(p, k) >= h.h(p, j)) return false;
  }
  return true;
}

void expect_transform_valid(const IntMatrix& a, const HnfResult& h) {
  ASSERT_TRUE(h.transform.has_value());
  IntMatrix prod = a * *h.transform;
  std::size_t zeros = a.cols() - h.rank();
  EXPECT_TRUE(prod.columns(0, zeros).is_zero());
  EXPECT_EQ(prod.columns(zeros, h.rank()), h.h);
  EXPECT_EQ(abs(determinant(*h.transform)), 1);
}

}  // namespace

TEST(Hnf, IdentityIsFixed) {
  IntMatrix id = IntMatrix::identity(3);
  HnfResult h = hnf(id, true);
  EXPECT_EQ(h.h, id);
  EXPECT_EQ(*h.transform, id);
  EXPECT_EQ(h.pivot_rows, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Hnf, IdealGeneratorsOfNormThreeIdeal) {
  IntMatrix a = int_matrix({{3, 0, 2, 5}, {0, 3, -1, 2}});
  HnfResult h = hnf(a, true);
  EXPECT_EQ(h.h, int_matrix({{3, 1}, {0, 1}}));
  expect_transform_valid(a, h);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    EXPECT_TRUE(brute_in_lattice(h.h, a.column(j), 6));
  }
  for (std::size_t j = 0; j < h.rank(); ++j) {
    EXPECT_TRUE(brute_in_lattice(a, h.h.column(j), 2));
  }
  EXPECT_EQ(lattice_index(a), 3);
}

TEST(Hnf, ZeroMatrixHasEmptyBasis) {
  HnfResult h = hnf(IntMatrix(2, 3, mpz_class(0)), true);
  EXPECT_EQ(h.rank(), 0u);
  EXPECT_EQ(h.h.rows(), 2u);
  EXPECT_TRUE(h.pivot_rows.empty());
}

TEST(Hnf, RandomMatricesSatisfyShapeAndTransform) {
  auto g = rng(11);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = uniform(g, 1, 4), c = uniform(g, 1, 6);
    IntMatrix a = random_int_matrix(g, r, c, 6);
    if (uniform(g, 0, 4) == 0) a.set_column(0, IntVector(r, mpz_class(0)));
    HnfResult h = hnf(a, true);
    EXPECT_TRUE(is_hnf(h));
    expect_transform_valid(a, h);
    EXPECT_EQ(h.rank(), rank(to_rational(a)));
    HnfResult again = hnf(h.h);
    EXPECT_EQ(again.h, h.h);
  }
}

TEST(Hnf, LatticeEqualityBothDirections) {
  auto g = rng(12);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = uniform(g, 1, 3), c = uniform(g, 1, 5);
    IntMatrix a = random_int_matrix(g, r, c, 5);
    HnfResult h = hnf(a);
    for (std::size_t j = 0; j < c; ++j) EXPECT_TRUE(lattice_contains(h, a.column(j)));
    HnfResult ha = hnf(a, true);
    // Each column of H is a*U restricted, so it lies in the lattice of a.
    for (std::size_t j = 0; j < h.rank(); ++j) {
      IntVector coeffs = ha.transform->column(c - h.rank() + j);
      EXPECT_EQ(a * coeffs, h.h.column(j));
    }
  }
}

TEST(Hnf, UniqueUnderUnimodularRemix) {
  auto g = rng(13);
  for (int t = 0; t < 200; ++t) {
    std::size_t r = uniform(g, 1, 4), c = uniform(g, 1, 5);
    IntMatrix a = random_int_matrix(g, r, c, 7);
    IntMatrix b = a * random_unimodular(g, c);
    EXPECT_EQ(hnf(a).h, hnf(b).h);
  }
}

TEST(Hnf, ModularAgreesWithPlain) {
  auto g = rng(14);
  int checked = 0;
  while (checked < 200) {
    std::size_t n = uniform(g, 1, 4), m = n + uniform(g, 0, 3);
    IntMatrix a = random_int_matrix(g, n, m, 9);
    HnfResult h = hnf(a);
    if (h.rank() < n) continue;
    mpz_class det = lattice_index(a);
    mpz_class mult = det * uniform(g, 1, 3);
    EXPECT_EQ(hnf_modular(a, mult), h.h) << "case " << checked;
    ++checked;
  }
}

TEST(LatticeContains, Examples) {
  HnfResult h = hnf(int_matrix({{3, 1}, {0, 1}}));
  EXPECT_TRUE(lattice_contains(h, {0, 0}));
  EXPECT_TRUE(lattice_contains(h, {2, -1}));
  EXPECT_FALSE(lattice_contains(h, {1, 0}));
  EXPECT_FALSE(brute_in_lattice(h.h, {1, 0}, 10));
  EXPECT_THROW(lattice_contains(h, {1, 0, 0}), Error);
}

TEST(LatticeContains, AgreesWithExhaustiveSearch) {
  auto g = rng(15);
  for (int t = 0; t < 100; ++t) {
    IntMatrix a = random_int_matrix(g, 2, 2, 3);
    HnfResult h = hnf(a);
    IntVector v{uniform(g, -4, 4), uniform(g, -4, 4)};
    bool fast = lattice_contains(h, v);
    // With entries <= 3 and |v| <= 4, coefficients needed are bounded by 30.
    if (h.rank() == 2) {
      EXPECT_EQ(fast, brute_in_lattice(a, v, 30));
    } else if (!fast) {
      EXPECT_FALSE(brute_in_lattice(a, v, 8));
    }
  }
}

TEST(LatticeIndex, Examples) {
  EXPECT_EQ(lattice_index(IntMatrix::identity(3)), 1);
  EXPECT_EQ(lattice_index(int_matrix({{2, 0}, {0, 2}})), 4);
  EXPECT_THROW(lattice_index(int_matrix({{1, 2}, {2, 4}})), Error);
}

TEST(LatticeIndex, EqualsAbsoluteDeterminantAndIsMultiplicative) {
  auto g = rng(16);
  for (int t = 0; t < 100; ++t) {
    IntMatrix a = random_int_matrix(g, 3, 3, 5);
    mpz_class det = determinant(a);
    if (det == 0) continue;
    EXPECT_EQ(lattice_index(a), abs(det));
  }
  IntMatrix outer = int_matrix({{2, 0}, {0, 3}});
  IntMatrix inner = outer * int_matrix({{5, 0}, {0, 2}});
  EXPECT_EQ(lattice_index(inner), lattice_index(outer) * 10);
}

TEST(SolveRational, Examples) {
  RatMatrix b = rat_matrix({{1, 2}, {3, 4}});
  EXPECT_EQ(solve_rational(RatMatrix::identity(2), b).x, b);

  RatMatrix a = rat_matrix({{1, 2}, {2, 4}});
  RationalSolution s = solve_rational(a, rat_matrix({{1}, {2}}));
  EXPECT_EQ(s.rank, 1u);
  EXPECT_EQ(a * s.x, rat_matrix({{1}, {2}}));
  EXPECT_EQ(column_space_basis(a), rat_matrix({{1}, {2}}));

  try {
    solve_rational(rat_matrix({{1}, {0}}), rat_matrix({{0}, {1}}));
    FAIL() << "expected NoSolution";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoSolution);
  }
}

TEST(Determinant, BareissMatchesRational) {
  auto g = rng(17);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = uniform(g, 1, 5);
    IntMatrix a = random_int_matrix(g, n, n, 9);
    EXPECT_EQ(mpq_class(determinant(a)), determinant(to_rational(a)));
  }
}
