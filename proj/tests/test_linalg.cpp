#include "rigidity/exact_linalg.hpp"
#include "rigidity/random.hpp"

#include <gtest/gtest.h>

using namespace rigidity;

namespace {

// Cofactor expansion along the first row.
Rational det_cofactor(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Rational total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t r = 1; r < n; ++r) rows.push_back(r);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    const Rational minor = det_cofactor(m.submatrix(rows, cols));
    total += (j % 2 ? -1 : 1) * m(0, j) * minor;
  }
  return total;
}

// Largest k with a nonzero k x k minor.
std::size_t rank_by_minors(const ExactMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    auto rows = first_combination(k);
    do {
      auto cols = first_combination(k);
      do {
        if (det_cofactor(m.submatrix(rows, cols)) != 0) return k;
      } while (next_combination(cols, m.cols()));
    } while (next_combination(rows, m.rows()));
  }
  return 0;
}

ExactMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed, std::int64_t lo, std::int64_t hi) {
  Rng rng(seed);
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.between(lo, hi);
  return m;
}

}  // namespace

TEST(ExactMatrix, ProductAndIdentity) {
  const ExactMatrix a{{1, 2}, {3, 4}};
  const ExactMatrix b{{0, 1}, {1, 0}};
  EXPECT_EQ(a * b, (ExactMatrix{{2, 1}, {4, 3}}));
  EXPECT_EQ(a * ExactMatrix::identity(2), a);
  EXPECT_TRUE((a - a).is_zero());
}

TEST(Determinant, MatchesCofactorExpansion) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 1 + seed % 6;
    ExactMatrix m = random_matrix(n, n, seed, -3, 3);
    if (seed % 5 == 0 && n > 1) {
      for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j) * 2;  // force a dependency
    }
    EXPECT_EQ(det_exact(m), det_cofactor(m)) << "seed " << seed;
  }
}

TEST(Determinant, RationalEntries) {
  ExactMatrix m(2, 2);
  m(0, 0) = Rational(1, 2);
  m(0, 1) = Rational(1, 3);
  m(1, 0) = Rational(1, 4);
  m(1, 1) = Rational(1, 5);
  EXPECT_EQ(det_exact(m), Rational(1, 10) - Rational(1, 12));
  EXPECT_EQ(det_exact(m), det_cofactor(m));
}

TEST(Rank, MatchesLargestNonzeroMinor) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t r = 1 + seed % 4;
    const std::size_t c = 1 + (seed / 4) % 5;
    ExactMatrix m = random_matrix(r, c, seed, -1, 1);
    EXPECT_EQ(rank_exact(m), rank_by_minors(m)) << "seed " << seed;
    EXPECT_EQ(rank_modular(m, kMersenne61), rank_by_minors(m)) << "seed " << seed;
  }
}

TEST(Rank, ZeroAndEmpty) {
  EXPECT_EQ(rank_exact(ExactMatrix(3, 4)), 0u);
  EXPECT_EQ(rank_exact(ExactMatrix(0, 0)), 0u);
}

TEST(Modular, RejectsBadPrimes) {
  for (std::uint64_t p : {0ull, 1ull, 4ull, 91ull}) {
    try {
      rank_modular(ExactMatrix::identity(2), p);
      FAIL() << p;
    } catch (const Error& ex) {
      EXPECT_EQ(ex.code(), ErrorCode::BadPrime);
    }
  }
  EXPECT_EQ(rank_modular(ExactMatrix{{2, 0}, {0, 3}}, 7), 2u);
  EXPECT_EQ(rank_modular(ExactMatrix{{7, 0}, {0, 3}}, 7), 1u);
}

TEST(Inverse, ProductIsIdentity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 7;
    const ExactMatrix m = random_matrix(n, n, seed, -9, 9);
    if (det_cofactor(m) == 0) continue;
    const ExactMatrix inv = invert_exact(m);
    EXPECT_EQ(m * inv, ExactMatrix::identity(n));
    EXPECT_EQ(inv * m, ExactMatrix::identity(n));
  }
}

TEST(Inverse, SingularThrows) {
  try {
    invert_exact(ExactMatrix{{1, 2}, {2, 4}});
    FAIL();
  } catch (const Error& ex) {
    EXPECT_EQ(ex.code(), ErrorCode::Singular);
  }
  EXPECT_THROW(laplace_split(ExactMatrix{{1, 2}, {2, 4}}, {0}), Error);
}

TEST(LaplaceSplit, ResultSatisfiesBothConditionsAndMatchesEnumeration) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 2 + seed % 6;
    const ExactMatrix m = random_matrix(n, n, 1000 + seed, -2, 2);
    if (det_cofactor(m) == 0) continue;
    for (std::size_t k = 1; k < n; ++k) {
      const auto cols = first_combination(k);
      const auto other = complement(cols, n);
      std::vector<std::vector<std::size_t>> valid;
      auto rows = first_combination(k);
      do {
        if (det_cofactor(m.submatrix(rows, cols)) != 0 &&
            det_cofactor(m.submatrix(complement(rows, n), other)) != 0) {
          valid.push_back(rows);
        }
      } while (next_combination(rows, n));
      ASSERT_FALSE(valid.empty());  // generalized Laplace expansion
      const auto got = laplace_split(m, cols);
      EXPECT_NE(std::find(valid.begin(), valid.end(), got), valid.end()) << "seed " << seed << " k " << k;
    }
  }
}

TEST(LaplaceSplit, LargerMatricesUseIntersectionSearch) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const std::size_t n = 14 + seed;
    ExactMatrix m = random_matrix(n, n, seed, -1, 1);
    if (det_exact(m) == 0) continue;
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; j += 2) cols.push_back(j);
    const auto rows = laplace_split(m, cols);
    ASSERT_EQ(rows.size(), cols.size());
    EXPECT_NE(det_exact(m.submatrix(rows, cols)), 0);
    EXPECT_NE(det_exact(m.submatrix(complement(rows, n), complement(cols, n))), 0);
  }
}

TEST(LaplaceSplit, PermutationMatrixHasOneAnswer) {
  // Row i has its 1 in column (i + 1) mod 4.
  const ExactMatrix p{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}};
  EXPECT_EQ(laplace_split(p, {1, 2}), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(laplace_split(p, {0}), (std::vector<std::size_t>{3}));
}

TEST(Combinations, EnumeratesBinomialManyInOrder) {
  auto idx = first_combination(3);
  std::size_t count = 0;
  std::vector<std::size_t> prev;
  do {
    if (!prev.empty()) {
      EXPECT_LT(prev, idx);
    }
    prev = idx;
    ++count;
  } while (next_combination(idx, 7));
  EXPECT_EQ(count, binomial(7, 3));
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(200, 100), SIZE_MAX);
}
