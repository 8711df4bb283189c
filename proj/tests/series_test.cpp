#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padicval/bound_engine.hpp"
#include "padicval/series.hpp"

using namespace padicval;

namespace {

SeriesParams params(std::uint64_t p, long a) { return SeriesParams(Prime(p), BigInt(a)); }
BigRational rat(long n, long d) { return BigRational(BigInt(n), BigInt(d)); }

}  // namespace

TEST(SeriesParams, RejectsMultiplesOfP) {
  EXPECT_THROW(params(3, 6), std::invalid_argument);
  EXPECT_THROW(params(2, 0), std::invalid_argument);
  EXPECT_THROW(params(5, -10), std::invalid_argument);
  EXPECT_EQ(params(5, 7).complement(), -2);
  EXPECT_EQ(params(3, -1).complement(), 4);
}

TEST(TermR, Examples) {
  EXPECT_EQ(term_r(params(2, 1), 1).value, BigRational(4));
  EXPECT_EQ(term_r(params(3, 1), 1).value, rat(9, 2));
  EXPECT_EQ(term_r(params(3, 2), 1).value, rat(9, 2));
  EXPECT_THROW(term_r(params(3, 1), 0), std::domain_error);
}

TEST(TermR, MatchesSumOfFractionsAsWritten) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (long a : {1L, 2L, -1L, 9L, -13L}) {
      if (a % static_cast<long>(p) == 0) continue;
      for (std::int64_t k = 1; k <= 40; ++k) {
        ASSERT_EQ(oracle::str(oracle::to_rat(term_r(params(p, a), k).value)),
                  oracle::str(oracle::term(static_cast<std::int64_t>(p), a, k)));
      }
    }
  }
}

TEST(PrefixSums, Examples) {
  const auto s = prefix_sums(params(2, 1), 3);
  ASSERT_EQ(s.size(), 3U);
  EXPECT_EQ(s[2].n, 3);
  EXPECT_EQ(s[2].value, rat(40, 3));
  EXPECT_EQ(prefix_sums(params(3, 1), 1)[0].value, rat(9, 2));
  EXPECT_EQ(prefix_sums(params(11, -4), 1)[0].value, term_r(params(11, -4), 1).value);
  EXPECT_EQ(prefix_sums(params(2, 1), 4)[3].value, rat(64, 3));
  EXPECT_THROW(prefix_sums(params(2, 1), 0), std::domain_error);
}

TEST(PrefixSums, StreamEqualsFreshFold) {
  for (std::uint64_t p : {2, 3, 7}) {
    for (long a : {1L, 3L, -1L}) {
      if (a % static_cast<long>(p) == 0) continue;
      PrefixSumStream stream(params(p, a));
      for (std::int64_t n = 1; n <= 60; ++n) {
        const PrefixSum s = stream.next();
        ASSERT_EQ(oracle::str(oracle::to_rat(s.value)), oracle::str(oracle::prefix(static_cast<std::int64_t>(p), a, n)))
            << "p=" << p << " a=" << a << " n=" << n;
      }
    }
  }
}

TEST(PrefixSums, SymmetricInAAndComplement) {
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    for (long a : {1L, 2L, -3L, 15L}) {
      if (a % static_cast<long>(p) == 0) continue;
      const auto lhs = prefix_sums(params(p, a), 50);
      const auto rhs = prefix_sums(params(p, static_cast<long>(p) - a), 50);
      for (std::size_t i = 0; i < lhs.size(); ++i) ASSERT_EQ(lhs[i].value, rhs[i].value);
    }
  }
}

TEST(BinomialRow, MatchesFactorials) {
  for (std::int64_t n = 0; n <= 60; ++n) {
    const auto row = binomial_row(n);
    ASSERT_EQ(row.size(), static_cast<std::size_t>(n) + 1);
    for (std::int64_t k = 0; k <= n; ++k) ASSERT_EQ(oracle::to_int(row[k]), oracle::binomial(n, k));
  }
}

TEST(Mansour, Examples) {
  auto [l1, r1] = mansour_sides(BigRational(1), BigRational(1), 1);
  EXPECT_EQ(l1, BigRational(2));
  EXPECT_EQ(r1, BigRational(2));
  auto [l2, r2] = mansour_sides(BigRational(1), BigRational(2), 2);
  EXPECT_EQ(l2, BigRational(6));
  EXPECT_EQ(r2, BigRational(6));
  auto [l0, r0] = mansour_sides(rat(-3, 7), rat(5, 2), 0);
  EXPECT_EQ(l0, BigRational(1));
  EXPECT_EQ(r0, BigRational(1));
  // Frozen from a Fractions evaluation of both sides.
  auto [l5, r5] = mansour_sides(BigRational(3), rat(-7, 2), 5);
  EXPECT_EQ(l5, rat(-40703, 160));
  EXPECT_EQ(r5, rat(-40703, 160));
}

TEST(Mansour, DomainErrors) {
  EXPECT_THROW(mansour_sides(BigRational(0), BigRational(1), 2), std::domain_error);
  EXPECT_THROW(mansour_sides(BigRational(2), BigRational(0), 2), std::domain_error);
  EXPECT_THROW(mansour_sides(rat(1, 3), rat(-1, 3), 2), std::domain_error);
}

TEST(Mansour, RandomRationalsAgree) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 50);
  std::uniform_int_distribution<std::int64_t> pick_n(0, 30);
  int checked = 0;
  while (checked < 150) {
    const long xn = num(rng);
    const long yn = num(rng);
    if (xn == 0 || yn == 0) continue;
    const BigRational x = rat(xn, den(rng));
    const BigRational y = rat(yn, den(rng));
    if ((x + y).is_zero()) continue;
    const auto sides = mansour_sides(x, y, pick_n(rng));
    ASSERT_EQ(sides.lhs, sides.rhs) << x << " " << y;
    ++checked;
  }
}

TEST(LcmBinom, Examples) {
  EXPECT_TRUE(verify_lcm_binom(0));
  EXPECT_TRUE(verify_lcm_binom(4));
  EXPECT_TRUE(verify_lcm_binom(7));
  EXPECT_THROW(verify_lcm_binom(-1), std::domain_error);
}

TEST(LcmBinom, BruteForceBothSides) {
  for (std::int64_t n = 0; n <= 80; ++n) {
    oracle::Int acc = 1;
    for (std::int64_t k = 0; k <= n; ++k) acc = oracle::lcm(acc, oracle::binomial(n, k));
    ASSERT_EQ(acc * (n + 1), oracle::lcm_upto(n + 1));
    ASSERT_TRUE(verify_lcm_binom(n));
  }
}

TEST(Identity11, Examples) {
  EXPECT_EQ(identity11_rhs(params(2, 1), 3), rat(40, 3));
  EXPECT_EQ(identity11_rhs(params(3, 1), 1), rat(9, 2));
  EXPECT_THROW(identity11_rhs(params(3, 1), 0), std::domain_error);
}

TEST(Identity11, EqualsPrefixSums) {
  for (std::uint64_t p : {2, 3, 5, 13}) {
    for (long a : {1L, 4L, -1L, 27L}) {
      if (a % static_cast<long>(p) == 0) continue;
      const auto sums = prefix_sums(params(p, a), 60);
      for (const auto& s : sums) ASSERT_EQ(identity11_rhs(params(p, a), s.n), s.value);
    }
  }
}

TEST(FirstMethodBound, HoldsOnSmallGrid) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (long a : {1L, 2L, -1L}) {
      if (a % static_cast<long>(p) == 0) continue;
      const Prime prime(p);
      for (const auto& s : prefix_sums(params(p, a), 120)) {
        ASSERT_GE(val_p(s.value, prime), Valuation(s.n + 1 - floor_log(prime, s.n)));
      }
    }
  }
}
