#include <map>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padicval/bound_engine.hpp"

using namespace padicval;

namespace {

SeriesParams params(std::uint64_t p, long a) { return SeriesParams(Prime(p), BigInt(a)); }

std::vector<Valuation> prefix_valuations(const SeriesParams& sp, std::int64_t n_max) {
  std::vector<Valuation> out;
  for (const auto& s : prefix_sums(sp, n_max)) out.push_back(val_p(s.value, sp.p()));
  return out;
}

// Series oracle with one term valuation pushed below l_k.
struct BrokenGuaranteeOracle {
  SeriesOracle inner;
  std::int64_t bad_k;
  Valuation term_valuation(std::int64_t k) const { return k == bad_k ? Valuation(0) : inner.term_valuation(k); }
  std::strong_ordering ell_compare(std::int64_t k, std::int64_t c) const { return inner.ell_compare(k, c); }
  std::strong_ordering ell_step(std::int64_t k) const { return inner.ell_step(k); }
};

// l_k = floor(k / 2): unbounded but flat between steps.
struct FlatEllOracle {
  Valuation term_valuation(std::int64_t k) const { return Valuation(k); }
  std::strong_ordering ell_compare(std::int64_t k, std::int64_t c) const { return k / 2 <=> c; }
  std::strong_ordering ell_step(std::int64_t k) const { return (k + 1) / 2 <=> k / 2; }
};

static_assert(TermOracle<SeriesOracle>);
static_assert(TermOracle<BrokenGuaranteeOracle>);

}  // namespace

TEST(EllCompare, Examples) {
  EXPECT_EQ(ell_compare(Prime(2), 2, 2), std::strong_ordering::equal);
  EXPECT_EQ(ell_compare(Prime(3), 2, 2), std::strong_ordering::equal);
  EXPECT_EQ(ell_compare(Prime(2), 4, 3), std::strong_ordering::equal);
  EXPECT_EQ(ell_compare(Prime(2), 3, 2), std::strong_ordering::greater);  // 3 - log2(1.5)
  EXPECT_EQ(ell_compare(Prime(2), 3, 3), std::strong_ordering::less);
  EXPECT_THROW(ell_compare(Prime(2), 1, 0), std::domain_error);
}

TEST(EllCompare, AgreesWithHighPrecisionLogarithm) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (std::int64_t k = 2; k <= 300; ++k) {
      for (std::int64_t c = k - 10; c <= k + 2; ++c) {
        const int s = -oracle::bound_sign_float(c, k - 1, static_cast<std::int64_t>(p));
        const auto o = ell_compare(Prime(p), k, c);
        ASSERT_EQ(s, o < 0 ? -1 : (o > 0 ? 1 : 0)) << p << " " << k << " " << c;
      }
    }
  }
}

TEST(EllCompare, MirrorsBoundCompare) {
  for (std::uint64_t p : {2, 3, 11}) {
    for (std::int64_t n = 1; n <= 200; ++n) {
      for (std::int64_t nu = n - 8; nu <= n + 3; ++nu) {
        const auto e = ell_compare(Prime(p), n + 1, nu);
        const BoundCmp b = bound_compare(nu, n, Prime(p));
        ASSERT_EQ(b == BoundCmp::Above, e < 0);
        ASSERT_EQ(b == BoundCmp::Equal, e == 0);
      }
    }
  }
}

TEST(TermValuation, Examples) {
  EXPECT_EQ(term_valuation(params(2, 1), 2), 2);
  EXPECT_EQ(term_valuation(params(3, 1), 1), 2);
  EXPECT_EQ(term_valuation(params(2, 1), 4), 3);
  EXPECT_THROW(term_valuation(params(2, 1), 0), std::domain_error);
}

TEST(TermValuation, DecompositionMatchesDirectTerm) {
  for (const auto& [p, a, k_max] : {std::tuple{2UL, 1L, 1000L}, {3UL, -1L, 400L}, {5UL, 2L, 300L},
                                    {7UL, 8L, 300L}, {11UL, 10L, 300L}}) {
    const SeriesParams sp = params(p, a);
    for (std::int64_t k = 1; k <= k_max; ++k) {
      ASSERT_EQ(Valuation(term_valuation(sp, k)), val_p(term_r(sp, k).value, sp.p())) << p << " " << a << " " << k;
    }
  }
}

TEST(TailMin, Examples) {
  const SeriesOracle o21(params(2, 1));
  const TailMin t = tail_min(o21, 1);
  EXPECT_EQ(t.min, Valuation(2));
  EXPECT_EQ(t.witness, 2);

  const TailMin full = tail_min(SeriesOracle(params(3, 1)), 0);
  EXPECT_EQ(full.min, Valuation(2));
  EXPECT_EQ(full.witness, 1);
}

TEST(TailMin, MatchesWideBruteForceWindow) {
  for (std::uint64_t p : {2, 3, 5}) {
    for (long a : {1L, 2L, -1L}) {
      if (a % static_cast<long>(p) == 0) continue;
      const SeriesParams sp = params(p, a);
      const SeriesOracle oracle(sp);
      for (std::int64_t n = 1; n <= 80; ++n) {
        const TailMin t = tail_min(oracle, n);
        std::int64_t best = oracle::kInfinite;
        std::int64_t at = 0;
        for (std::int64_t k = n + 1; k <= n + 200; ++k) {
          const auto v = oracle::val(oracle::term(static_cast<std::int64_t>(p), a, k), static_cast<std::int64_t>(p));
          if (v < best) {
            best = v;
            at = k;
          }
        }
        ASSERT_TRUE(ell_compare(sp.p(), n + 201, best) > 0);  // window is conclusive
        ASSERT_EQ(t.min, Valuation(best));
        ASSERT_EQ(t.witness, at);
      }
    }
  }
}

TEST(TailMin, DoublingWindowChangesNothing) {
  const SeriesOracle oracle(params(3, 2));
  for (std::int64_t n = 1; n <= 150; ++n) {
    const TailMin base = tail_min(oracle, n);
    const TailMin wide = tail_min(oracle, n, {2, 1'000'000});
    ASSERT_EQ(base.min, wide.min);
    ASSERT_EQ(base.witness, wide.witness);
    ASSERT_GE(wide.window_end, base.window_end);
  }
}

TEST(TailMin, DetectsBrokenGuarantee) {
  const BrokenGuaranteeOracle bad{SeriesOracle(params(2, 1)), 9};
  EXPECT_THROW(tail_min(bad, 8), ContractViolation);
  try {
    tail_min(bad, 8);
  } catch (const ContractViolation& e) {
    EXPECT_EQ(e.index(), 9);
  }
}

TEST(TailMin, FlagsNonStrictLowerBound) { EXPECT_THROW(tail_min(FlatEllOracle{}, 1), ContractViolation); }

TEST(Theorem2, CleanScans) {
  for (const auto& [p, a] : {std::pair{2UL, 1L}, {3UL, 2L}}) {
    const SeriesParams sp = params(p, a);
    const auto nus = prefix_valuations(sp, 50);
    EXPECT_TRUE(check_theorem2_prefix(SeriesOracle(sp), std::span<const Valuation>(nus), 50).empty());
  }
}

TEST(Theorem2, AdversarialOracleReported) {
  const SeriesParams sp = params(2, 1);
  const auto nus = prefix_valuations(sp, 30);
  const BrokenGuaranteeOracle bad{SeriesOracle(sp), 12};
  const auto v = check_theorem2_prefix(bad, std::span<const Valuation>(nus), 30);
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v.front().what.find("contract"), std::string::npos);
}

TEST(Theorem2, ParallelMatchesSequential) {
  const SeriesParams sp = params(5, 3);
  const auto nus = prefix_valuations(sp, 80);
  const BrokenGuaranteeOracle bad{SeriesOracle(sp), 40};
  const auto seq = check_theorem2_prefix(bad, std::span<const Valuation>(nus), 80, 1);
  const auto par = check_theorem2_prefix(bad, std::span<const Valuation>(nus), 80, 4);
  ASSERT_EQ(seq.size(), par.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    EXPECT_EQ(seq[i].n, par[i].n);
    EXPECT_EQ(seq[i].what, par[i].what);
  }
}

TEST(EqualityCase, Examples) {
  EXPECT_EQ(equality_case(Prime(3), 5), 1);
  EXPECT_EQ(equality_case(Prime(2), 1), 0);
  EXPECT_EQ(equality_case(Prime(3), 3), std::nullopt);
  EXPECT_EQ(equality_case(Prime(7), 97), 2);
  EXPECT_EQ(equality_case(Prime(2), 6), std::nullopt);
}

TEST(Theorem1, Examples) {
  const auto run21 = check_theorem1(params(2, 1), 3);
  ASSERT_TRUE(run21.ok());
  const BoundReport& r = run21.reports[2];
  EXPECT_EQ(r.nu, Valuation(3));
  EXPECT_EQ(r.cmp, BoundCmp::Equal);
  EXPECT_TRUE(r.equality_predicted);
  EXPECT_EQ(r.alpha, 1);

  const auto run31 = check_theorem1(params(3, 1), 2);
  ASSERT_TRUE(run31.ok());
  EXPECT_EQ(run31.reports[0].nu, Valuation(2));
  EXPECT_EQ(run31.reports[0].cmp, BoundCmp::Equal);
  EXPECT_EQ(run31.reports[0].alpha, 0);
  EXPECT_EQ(run31.reports[1].cmp, BoundCmp::Above);
  EXPECT_FALSE(run31.reports[1].equality_predicted);
}

TEST(Theorem1, EqualitySetIndependentOfA) {
  const std::map<std::uint64_t, std::vector<std::int64_t>> expected = {
      {2, {1, 3, 7, 15, 31, 63}}, {3, {1, 5, 17, 53}}, {5, {1, 9, 49}}, {7, {1, 13, 97}}};
  for (const auto& [p, want] : expected) {
    for (long a : {1L, 2L, -1L, static_cast<long>(p) + 1}) {
      if (a % static_cast<long>(p) == 0) continue;
      const auto run = check_theorem1(params(p, a), 100, {4, false});
      ASSERT_TRUE(run.ok()) << run.failures.front().what;
      std::vector<std::int64_t> got;
      for (const auto& r : run.reports) {
        if (r.cmp == BoundCmp::Equal) got.push_back(r.n);
      }
      EXPECT_EQ(got, want) << "p=" << p << " a=" << a;
    }
  }
}

TEST(Theorem1, StrictTailGapAtEqualityCases) {
  for (std::uint64_t p : {2, 3, 5}) {
    const SeriesParams sp = params(p, 1);
    for (std::int64_t n = 1; n <= 260; ++n) {
      if (!equality_case(sp.p(), n)) continue;
      const std::int64_t head = term_valuation(sp, n + 1);
      for (std::int64_t k = n + 2; k <= n + 1 + 100; ++k) ASSERT_LT(head, term_valuation(sp, k)) << n << " " << k;
    }
  }
}

TEST(Dubickas, Examples) {
  const DyadicRun run = dubickas_corollary(3);
  ASSERT_TRUE(run.ok());
  EXPECT_EQ(run.rows[0].nu, Valuation(1));
  EXPECT_EQ(run.rows[0].cmp, BoundCmp::Equal);
  EXPECT_EQ(run.rows[1].nu, Valuation(2));
  EXPECT_EQ(run.rows[1].cmp, BoundCmp::Above);
  EXPECT_EQ(run.rows[2].nu, Valuation(2));
  EXPECT_EQ(run.rows[2].cmp, BoundCmp::Equal);
}

TEST(Dubickas, EqualityAtMersenneIndices) {
  const DyadicRun run = dubickas_corollary(300);
  ASSERT_TRUE(run.ok());
  EXPECT_EQ(run.equality_set, (std::vector<std::int64_t>{1, 3, 7, 15, 31, 63, 127, 255}));
}
