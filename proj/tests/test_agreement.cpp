#include <gtest/gtest.h>

#include <sstream>

#include "agreetensor/agreement.hpp"
#include "support.hpp"

using namespace agreetensor;
using namespace testing_support;

static TwoWayTable<Rational> table(std::initializer_list<const char*> xs) {
  auto v = Rs(xs);
  return TwoWayTable<Rational>::from_entries(2, v);
}

TEST(CohenKappa, Examples) {
  EXPECT_EQ(cohen_kappa(table({"1/2", "0", "0", "1/2"})), 1);
  EXPECT_EQ(cohen_kappa(table({"1/4", "1/4", "1/4", "1/4"})), 0);
  EXPECT_EQ(cohen_kappa(table({"5/12", "1/12", "1/12", "5/12"})), Rational(2, 3));
}

TEST(CohenKappa, Degenerate) {
  try {
    cohen_kappa(table({"1", "0", "0", "0"}));
    FAIL();
  } catch (const DegenerateChanceError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateChance);
  }
}

TEST(PairwiseKappas, Examples) {
  EXPECT_EQ(pairwise_kappas(uniform_tensor(3)), (KappaTriple<Rational>{0, 0, 0}));
  auto p = materialize<Rational>(PairwiseQIParams<Rational>{uniform(2), uniform(2), uniform(2), 3, 3, 3});
  const Rational k(2, 3);
  EXPECT_EQ(pairwise_kappas(p), (KappaTriple<Rational>{k, k, k}));
  for (int n = 2; n <= 5; ++n) {
    auto perfect = ExactTensor::generate(n, [&](Cell c) { return c.is_diagonal() ? Rational(1, n) : Rational(0); });
    EXPECT_EQ(pairwise_kappas(perfect), (KappaTriple<Rational>{1, 1, 1}));
  }
}

TEST(PairwiseKappas, DegenerateTagsPair) {
  // raters 1 and 3 always say 1, rater 2 splits: only the 13 marginal is concentrated
  std::vector<Rational> e(8, 0);
  e[flat_index(2, {1, 1, 1})] = Rational(1, 2);
  e[flat_index(2, {1, 2, 1})] = Rational(1, 2);
  auto p = ExactTensor::from_entries(2, e);
  try {
    pairwise_kappas(p);
    FAIL();
  } catch (const DegenerateChanceError& err) {
    EXPECT_EQ(err.pair(), "13");
  }
}

TEST(ClosedForm, PairwiseQIExamples) {
  EXPECT_EQ(kappa_pqi_uniform<Rational>(2, 1, 1, 1), (KappaTriple<Rational>{0, 0, 0}));
  EXPECT_EQ(kappa_pqi_uniform<Rational>(2, 3, 3, 3).kappa12, Rational(2, 3));
  EXPECT_EQ(kappa_pqi_uniform<Rational>(5, 1, 1, 1), (KappaTriple<Rational>{0, 0, 0}));
  try {
    kappa_pqi_uniform<Rational>(2, 0, 0, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroMass);
  }
  EXPECT_EQ(kappa_pqi_uniform<Rational>(2, 0, 1, 1).kappa12, -1);
}

TEST(ClosedForm, PairwiseMixExamples) {
  EXPECT_EQ(kappa_pmix_uniform<Rational>(0, 0, 0, 1), (KappaTriple<Rational>{1, 1, 1}));
  EXPECT_EQ(kappa_pmix_uniform<Rational>(0, 0, 0, 0), (KappaTriple<Rational>{0, 0, 0}));
  EXPECT_EQ(kappa_pmix_uniform<Rational>(R("3/10"), 0, 0, R("1/5")).kappa12, Rational(1, 2));
  EXPECT_THROW(kappa_pmix_uniform<Rational>(R("1/2"), R("1/2"), R("1/2"), 0), Error);
  EXPECT_THROW(kappa_pmix_uniform<Rational>(R("-1/2"), 0, 0, 0), Error);
}

TEST(ClosedForm, MatchesNumericPath) {
  for (int n : {2, 3, 5}) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      auto q = std::get<PairwiseQIParams<Rational>>(sample_params(Family::pQI, n, seed));
      q.a = q.b = q.c = uniform(n);
      EXPECT_EQ(kappa_pqi_uniform(n, q.gamma12, q.gamma13, q.gamma23), pairwise_kappas(materialize<Rational>(q)));
      auto m = std::get<PairwiseMixParams<Rational>>(sample_params(Family::pMix, n, seed));
      m.a = m.b = m.c = uniform(n);
      EXPECT_EQ(kappa_pmix_uniform(m.alpha12, m.alpha13, m.alpha23, m.alpha123),
                pairwise_kappas(materialize<Rational>(m)));
    }
  }
}

TEST(ClosedForm, MonotoneInOwnGamma) {
  for (int n = 2; n <= 5; ++n) {
    for (int g13 = 0; g13 <= 4; ++g13) {
      for (int g23 = 0; g23 <= 4; ++g23) {
        if (g13 + g23 + n - 2 == 0) continue;
        Rational prev = kappa_pqi_uniform<Rational>(n, 0, g13, g23).kappa12;
        for (int s = 1; s <= 30; ++s) {
          Rational cur = kappa_pqi_uniform<Rational>(n, Rational(s, 3), g13, g23).kappa12;
          EXPECT_GT(cur, prev);
          prev = cur;
        }
      }
    }
  }
}

TEST(ClosedForm, RangeForGammaAtLeastOne) {
  for (int n = 2; n <= 5; ++n) {
    for (int x = 0; x < 8; ++x)
      for (int y = 0; y < 8; ++y)
        for (int z = 0; z < 8; ++z) {
          auto k = kappa_pqi_uniform<Rational>(n, 1 + Rational(x * x, 4), 1 + Rational(y, 3), 1 + Rational(z * z * z, 7));
          for (const auto& v : {k.kappa12, k.kappa13, k.kappa23}) {
            EXPECT_GE(v, 0);
            EXPECT_LE(v, 1);
          }
        }
  }
}

TEST(ClosedForm, LabelSymmetry) {
  const Rational a(2), b(7, 3), c(1, 5);
  auto k = kappa_pqi_uniform<Rational>(4, a, b, c);
  auto swapped = kappa_pqi_uniform<Rational>(4, b, a, c);
  EXPECT_EQ(swapped.kappa12, k.kappa13);
  EXPECT_EQ(swapped.kappa13, k.kappa12);
  EXPECT_EQ(swapped.kappa23, k.kappa23);
  auto rotated = kappa_pqi_uniform<Rational>(4, c, b, a);
  EXPECT_EQ(rotated.kappa12, k.kappa23);
  EXPECT_EQ(rotated.kappa23, k.kappa12);
}

TEST(Sweep, SinglePointGrid) {
  SweepGrid g = SweepGrid::pqi_default(2);
  g.gamma_values = {1.0};
  auto r = sweep(g, 1);
  ASSERT_EQ(r.size(), 1u);
  ASSERT_TRUE(r[0].kappas);
  EXPECT_NEAR(r[0].kappas->kappa12, 0.0, 1e-15);
  EXPECT_NEAR(r[0].kappas->kappa23, 0.0, 1e-15);
}

TEST(Sweep, PairwiseMixMatchesClosedForm) {
  for (int n : {2, 4}) {
    auto records = sweep(SweepGrid::pmix_default(n), 2);
    EXPECT_EQ(records.size(), 1001u);
    for (const auto& r : records) {
      ASSERT_TRUE(r.kappas);
      EXPECT_NEAR(r.kappas->kappa12, r.params[1] + r.params[4], 1e-12);
      EXPECT_NEAR(r.kappas->kappa13, r.params[2] + r.params[4], 1e-12);
      EXPECT_NEAR(r.kappas->kappa23, r.params[3] + r.params[4], 1e-12);
    }
  }
}

TEST(Sweep, OrderIndependentOfThreads) {
  auto g = SweepGrid::pqi_default(3);
  std::ostringstream one, four;
  write_sweep_csv(one, g.family, sweep(g, 1));
  write_sweep_csv(four, g.family, sweep(g, 4));
  EXPECT_EQ(one.str(), four.str());
  EXPECT_EQ(one.str().substr(0, one.str().find('\n')), "g12,g13,g23,kappa12,kappa13,kappa23,error");
}

TEST(Sweep, DegenerateRecordIsKept) {
  SweepGrid g = SweepGrid::pmix_default(2);
  g.a = {1.0, 0.0};
  g.b = {1.0, 0.0};
  g.c = {1.0, 0.0};
  auto records = sweep(g, 1);
  EXPECT_EQ(records.size(), 1001u);
  std::size_t flagged = 0;
  for (const auto& r : records) flagged += !r.error.empty();
  EXPECT_GT(flagged, 0u);
  std::ostringstream out;
  write_sweep_csv(out, g.family, records);
  EXPECT_NE(out.str().find(",,,DegenerateChance"), std::string::npos);
}

TEST(Sweep, FormatDecimal) {
  EXPECT_EQ(format_decimal(0.5), "0.5");
  EXPECT_EQ(format_decimal(1e-13), "0");
  EXPECT_EQ(format_decimal(2.0 / 3.0), "0.6666666667");
}
