#include <gtest/gtest.h>

#include "agreetensor/models.hpp"
#include "agreetensor/tensor.hpp"
#include "support.hpp"

using namespace agreetensor;
using namespace testing_support;

TEST(CellClass, Examples) {
  EXPECT_EQ(classify_cell(3, {1, 1, 1}), CellClass::AllEqual);
  EXPECT_EQ(classify_cell(3, {1, 1, 2}), CellClass::Eq12);
  EXPECT_EQ(classify_cell(3, {2, 1, 2}), CellClass::Eq13);
  EXPECT_EQ(classify_cell(3, {1, 2, 2}), CellClass::Eq23);
  EXPECT_EQ(classify_cell(3, {1, 2, 3}), CellClass::AllDistinct);
}

TEST(CellClass, OutOfRange) {
  try {
    classify_cell(2, {1, 3, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
  EXPECT_THROW(classify_cell(2, {0, 1, 1}), Error);
}

TEST(CellClass, CardinalitiesByEnumeration) {
  for (int n = 2; n <= 8; ++n) {
    std::map<CellClass, std::size_t> seen;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) ++seen[classify_cell(n, {i, j, k})];
    const std::size_t nn = n;
    EXPECT_EQ(seen[CellClass::AllEqual], nn);
    EXPECT_EQ(seen[CellClass::Eq12], nn * (nn - 1));
    EXPECT_EQ(seen[CellClass::Eq13], nn * (nn - 1));
    EXPECT_EQ(seen[CellClass::Eq23], nn * (nn - 1));
    EXPECT_EQ(seen[CellClass::AllDistinct], nn * nn * nn - 3 * nn * nn + 2 * nn);
    for (auto [cls, count] : seen) EXPECT_EQ(class_cardinality(cls, n), count);
  }
}

TEST(Tensor, RejectsNegativeAndUnnormalized) {
  std::vector<Rational> e(8, Rational(1, 8));
  e[0] = Rational(-1, 8);
  EXPECT_THROW(ExactTensor::from_entries(2, e), Error);
  std::vector<Rational> f(8, Rational(1, 4));
  EXPECT_THROW(ExactTensor::from_entries(2, f), Error);
  auto raw = ExactTensor::from_entries(2, f, Normalization::Unnormalized);
  EXPECT_FALSE(raw.normalized());
  EXPECT_EQ(raw.total(), 2);
  auto p = raw.normalize();
  EXPECT_TRUE(p.normalized());
  EXPECT_EQ(p(1, 2, 1), Rational(1, 8));
  EXPECT_THROW(ExactTensor::from_entries(2, std::vector<Rational>(7, Rational(0))), Error);
}

TEST(Tensor, ZeroMassNormalize) {
  auto z = ExactTensor::from_entries(2, std::vector<Rational>(8, Rational(0)), Normalization::Unnormalized);
  try {
    z.normalize();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroMass);
  }
}

TEST(Tensor, FloatToleranceOnSum) {
  std::vector<double> e(8, 0.125);
  e[0] += 1e-13;
  EXPECT_NO_THROW(FloatTensor::from_entries(2, e));
  e[0] += 1e-9;
  EXPECT_THROW(FloatTensor::from_entries(2, e), Error);
}

TEST(Marginalize, UniformTable) {
  auto t = marginalize(uniform_tensor(2), 3);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) EXPECT_EQ(t(i, j), Rational(1, 4));
}

TEST(Marginalize, PairwiseQIExample) {
  auto p = materialize<Rational>(PairwiseQIParams<Rational>{uniform(2), uniform(2), uniform(2), 3, 3, 3});
  auto t = marginalize(p, 3);
  EXPECT_EQ(t(1, 1), Rational(5, 12));
  EXPECT_EQ(t(1, 2), Rational(1, 12));
  EXPECT_EQ(t(2, 1), Rational(1, 12));
  EXPECT_EQ(t(2, 2), Rational(5, 12));
}

TEST(Marginalize, InvalidAxis) {
  try {
    marginalize(uniform_tensor(2), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidAxis);
  }
}

// Direct summation, written independently of the library loop.
static Rational brute_marginal(const ExactTensor& p, int axis, int r, int c) {
  Rational s = 0;
  for (int x = 1; x <= p.n(); ++x) {
    if (axis == 3) s += p(r, c, x);
    if (axis == 2) s += p(r, x, c);
    if (axis == 1) s += p(x, r, c);
  }
  return s;
}

TEST(Marginalize, PropertiesOnSamples) {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Family fam = static_cast<Family>(seed % 6);
      auto p = materialize(sample_params(fam, n, seed));
      for (int axis = 1; axis <= 3; ++axis) {
        auto t = marginalize(p, axis);
        EXPECT_EQ(t.total(), 1);
        for (int r = 1; r <= n; ++r)
          for (int c = 1; c <= n; ++c) EXPECT_EQ(t(r, c), brute_marginal(p, axis, r, c));
      }
      auto t3 = marginalize(p, 3);
      auto row = one_way_marginal(p, 1);
      for (int i = 1; i <= n; ++i) EXPECT_EQ(t3.row_sum(i), row[i - 1]);
      EXPECT_EQ(marginalize(p.transposed(1, 2), 3), t3.transposed());
    }
  }
}

TEST(Tensor, RelabelAndFloat) {
  auto p = materialize(sample_params(Family::QI, 3, 5));
  std::vector<int> perm{2, 0, 1};
  auto q = p.relabeled(perm);
  EXPECT_EQ(q.total(), 1);
  auto f = p.to_float();
  EXPECT_NEAR(f(1, 2, 3), p(1, 2, 3).get_d(), 1e-15);
}
