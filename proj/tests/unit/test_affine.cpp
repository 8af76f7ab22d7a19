#include "logifold/affine.hpp"
#include "logifold/error.hpp"
#include "logifold/sign_pattern.hpp"
#include "logifold/vocabulary.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace logifold;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST(AffineMap, ApplyAndCompose) {
  const auto a = AffineMap::from_rows({{1, 2}, {0, -1}}, {0.5, 1});
  const auto b = AffineMap::from_rows({{3, 0}}, {-1});
  const Vector x = vec({2, -1});
  EXPECT_TRUE(a.apply(x).isApprox(vec({0.5, 2})));
  EXPECT_TRUE(b.compose(a).apply(x).isApprox(b.apply(a.apply(x))));
  EXPECT_EQ(b.compose(a).output_dim(), 1u);
}

TEST(AffineMap, RejectsBadShapesAndNonFinite) {
  EXPECT_THROW(AffineMap(Matrix::Ones(2, 2), Vector::Zero(3)), DimensionMismatch);
  Matrix w = Matrix::Ones(1, 1);
  w(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_ANY_THROW(AffineMap(w, Vector::Zero(1)));
  const auto a = AffineMap::identity(2);
  EXPECT_THROW(a.apply(vec({1, 2, 3})), DimensionMismatch);
}

TEST(AffineMap, MaskRowsZeroesDroppedRows) {
  const auto a = AffineMap::from_rows({{1, 1}, {2, 2}}, {1, 1});
  const auto m = a.mask_rows({true, false});
  EXPECT_TRUE(m.apply(vec({1, 1})).isApprox(vec({3, 0})));
}

TEST(AffineMap, PairwiseDifferencesLexicographic) {
  const auto a = AffineMap::identity(3);
  const Vector d = a.pairwise_differences().apply(vec({1, 5, 2}));
  EXPECT_TRUE(d.isApprox(vec({-4, -1, 3})));  // (0,1) (0,2) (1,2)
}

TEST(Activations, ReluSoftmaxArgmax) {
  EXPECT_TRUE(relu(vec({-1, 0, 2})).isApprox(vec({0, 0, 2})));
  const Vector p = softmax(vec({1000, 1000}));
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  EXPECT_NEAR(softmax(vec({1, 0.5}))[0], 0.6225, 1e-4);
  EXPECT_EQ(argmax_lowest(vec({0.5, 0.5})), 0u);
  EXPECT_EQ(argmax_lowest(vec({0.1, 0.7, 0.7})), 1u);
}

TEST(SignPattern, HalfOpenConvention) {
  EXPECT_EQ(SignPattern::of(vec({0.0, -0.0, -1e-300, 3})).str(), "++-+");
  SignPattern p;
  p.push_back(Sign::Negative);
  EXPECT_EQ(p, SignPattern("-"));
  EXPECT_FALSE(p.nonnegative(0));
}

TEST(Vocabulary, LookupAndDuplicates) {
  Vocabulary v({"a", "b"});
  EXPECT_EQ(v.index_of("b"), 1u);
  EXPECT_THROW(v.index_of("z"), UnknownLabel);
  EXPECT_THROW(Vocabulary({"a", "a"}), InvalidArgument);
  const std::vector<std::vector<std::string>> parts{{"a", "b"}, {"b", "c"}};
  const auto g = union_label_space(std::span<const std::vector<std::string>>(parts));
  EXPECT_EQ(g.vocab().labels(), (std::vector<std::string>{"a", "b", "c"}));
}
