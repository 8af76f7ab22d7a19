#include "logifold/compile.hpp"
#include "logifold/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace logifold;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

MlpSpec random_mlp(const std::vector<std::size_t>& widths, std::uint64_t seed, Head head = Head::IndexMax) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<AffineMap> layers;
  for (std::size_t l = 1; l < widths.size(); ++l) {
    Matrix w(widths[l], widths[l - 1]);
    Vector b(widths[l]);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = n(rng);
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = 0.5 * n(rng);
    layers.emplace_back(w, b);
  }
  return MlpSpec(std::move(layers), Activation::ReLU, head);
}

// Forward pass straight from the weights. Reports whether x is within eps of
// any activation or logit-difference boundary.
struct Forward {
  std::size_t label;
  bool near_boundary;
};

Forward forward(const MlpSpec& m, const Vector& x, double eps = 1e-9) {
  Vector h = x;
  bool near = false;
  const auto& layers = m.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Vector z = layers[l].weights() * h + layers[l].bias();
    if (l + 1 < layers.size()) {
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        near |= std::abs(z[i]) < eps;
        z[i] = z[i] > 0 ? z[i] : 0;
      }
      h = z;
    } else {
      std::size_t best = 0;
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        for (Eigen::Index j = i + 1; j < z.size(); ++j) near |= std::abs(z[i] - z[j]) < eps;
        if (z[i] > z[static_cast<Eigen::Index>(best)]) best = static_cast<std::size_t>(i);
      }
      return {best, near};
    }
  }
  return {0, near};
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST(CompileMlp, OneHiddenUnitExample) {
  const MlpSpec m({AffineMap::from_rows({{1}}, {0}), AffineMap::from_rows({{1}, {0}}, {0, 0.5})},
                  Activation::ReLU, Head::IndexMax);
  const Compilation c = compile_mlp_detailed(m);
  ASSERT_EQ(c.stats.chambers_per_level.size(), 2u);
  EXPECT_EQ(c.stats.chambers_per_level[0], 2u);
  EXPECT_EQ(c.stats.chambers_per_level[1], 3u);  // x >= 0.5, 0 <= x < 0.5, and x < 0
  EXPECT_EQ(evaluate_llg(c.graph, vec({1})), "0");
  EXPECT_EQ(evaluate_llg(c.graph, vec({0.2})), "1");
}

TEST(CompileMlp, IdentityNetworkMatchesArgmax) {
  const MlpSpec m({AffineMap::identity(2), AffineMap::identity(2)}, Activation::ReLU, Head::IndexMax);
  const auto g = compile_mlp(m);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 10000; ++i) {
    const Vector x = vec({u(rng), u(rng)});
    const Forward f = forward(m, x);
    if (f.near_boundary) continue;
    ASSERT_EQ(g.evaluate_index(x), f.label) << x.transpose();
  }
  // both coordinates negative: relu ties at 0, lowest index wins
  EXPECT_EQ(g.evaluate_index(vec({-1, -3})), 0u);
}

TEST(CompileMlp, FirstLayerChambersMatchArrangementCount) {
  // generic hyperplanes: m lines in the plane cut it into 1 + m + C(m,2) regions
  for (std::size_t width : {1u, 3u, 4u, 6u}) {
    const MlpSpec m = random_mlp({2, width, 3}, 100 + width);
    const auto c = compile_mlp_detailed(m, {.mode = DiscoveryMode::Exhaustive});
    EXPECT_EQ(c.stats.chambers_per_level[0], binomial(width, 0) + binomial(width, 1) + binomial(width, 2));
  }
  const MlpSpec m3 = random_mlp({3, 5, 2}, 7);
  EXPECT_EQ(compile_mlp_detailed(m3).stats.chambers_per_level[0], 1u + 5u + 10u + 10u);
}

class CompileEquivalence : public ::testing::TestWithParam<std::tuple<std::vector<std::size_t>, DiscoveryMode>> {};

TEST_P(CompileEquivalence, AgreesWithForwardPass) {
  const auto& [widths, mode] = GetParam();
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const MlpSpec m = random_mlp(widths, seed * 31 + widths.size());
    DiscoveryConfig cfg;
    cfg.mode = mode;
    cfg.seed = seed;
    const double span = mode == DiscoveryMode::Sampling ? 1.0 : 3.0;
    const auto g = compile_mlp(m, cfg);
    std::mt19937_64 rng(seed + 1000);
    std::uniform_real_distribution<double> u(-span, span);
    std::size_t checked = 0;
    for (int i = 0; i < 10000; ++i) {
      Vector x(static_cast<Eigen::Index>(widths[0]));
      for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = u(rng);
      const Forward f = forward(m, x);
      if (f.near_boundary) continue;
      ASSERT_EQ(g.evaluate_index(x), f.label);
      ++checked;
    }
    EXPECT_GT(checked, 9900u);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Networks, CompileEquivalence,
    ::testing::Values(std::make_tuple(std::vector<std::size_t>{2, 4, 3}, DiscoveryMode::Exhaustive),
                      std::make_tuple(std::vector<std::size_t>{2, 8, 4}, DiscoveryMode::Exhaustive),
                      std::make_tuple(std::vector<std::size_t>{3, 4, 4, 3}, DiscoveryMode::Exhaustive),
                      std::make_tuple(std::vector<std::size_t>{2, 6, 5, 2}, DiscoveryMode::Exhaustive),
                      std::make_tuple(std::vector<std::size_t>{2, 4, 3}, DiscoveryMode::Sampling),
                      std::make_tuple(std::vector<std::size_t>{2, 5, 4, 3}, DiscoveryMode::Sampling)));

TEST(CompileMlp, GraphShapeIsLayered) {
  const MlpSpec m = random_mlp({2, 3, 3, 3}, 11);
  const auto c = compile_mlp_detailed(m);
  const auto& dag = c.graph.dag();
  // sinks sit one step below the second chamber level
  for (VertexId v = 0; v < dag.vertex_count(); ++v)
    if (dag.is_terminal(v)) EXPECT_EQ(dag.depth()[v], 3u);
  EXPECT_LE(c.stats.chambers_per_level[0], 8u);
  EXPECT_GE(c.stats.chambers_per_level[0], 1u);
  EXPECT_LE(c.stats.sinks, 3u);
}

TEST(CompileMlp, Errors) {
  EXPECT_THROW(compile_mlp(MlpSpec({AffineMap::identity(2), AffineMap::identity(2)}, Activation::Sigmoid,
                                   Head::IndexMax)),
               NonReLUActivation);
  EXPECT_THROW(compile_mlp(random_mlp({2, 3, 2}, 1, Head::Softmax)), InvalidArgument);
  DiscoveryConfig tight;
  tight.max_regions = 3;
  EXPECT_THROW(compile_mlp(random_mlp({2, 8, 4}, 2), tight), RegionBudgetExceeded);
}

TEST(CompileMlp, SamplingIsDeterministicPerSeed) {
  const MlpSpec m = random_mlp({2, 14, 3}, 5);
  DiscoveryConfig cfg;
  cfg.samples = 2000;
  cfg.seed = 9;
  const auto a = compile_mlp_detailed(m, cfg), b = compile_mlp_detailed(m, cfg);
  EXPECT_EQ(a.stats.mode, DiscoveryMode::Sampling);  // width 14 > cap 12
  EXPECT_EQ(a.stats.chambers_per_level, b.stats.chambers_per_level);
  EXPECT_EQ(a.stats.vertices, b.stats.vertices);
}

TEST(ArgmaxFromDifferences, LowestIndexOnTies) {
  EXPECT_EQ(argmax_from_differences(SignPattern("+++"), 3), 0u);  // all equal
  EXPECT_EQ(argmax_from_differences(SignPattern("--+"), 3), 1u);  // l1 > l0, l1 >= l2
  EXPECT_FALSE(argmax_from_differences(SignPattern("+-+"), 3));   // l0>=l1, l0<l2, l1>=l2: impossible
}
