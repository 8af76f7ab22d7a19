#include "logifold/compile.hpp"
#include "logifold/error.hpp"
#include "logifold/graph_io.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace logifold;

namespace {

MlpSpec random_mlp(std::size_t in, std::size_t hidden, std::size_t out, std::uint64_t seed, Head head) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix w1(hidden, in), w2(out, hidden);
  Vector b1(hidden), b2(out);
  for (Eigen::Index i = 0; i < w1.size(); ++i) w1.data()[i] = n(rng);
  for (Eigen::Index i = 0; i < w2.size(); ++i) w2.data()[i] = n(rng);
  for (Eigen::Index i = 0; i < b1.size(); ++i) b1[i] = n(rng);
  for (Eigen::Index i = 0; i < b2.size(); ++i) b2[i] = n(rng);
  return MlpSpec({AffineMap(w1, b1), AffineMap(w2, b2)}, Activation::ReLU, head);
}

}  // namespace

TEST(GraphIo, CrispRoundTrip) {
  const auto g = compile_mlp(random_mlp(2, 5, 3, 4, Head::IndexMax));
  const std::string text = dump_graph(g);
  const auto back = parse_graph(text);
  EXPECT_EQ(dump_graph(back), text);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 500; ++i) {
    Vector x(2);
    x << u(rng), u(rng);
    EXPECT_EQ(back.evaluate_index(x), g.evaluate_index(x));
  }
}

TEST(GraphIo, FuzzyRoundTrip) {
  const auto g = compile_mlp_fuzzy(random_mlp(3, 4, 3, 8, Head::Softmax));
  const std::string text = dump_fuzzy_graph(g);
  const auto back = parse_fuzzy_graph(text);
  EXPECT_EQ(dump_fuzzy_graph(back), text);
  Vector x(3);
  x << 0.3, -1.2, 0.8;
  const auto a = g.evaluate(x), b = back.evaluate(x);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_DOUBLE_EQ(a[i], b[i]);
}

TEST(GraphIo, RejectsWrongKind) {
  const auto g = compile_mlp_fuzzy(random_mlp(2, 2, 2, 1, Head::Softmax));
  EXPECT_ANY_THROW(parse_graph(dump_fuzzy_graph(g)));
  EXPECT_THROW(parse_graph("[]"), SchemaError);
}
