#include "logifold/error.hpp"
#include "logifold/graph.hpp"

#include <gtest/gtest.h>

using namespace logifold;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// identity two-class network written out by hand: source branches on
// relu(x) pattern, each chamber vertex decides on h0 - h1
LinearLogicalGraph identity_graph() {
  GraphParts p;
  p.input_dim = 2;
  p.target_vocab = Vocabulary({"0", "1"});
  // 0 source, 1..4 chambers ++ +- -+ --, 5/6 sinks
  p.vertex_count = 7;
  p.deciders.emplace(0, AffineMap::identity(2));
  const char* keys[] = {"++", "+-", "-+", "--"};
  for (int k = 0; k < 4; ++k) {
    p.arrows.push_back({0, static_cast<VertexId>(k + 1), SignPattern(keys[k])});
    const double a = keys[k][0] == '+' ? 1 : 0, b = keys[k][1] == '+' ? 1 : 0;
    p.deciders.emplace(k + 1, AffineMap::from_rows({{a, -b}}, {0}));
    p.arrows.push_back({static_cast<VertexId>(k + 1), 5, SignPattern("+")});
    p.arrows.push_back({static_cast<VertexId>(k + 1), 6, SignPattern("-")});
  }
  p.sinks = {{5, 0}, {6, 1}};
  return LinearLogicalGraph(std::move(p));
}

}  // namespace

TEST(Dag, RejectsCyclesSelfLoopsAndExtraSources) {
  EXPECT_THROW(Dag(2, {{0, 1, {}}, {1, 0, {}}}), InvalidGraph);
  EXPECT_THROW(Dag(2, {{0, 0, {}}, {0, 1, {}}}), InvalidGraph);
  EXPECT_THROW(Dag(3, {{0, 2, {}}, {1, 2, {}}}), InvalidGraph);
  EXPECT_THROW(Dag(2, {{0, 5, {}}}), InvalidGraph);
  const Dag d(3, {{0, 1, {}}, {1, 2, {}}, {0, 2, {}}});
  EXPECT_EQ(d.source(), 0u);
  EXPECT_EQ(d.depth()[2], 2u);
}

TEST(LinearLogicalGraph, IdentityExamples) {
  const auto g = identity_graph();
  EXPECT_EQ(evaluate_llg(g, vec({0.7, 0.2})), "0");
  EXPECT_EQ(evaluate_llg(g, vec({-1, 3})), "1");
  EXPECT_EQ(evaluate_llg(g, vec({0.5, 0.5})), "0");
  EXPECT_EQ(g.trace(vec({-1, 3})).size(), 3u);
}

TEST(LinearLogicalGraph, DimensionMismatch) {
  EXPECT_THROW(identity_graph().evaluate(vec({1})), DimensionMismatch);
}

TEST(LinearLogicalGraph, MissingArrowForUnbuiltPattern) {
  GraphParts p;
  p.input_dim = 1;
  p.target_vocab = Vocabulary({"pos"});
  p.vertex_count = 2;
  p.deciders.emplace(0, AffineMap::identity(1));
  p.arrows.push_back({0, 1, SignPattern("+")});
  p.sinks = {{1, 0}};
  const LinearLogicalGraph g(std::move(p));
  EXPECT_EQ(g.evaluate(vec({0})), "pos");
  EXPECT_THROW(g.evaluate(vec({-1})), MissingArrow);
}

TEST(LinearLogicalGraph, ValidationFailures) {
  const GraphParts good = identity_graph().parts();
  {
    GraphParts p = good;
    p.deciders.erase(0);  // branching without a decider
    EXPECT_THROW(LinearLogicalGraph(std::move(p)), InvalidGraph);
  }
  {
    GraphParts p = good;
    p.arrows[0].key = SignPattern("+-");  // duplicate key
    EXPECT_THROW(LinearLogicalGraph(std::move(p)), InvalidGraph);
  }
  {
    GraphParts p = good;
    p.sinks.erase(6);  // terminal vertex without a label
    EXPECT_THROW(LinearLogicalGraph(std::move(p)), InvalidGraph);
  }
  {
    GraphParts p = good;
    p.arrows[0].key = SignPattern("+++");  // key width differs from decider
    EXPECT_THROW(LinearLogicalGraph(std::move(p)), InvalidGraph);
  }
}
