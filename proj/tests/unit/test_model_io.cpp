#include "logifold/error.hpp"
#include "logifold/model_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace logifold;

namespace {

PredictionMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return parse_predictions(in, "test");
}

const std::string kData = LOGIFOLD_TEST_DATA;

}  // namespace

TEST(Predictions, ParseAndLookup) {
  const auto m = parse("# model_id=M labels=a,b,c\nx0,0.2,0.3,0.5\n\nx1,1,0,0\n");
  EXPECT_EQ(m.model_id(), "M");
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m.find("x1"), 1u);
  EXPECT_FALSE(m.find("zz"));
  EXPECT_DOUBLE_EQ(m.row(0)[2], 0.5);
}

TEST(Predictions, RowSumAndNegativeHandling) {
  EXPECT_THROW(parse("# model_id=M labels=a,b\nx0,0.5,0.6\n"), RowSumError);
  const auto m = parse("# model_id=M labels=a,b\nx0,0.500003,0.5\nx1,-1e-12,1\n");
  EXPECT_NEAR(m.row(0)[0] + m.row(0)[1], 1.0, 1e-15);
  EXPECT_EQ(m.row(1)[0], 0.0);
  EXPECT_THROW(parse("# model_id=M labels=a,b\nx0,-0.1,1.1\n"), SchemaError);
}

TEST(Predictions, RowSumErrorNamesInstance) {
  try {
    parse("# model_id=M labels=a,b\nfoo17,0.1,0.1\n");
    FAIL();
  } catch (const RowSumError& e) {
    EXPECT_NE(std::string(e.what()).find("foo17"), std::string::npos);
  }
}

TEST(Predictions, SchemaErrors) {
  EXPECT_THROW(parse(""), SchemaError);
  EXPECT_THROW(parse("model_id=M labels=a\nx,1\n"), SchemaError);
  EXPECT_THROW(parse("# model_id=M labels=a,b\nx0,1\n"), SchemaError);
  EXPECT_THROW(parse("# model_id=M labels=a,b\nx0,0.5,abc\n"), SchemaError);
  EXPECT_THROW(parse("# model_id=M labels=a,b\r\nx0,0.5,0.5\r\n"), SchemaError);
  EXPECT_THROW(parse("# model_id=M labels=a,a\nx0,0.5,0.5\n"), SchemaError);
  EXPECT_THROW(parse("# model_id=M labels=a,b\nx0,0.5,0.5\nx0,1,0\n"), DuplicateInstance);
}

TEST(Predictions, WriteRoundTrip) {
  const auto m = parse("# model_id=M labels=a,b,c\nx0,0.125,0.375,0.5\nx1,0.1,0.2,0.7\n");
  std::ostringstream out;
  write_predictions(out, m);
  const auto again = parse(out.str());
  EXPECT_EQ(again.instance_ids(), m.instance_ids());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) EXPECT_NEAR(again.row(i)[j], m.row(i)[j], 1e-9);
  std::ostringstream twice;
  write_predictions(twice, again);
  EXPECT_EQ(twice.str(), out.str());
  EXPECT_EQ(format_probability(0.5), "0.5");
  EXPECT_EQ(format_probability(1.0), "1");
}

TEST(Predictions, LoadFromDisk) {
  const auto m = load_predictions(kData + "/chart_a.csv");
  EXPECT_EQ(m.model_id(), "A");
  EXPECT_THROW(load_predictions(kData + "/does_not_exist.csv"), SchemaError);
}

TEST(GroundTruth, ParseAndDuplicates) {
  std::istringstream in("# comment\nx0,a\nx1,b\n");
  const auto t = parse_ground_truth(in);
  EXPECT_EQ(t.labels, (std::vector<std::string>{"a", "b"}));
  std::istringstream dup("x0,a\nx0,b\n");
  EXPECT_THROW(parse_ground_truth(dup), DuplicateInstance);
  std::istringstream bad("x0\n");
  EXPECT_THROW(parse_ground_truth(bad), SchemaError);
  std::ostringstream out;
  write_ground_truth(out, t);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_ground_truth(back).instance_ids, t.instance_ids);
}

TEST(MlpJson, ParseDumpRoundTrip) {
  const MlpSpec m = load_mlp(kData + "/tiny_mlp.json");
  EXPECT_EQ(m.input_dim(), 1u);
  EXPECT_EQ(m.head(), Head::IndexMax);
  EXPECT_EQ(m.hidden_activation(), Activation::ReLU);
  const std::string dumped = dump_mlp(m);
  const MlpSpec again = parse_mlp(dumped);
  EXPECT_EQ(dump_mlp(again), dumped);
  EXPECT_EQ(again.layers()[1].bias()[1], 0.5);
}

TEST(MlpJson, Errors) {
  EXPECT_THROW(load_mlp(kData + "/malformed_mlp.json"), DimensionChainError);
  EXPECT_THROW(parse_mlp("{not json"), SchemaError);
  EXPECT_THROW(parse_mlp(R"({"input_dim": 1, "head": "index-max", "layers": [)"
                         R"({"weights": [[1]], "bias": [0], "activation": "swish"},)"
                         R"({"weights": [[1]], "bias": [0]}]})"),
               UnknownActivation);
  EXPECT_THROW(parse_mlp(R"({"input_dim": 1, "head": "argmax", "layers": [{"weights": [[1]], "bias": [0]}]})"),
               SchemaError);
  EXPECT_THROW(parse_mlp(R"({"input_dim": 2, "head": "softmax", "layers": [{"weights": [[1]], "bias": [0]}]})"),
               DimensionChainError);
  EXPECT_THROW(parse_mlp(R"({"input_dim": 1, "head": "softmax", "layers": [{"weights": [[1]], "bias": [0, 1]}]})"),
               DimensionChainError);
}

TEST(Routing, Parse) {
  const RoutingSpec r = load_routing(kData + "/routing.txt");
  EXPECT_EQ(r.filter_id, "F");
  ASSERT_EQ(r.coarse_to_expert.size(), 2u);
  EXPECT_EQ(r.coarse_to_expert[1], (std::pair<std::string, std::string>{"high", "E_high"}));
  std::istringstream missing("low,E\n");
  EXPECT_THROW(parse_routing(missing), SchemaError);
}
