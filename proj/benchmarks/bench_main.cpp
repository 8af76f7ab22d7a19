#include "logifold/compile.hpp"
#include "logifold/ensemble.hpp"
#include "logifold/theory/measure.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace logifold;

namespace {

MlpSpec net(std::size_t in, std::size_t hidden, std::size_t out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix w1(hidden, in), w2(out, hidden);
  Vector b1(hidden), b2(out);
  for (Eigen::Index i = 0; i < w1.size(); ++i) w1.data()[i] = n(rng);
  for (Eigen::Index i = 0; i < w2.size(); ++i) w2.data()[i] = n(rng);
  for (Eigen::Index i = 0; i < b1.size(); ++i) b1[i] = n(rng);
  for (Eigen::Index i = 0; i < b2.size(); ++i) b2[i] = n(rng);
  return MlpSpec({AffineMap(w1, b1), AffineMap(w2, b2)}, Activation::ReLU, Head::IndexMax);
}

void BM_Compile(benchmark::State& state) {
  const MlpSpec m = net(2, static_cast<std::size_t>(state.range(0)), 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(compile_mlp(m));
}
BENCHMARK(BM_Compile)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_EvaluateLlg(benchmark::State& state) {
  const MlpSpec m = net(2, 8, 4, 2);
  const LinearLogicalGraph g = compile_mlp(m);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  std::vector<Vector> xs;
  for (int i = 0; i < 1024; ++i) xs.push_back(Vector::NullaryExpr(2, [&] { return u(rng); }));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(g.evaluate_index(xs[i++ & 1023]));
}
BENCHMARK(BM_EvaluateLlg);

void BM_EvaluateTable(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0)), k = 10;
  const Dataset ds = Dataset::indexed(n);
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < k; ++c) labels.push_back("c" + std::to_string(c));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Chart> charts;
  for (int c = 0; c < 7; ++c) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> r(k);
      double s = 0;
      for (auto& v : r) s += v = u(rng);
      for (auto& v : r) v /= s;
      rows.push_back(r);
    }
    charts.push_back(chart_from_matrix(
        std::make_shared<const PredictionMatrix>("m" + std::to_string(c), Vocabulary(labels), ds.instance_ids, rows), ds));
  }
  const Logifold lf(charts, GlobalLabelSpace(labels), ThresholdLadder::standard(), ds);
  std::vector<std::size_t> truth(n);
  for (std::size_t i = 0; i < n; ++i) truth[i] = i % k;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_table(lf, truth));
}
BENCHMARK(BM_EvaluateTable)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_AgreementMeasure(benchmark::State& state) {
  using namespace logifold::theory;
  std::vector<DyadicRational> b;
  for (std::size_t e = 1; e <= static_cast<std::size_t>(state.range(0)); ++e) b.emplace_back(Integer(1), e);
  const StepFunction g = StepFunction::alternating(b, 1);
  for (auto _ : state) benchmark::DoNotOptimize(agreement_measure(g));
}
BENCHMARK(BM_AgreementMeasure)->Arg(1)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
