#include "logifold/ensemble.hpp"

#include "logifold/error.hpp"
#include "logifold/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace logifold {

double sigma_threshold(double x) { return 1.0 / (1.0 + std::exp(-x)); }

ThresholdLadder::ThresholdLadder(std::vector<double> thresholds) : thresholds_(std::move(thresholds)) {
  if (thresholds_.empty() || thresholds_.front() != 0.0) {
    throw InvalidLadder("threshold ladder must start at 0");
  }
  for (std::size_t i = 0; i < thresholds_.size(); ++i) {
    const double t = thresholds_[i];
    if (!(t >= 0.0 && t < 1.0)) throw InvalidLadder("threshold " + std::to_string(t) + " not in [0, 1)");
    if (i > 0 && !(t > thresholds_[i - 1])) {
      throw InvalidLadder("thresholds must be strictly ascending");
    }
  }
}

ThresholdLadder ThresholdLadder::standard() {
  std::vector<double> t{0.0};
  for (int k = 0; k <= 20; ++k) t.push_back(sigma_threshold(k / 2.0));
  return ThresholdLadder(std::move(t));
}

Dataset Dataset::indexed(std::size_t n) {
  Dataset d;
  d.instance_ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) d.instance_ids.push_back(std::to_string(i));
  return d;
}

MatrixSource::MatrixSource(std::shared_ptr<const PredictionMatrix> matrix, const Dataset& dataset)
    : matrix_(std::move(matrix)), row_of_instance_(dataset.size()) {
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    row_of_instance_[i] = matrix_->find(dataset.instance_ids[i]);
  }
}

std::optional<std::vector<double>> MatrixSource::predict(std::size_t instance) const {
  if (instance >= row_of_instance_.size() || !row_of_instance_[instance]) return std::nullopt;
  const auto row = matrix_->row(*row_of_instance_[instance]);
  return std::vector<double>(row.begin(), row.end());
}

std::vector<std::size_t> MatrixSource::covered() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < row_of_instance_.size(); ++i) {
    if (row_of_instance_[i]) out.push_back(i);
  }
  return out;
}

bool Admissibility::admits(std::size_t instance, const Dataset& dataset) const {
  if (allowed && !std::binary_search(allowed->begin(), allowed->end(), instance)) {
    return false;
  }
  if (ranges.empty()) return true;
  if (!dataset.features) {
    throw InvalidArgument("value-range admissibility needs dataset features");
  }
  const Matrix& f = *dataset.features;
  for (const auto& r : ranges) {
    if (r.feature >= static_cast<std::size_t>(f.cols())) {
      throw InvalidArgument("range constraint on feature " + std::to_string(r.feature) +
                            " beyond the dataset's " + std::to_string(f.cols()) + " features");
    }
    const double v = f(static_cast<Eigen::Index>(instance), static_cast<Eigen::Index>(r.feature));
    if (v < r.lower || v > r.upper) return false;
  }
  return true;
}

std::optional<std::vector<double>> Chart::output(std::size_t instance) const {
  auto row = source->predict(instance);
  if (row) (void)FuzzyOutput(vocab, *row);  // validates length and simplex membership
  return row;
}

Chart chart_from_matrix(std::shared_ptr<const PredictionMatrix> matrix, const Dataset& dataset,
                        ChartRole role) {
  auto source = std::make_shared<MatrixSource>(matrix, dataset);
  Admissibility adm;
  adm.allowed = source->covered();
  return Chart{matrix->model_id(), std::move(source), matrix->vocab(), std::move(adm), role};
}

Logifold::Logifold(std::vector<Chart> charts, GlobalLabelSpace global, ThresholdLadder ladder,
                   Dataset dataset, std::optional<Routing> routing)
    : charts_(std::move(charts)),
      global_(std::move(global)),
      ladder_(std::move(ladder)),
      dataset_(std::move(dataset)),
      routing_(std::move(routing)) {
  if (charts_.empty()) throw InvalidArgument("a logifold needs at least one chart");
  std::unordered_set<std::string> ids;
  for (auto& c : charts_) {
    if (!ids.insert(c.id).second) throw InvalidArgument("duplicate chart id \"" + c.id + "\"");
    if (!c.source) throw InvalidArgument("chart \"" + c.id + "\" has no prediction source");
    if (c.source->width() != c.vocab.size()) {
      throw InvalidArgument("chart \"" + c.id + "\" source width differs from its vocabulary");
    }
    if (c.admissibility.allowed) std::sort(c.admissibility.allowed->begin(), c.admissibility.allowed->end());
  }

  if (routing_) {
    filter_ = chart_index(routing_->filter_id);
    Chart& filter = charts_[*filter_];
    filter.role = ChartRole::Filter;
    routed_.resize(filter.vocab.size());
    for (std::size_t c = 0; c < filter.vocab.size(); ++c) {
      auto it = routing_->coarse_to_expert.find(filter.vocab[c]);
      if (it == routing_->coarse_to_expert.end()) {
        throw IncompleteCoarseMap("coarse label \"" + filter.vocab[c] + "\" of filter \"" +
                                  filter.id + "\" has no expert");
      }
      routed_[c] = chart_index(it->second);
      if (routed_[c] == *filter_) throw InvalidArgument("the filter cannot route to itself");
    }
    for (const auto& [coarse, expert] : routing_->coarse_to_expert) {
      if (!filter.vocab.contains(coarse)) {
        throw UnknownLabel("routing names coarse label \"" + coarse + "\" unknown to the filter");
      }
    }
    for (std::size_t e : routed_) charts_[e].role = ChartRole::Expert;
  }

  positions_.resize(charts_.size());
  for (std::size_t k = 0; k < charts_.size(); ++k) {
    if (charts_[k].role == ChartRole::Filter) continue;
    for (const auto& label : charts_[k].vocab.labels()) {
      const auto pos = global_.vocab().find(label);
      if (!pos) {
        throw UnknownLabel("chart \"" + charts_[k].id + "\" label \"" + label +
                           "\" is outside the global label space");
      }
      positions_[k].push_back(*pos);
    }
  }
}

std::size_t Logifold::chart_index(const std::string& id) const {
  for (std::size_t k = 0; k < charts_.size(); ++k) {
    if (charts_[k].id == id) return k;
  }
  throw UnknownChart("no chart with id \"" + id + "\"");
}

FuzzyOutput embed_to_global(const FuzzyOutput& out, const GlobalLabelSpace& global) {
  std::vector<double> probs(global.size(), 0.0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    probs[global.vocab().index_of(out.vocab()[j])] = out[j];
  }
  return FuzzyOutput(global.vocab(), std::move(probs));
}

std::vector<std::size_t> fuzzy_domain(const Chart& chart, const Dataset& dataset,
                                      std::span<const std::size_t> instances, double t) {
  std::vector<std::size_t> out;
  for (std::size_t i : instances) {
    if (!chart.admissibility.admits(i, dataset)) continue;
    const auto row = chart.output(i);
    if (!row) {
      throw MissingPrediction("chart \"" + chart.id + "\" has no prediction for instance " +
                              std::to_string(i));
    }
    if (certainty(*row) > t) out.push_back(i);
  }
  return out;
}

FuzzyOutput CombinedVote::as_fuzzy(const GlobalLabelSpace& global) const {
  return FuzzyOutput(global.vocab(), scores);
}

namespace {

struct Participant {
  std::size_t chart;
  std::vector<double> global;  // embedded (and possibly filter-scaled) output
  double certainty;
};

std::vector<double> embed(const Logifold& lf, std::size_t chart, const std::vector<double>& row,
                          double scale = 1.0) {
  std::vector<double> g(lf.global().size(), 0.0);
  const auto& pos = lf.global_positions(chart);
  for (std::size_t j = 0; j < row.size(); ++j) g[pos[j]] = scale * row[j];
  return g;
}

std::optional<std::vector<double>> admitted_output(const Logifold& lf, std::size_t chart,
                                                   std::size_t instance) {
  const Chart& c = lf.charts()[chart];
  if (!c.admissibility.admits(instance, lf.dataset())) return std::nullopt;
  auto row = c.output(instance);
  if (!row) {
    throw MissingPrediction("chart \"" + c.id + "\" admits instance " + std::to_string(instance) +
                            " but has no prediction for it");
  }
  return row;
}

std::vector<Participant> participants(const Logifold& lf, std::size_t instance) {
  if (instance >= lf.dataset().size()) {
    throw InvalidArgument("instance " + std::to_string(instance) + " outside the dataset");
  }
  std::vector<Participant> out;
  std::optional<std::size_t> routed_expert;
  double filter_certainty = 1.0;
  if (const auto f = lf.filter_index()) {
    if (auto row = admitted_output(lf, *f, instance)) {
      routed_expert = lf.routed_experts()[argmax_lowest(*row)];
      filter_certainty = certainty(*row);
    }
  }
  for (std::size_t k = 0; k < lf.charts().size(); ++k) {
    const ChartRole role = lf.charts()[k].role;
    if (role == ChartRole::Filter) continue;
    double scale = 1.0;
    if (lf.filter_index() && role == ChartRole::Expert) {
      if (routed_expert != k) continue;
      scale = filter_certainty;
    }
    if (auto row = admitted_output(lf, k, instance)) {
      const double cert = scale * certainty(*row);
      out.push_back(Participant{k, embed(lf, k, *row, scale), cert});
    }
  }
  return out;
}

CombinedVote combine(const std::vector<Participant>& all, double t, std::size_t width) {
  CombinedVote vote;
  vote.scores.assign(width, 0.0);
  for (std::size_t p = 0; p < all.size(); ++p) {
    if (all[p].certainty > t) vote.contributors.push_back(p);
  }
  if (vote.contributors.empty()) {
    vote.fell_back = true;
    for (std::size_t p = 0; p < all.size(); ++p) vote.contributors.push_back(p);
  }
  for (std::size_t p : vote.contributors) {
    for (std::size_t j = 0; j < width; ++j) vote.scores[j] += all[p].global[j];
  }
  const double n = static_cast<double>(vote.contributors.size());
  for (double& s : vote.scores) s /= n;
  vote.label = argmax_lowest(vote.scores);
  vote.certainty = vote.scores[vote.label];
  for (std::size_t& p : vote.contributors) p = all[p].chart;
  return vote;
}

// Embedded rows of every non-filter chart that has a prediction, ignoring
// admissibility.
std::vector<std::vector<double>> unrestricted_rows(const Logifold& lf, std::size_t instance) {
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < lf.charts().size(); ++k) {
    if (lf.charts()[k].role == ChartRole::Filter) continue;
    if (auto row = lf.charts()[k].output(instance)) rows.push_back(embed(lf, k, *row));
  }
  if (rows.empty()) {
    throw NoChartCovers("no chart has a prediction for instance " + std::to_string(instance));
  }
  return rows;
}

std::size_t average_label(const std::vector<std::vector<double>>& rows) {
  std::vector<double> mean(rows.front().size(), 0.0);
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) mean[j] += r[j];
  }
  return argmax_lowest(mean);
}

std::size_t majority_label(const std::vector<std::vector<double>>& rows) {
  std::vector<std::size_t> counts(rows.front().size(), 0);
  for (const auto& r : rows) ++counts[argmax_lowest(r)];
  std::size_t best = 0;
  for (std::size_t j = 1; j < counts.size(); ++j) {
    if (counts[j] > counts[best]) best = j;
  }
  return best;
}

}  // namespace

CombinedVote refined_vote(const Logifold& lf, std::size_t instance, double t) {
  const auto all = participants(lf, instance);
  if (all.empty()) {
    throw NoChartCovers("no admissible chart covers instance " + std::to_string(instance));
  }
  return combine(all, t, lf.global().size());
}

std::size_t simple_average(const Logifold& lf, std::size_t instance) {
  return average_label(unrestricted_rows(lf, instance));
}

std::size_t majority_vote(const Logifold& lf, std::size_t instance) {
  return majority_label(unrestricted_rows(lf, instance));
}

std::vector<std::size_t> resolve_truth(const Logifold& lf, const GroundTruth& truth) {
  std::unordered_map<std::string, std::size_t> label_of;
  for (std::size_t i = 0; i < truth.instance_ids.size(); ++i) {
    label_of.emplace(truth.instance_ids[i], lf.global().vocab().index_of(truth.labels[i]));
  }
  std::vector<std::size_t> out;
  out.reserve(lf.dataset().size());
  for (const auto& id : lf.dataset().instance_ids) {
    auto it = label_of.find(id);
    if (it == label_of.end()) throw SchemaError("no ground-truth label for instance \"" + id + "\"");
    out.push_back(it->second);
  }
  return out;
}

EvaluationTable evaluate_table(const Logifold& lf, std::span<const std::size_t> truth) {
  const std::size_t n = lf.dataset().size();
  if (truth.size() != n) throw DimensionMismatch("ground truth does not match the dataset size");
  for (std::size_t y : truth) {
    if (y >= lf.global().size()) throw UnknownLabel("ground-truth label index out of range");
  }
  const auto& ladder = lf.ladder().thresholds();
  const std::size_t levels = ladder.size();

  struct Counts {
    std::vector<std::size_t> refined_correct, certain, certain_correct;
    std::size_t average_correct = 0, majority_correct = 0;
  };
  const std::size_t workers = worker_count();
  std::vector<Counts> partial(workers);
  for (auto& c : partial) {
    c.refined_correct.assign(levels, 0);
    c.certain.assign(levels, 0);
    c.certain_correct.assign(levels, 0);
  }

  parallel_chunks(n, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    Counts& c = partial[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      const auto all = participants(lf, i);
      if (all.empty()) {
        throw NoChartCovers("no admissible chart covers instance " + std::to_string(i));
      }
      for (std::size_t level = 0; level < levels; ++level) {
        const CombinedVote vote = combine(all, ladder[level], lf.global().size());
        const bool correct = vote.label == truth[i];
        c.refined_correct[level] += correct;
        if (!vote.fell_back) {
          ++c.certain[level];
          c.certain_correct[level] += correct;
        }
      }
      const auto rows = unrestricted_rows(lf, i);
      c.average_correct += average_label(rows) == truth[i];
      c.majority_correct += majority_label(rows) == truth[i];
    }
  });

  Counts total{std::vector<std::size_t>(levels, 0), std::vector<std::size_t>(levels, 0),
               std::vector<std::size_t>(levels, 0)};
  for (const auto& c : partial) {
    for (std::size_t l = 0; l < levels; ++l) {
      total.refined_correct[l] += c.refined_correct[l];
      total.certain[l] += c.certain[l];
      total.certain_correct[l] += c.certain_correct[l];
    }
    total.average_correct += c.average_correct;
    total.majority_correct += c.majority_correct;
  }

  const double size = n == 0 ? 1.0 : static_cast<double>(n);
  EvaluationTable table;
  for (std::size_t l = 0; l < levels; ++l) {
    EvaluationRow row;
    row.threshold = ladder[l];
    row.acc_refined = static_cast<double>(total.refined_correct[l]) / size;
    row.n_certain = total.certain[l];
    row.acc_certain = total.certain[l] == 0 ? 0.0
                                            : static_cast<double>(total.certain_correct[l]) /
                                                  static_cast<double>(total.certain[l]);
    table.rows.push_back(row);
  }
  table.simple_average = static_cast<double>(total.average_correct) / size;
  table.majority_vote = static_cast<double>(total.majority_correct) / size;
  return table;
}

void write_table(std::ostream& out, const EvaluationTable& table) {
  char buf[128];
  out << "threshold\tacc_refined\tacc_certain\tn_certain\n";
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof(buf), "%.6f\t%.6f\t%.6f\t%zu\n", r.threshold, r.acc_refined,
                  r.acc_certain, r.n_certain);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "simple_average\t%.6f\nmajority_vote\t%.6f\n",
                table.simple_average, table.majority_vote);
  out << buf;
}

Logifold specialize_routing(const Logifold& lf, const std::string& filter_id,
                            const std::map<std::string, std::string>& coarse_map) {
  return Logifold(lf.charts(), lf.global(), lf.ladder(), lf.dataset(),
                  Routing{filter_id, coarse_map});
}

}  // namespace logifold
