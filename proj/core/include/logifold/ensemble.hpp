#pragma once

#include "logifold/affine.hpp"
#include "logifold/fuzzy.hpp"
#include "logifold/model_io.hpp"
#include "logifold/vocabulary.hpp"

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace logifold {

// Logistic function 1 / (1 + e^-x), used to lay out certainty thresholds.
double sigma_threshold(double x);

// Ascending certainty thresholds starting at 0, all below 1.
class ThresholdLadder {
 public:
  explicit ThresholdLadder(std::vector<double> thresholds);

  // {0} followed by sigma(k / 2) for k = 0..20.
  static ThresholdLadder standard();

  const std::vector<double>& thresholds() const { return thresholds_; }
  std::size_t size() const { return thresholds_.size(); }
  double operator[](std::size_t i) const { return thresholds_[i]; }

 private:
  std::vector<double> thresholds_;
};

// The instances a logifold is evaluated on. Features are optional and only
// consulted by value-range admissibility constraints.
struct Dataset {
  std::vector<std::string> instance_ids;
  std::optional<Matrix> features;  // one row per instance

  static Dataset indexed(std::size_t n);
  std::size_t size() const { return instance_ids.size(); }
};

// Where a chart's probability rows come from.
class PredictionSource {
 public:
  virtual ~PredictionSource() = default;
  virtual std::size_t width() const = 0;
  // Row for a dataset instance, or nullopt if the source has no prediction.
  virtual std::optional<std::vector<double>> predict(std::size_t instance) const = 0;
};

// Rows of a prediction matrix aligned to a dataset by instance id.
class MatrixSource final : public PredictionSource {
 public:
  MatrixSource(std::shared_ptr<const PredictionMatrix> matrix, const Dataset& dataset);

  std::size_t width() const override { return matrix_->cols(); }
  std::optional<std::vector<double>> predict(std::size_t instance) const override;
  // Dataset indices that have a row.
  std::vector<std::size_t> covered() const;

 private:
  std::shared_ptr<const PredictionMatrix> matrix_;
  std::vector<std::optional<std::size_t>> row_of_instance_;
};

// An in-memory fuzzy function evaluated on demand, e.g. a compiled fuzzy
// graph applied to dataset features.
class FunctionSource final : public PredictionSource {
 public:
  using Fn = std::function<std::optional<std::vector<double>>(std::size_t)>;
  FunctionSource(std::size_t width, Fn fn) : width_(width), fn_(std::move(fn)) {}

  std::size_t width() const override { return width_; }
  std::optional<std::vector<double>> predict(std::size_t instance) const override {
    return fn_(instance);
  }

 private:
  std::size_t width_;
  Fn fn_;
};

struct RangeConstraint {
  std::size_t feature = 0;
  double lower = 0.0;
  double upper = 0.0;  // inclusive
};

// Input predicate restricting a chart's domain.
struct Admissibility {
  std::optional<std::vector<std::size_t>> allowed;  // dataset indices, sorted ascending
  std::vector<RangeConstraint> ranges;

  bool admits(std::size_t instance, const Dataset& dataset) const;
};

enum class ChartRole { Plain, Expert, Filter };

struct Chart {
  std::string id;
  std::shared_ptr<const PredictionSource> source;
  Vocabulary vocab;
  Admissibility admissibility;
  ChartRole role = ChartRole::Plain;

  // Validated row for an instance; nullopt when uncovered.
  std::optional<std::vector<double>> output(std::size_t instance) const;
};

Chart chart_from_matrix(std::shared_ptr<const PredictionMatrix> matrix, const Dataset& dataset,
                        ChartRole role = ChartRole::Plain);

struct Routing {
  std::string filter_id;
  std::map<std::string, std::string> coarse_to_expert;  // filter label -> expert chart id
};

// Charts over a global label space, combined by refined voting.
class Logifold {
 public:
  Logifold(std::vector<Chart> charts, GlobalLabelSpace global, ThresholdLadder ladder,
           Dataset dataset, std::optional<Routing> routing = std::nullopt);

  const std::vector<Chart>& charts() const { return charts_; }
  const GlobalLabelSpace& global() const { return global_; }
  const ThresholdLadder& ladder() const { return ladder_; }
  const Dataset& dataset() const { return dataset_; }
  const std::optional<Routing>& routing() const { return routing_; }

  std::size_t chart_index(const std::string& id) const;  // throws UnknownChart
  // Position of each chart label inside the global space (empty for filters).
  const std::vector<std::size_t>& global_positions(std::size_t chart) const {
    return positions_[chart];
  }
  std::optional<std::size_t> filter_index() const { return filter_; }
  // Expert chart for each filter label, by filter-vocabulary index.
  const std::vector<std::size_t>& routed_experts() const { return routed_; }

 private:
  std::vector<Chart> charts_;
  GlobalLabelSpace global_;
  ThresholdLadder ladder_;
  Dataset dataset_;
  std::optional<Routing> routing_;
  std::vector<std::vector<std::size_t>> positions_;
  std::optional<std::size_t> filter_;
  std::vector<std::size_t> routed_;
};

// Zero-pads a chart output into the global space.
FuzzyOutput embed_to_global(const FuzzyOutput& out, const GlobalLabelSpace& global);

// Instances whose chart certainty exceeds t (strictly) and that the chart
// admits. Throws MissingPrediction for an admitted instance without a row.
std::vector<std::size_t> fuzzy_domain(const Chart& chart, const Dataset& dataset,
                                      std::span<const std::size_t> instances, double t);

struct CombinedVote {
  std::size_t label = 0;        // global index, lowest on ties
  std::vector<double> scores;   // averaged global vector
  double certainty = 0.0;       // max coordinate of scores
  std::vector<std::size_t> contributors;
  bool fell_back = false;       // no chart was certain enough at t

  // Scores sum to 1 unless a filter scaled the expert outputs.
  FuzzyOutput as_fuzzy(const GlobalLabelSpace& global) const;
};

// Certainty-filtered equal-weight average of globally embedded outputs.
// With routing, only the experts the filter selects join the plain charts,
// each scaled by the filter's certainty; if nobody clears t, every
// admissible participant votes.
CombinedVote refined_vote(const Logifold& lf, std::size_t instance, double t);

// Unrestricted baselines over all non-filter charts with a row for the instance.
std::size_t simple_average(const Logifold& lf, std::size_t instance);
std::size_t majority_vote(const Logifold& lf, std::size_t instance);

struct EvaluationRow {
  double threshold = 0.0;
  double acc_refined = 0.0;
  double acc_certain = 0.0;  // 0 when no instance is certain
  // instances inside some participant's fuzzy domain at this threshold
  std::size_t n_certain = 0;
};

struct EvaluationTable {
  std::vector<EvaluationRow> rows;
  double simple_average = 0.0;
  double majority_vote = 0.0;
};

// truth[i] is the global label index of dataset instance i.
EvaluationTable evaluate_table(const Logifold& lf, std::span<const std::size_t> truth);
// Resolves string labels, throwing UnknownLabel for labels outside the space.
std::vector<std::size_t> resolve_truth(const Logifold& lf, const GroundTruth& truth);

// Tab-separated table:
//   threshold<TAB>acc_refined<TAB>acc_certain<TAB>n_certain
//   ... one row per ladder threshold ...
//   simple_average<TAB><v>
//   majority_vote<TAB><v>
void write_table(std::ostream& out, const EvaluationTable& table);

// Installs filter/expert routing. Throws UnknownChart, IncompleteCoarseMap.
Logifold specialize_routing(const Logifold& lf, const std::string& filter_id,
                            const std::map<std::string, std::string>& coarse_map);

}  // namespace logifold
