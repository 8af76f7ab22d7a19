#pragma once

#include "logifold/mlp.hpp"
#include "logifold/vocabulary.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace logifold {

// Per-instance probability rows of one model over its own vocabulary.
//
// Wire format (UTF-8, LF):
//   # model_id=<id> labels=<l1,l2,...,lk>
//   <instance_id>,<p1>,...,<pk>
//
// Entries >= -1e-9 are clamped to zero; each row must sum to 1 within 1e-5
// and is then renormalized.
class PredictionMatrix {
 public:
  PredictionMatrix(std::string model_id, Vocabulary vocab, std::vector<std::string> instance_ids,
                   std::vector<std::vector<double>> rows);

  const std::string& model_id() const { return model_id_; }
  const Vocabulary& vocab() const { return vocab_; }
  const std::vector<std::string>& instance_ids() const { return ids_; }
  std::size_t rows() const { return ids_.size(); }
  std::size_t cols() const { return vocab_.size(); }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols(), cols());
  }
  std::optional<std::size_t> find(std::string_view instance_id) const;

 private:
  std::string model_id_;
  Vocabulary vocab_;
  std::vector<std::string> ids_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline constexpr double kRowSumTolerance = 1e-5;
inline constexpr double kNegativeTolerance = 1e-9;

PredictionMatrix parse_predictions(std::istream& in, const std::string& source = "<stream>");
PredictionMatrix load_predictions(const std::filesystem::path& path);
void write_predictions(std::ostream& out, const PredictionMatrix& m);

// Shortest decimal with at most 9 fractional digits.
std::string format_probability(double p);

// Instance labels over the global label space.
//   <instance_id>,<label>      one per line; lines starting with '#' are comments
struct GroundTruth {
  std::vector<std::string> instance_ids;
  std::vector<std::string> labels;
};

GroundTruth parse_ground_truth(std::istream& in, const std::string& source = "<stream>");
GroundTruth load_ground_truth(const std::filesystem::path& path);
void write_ground_truth(std::ostream& out, const GroundTruth& truth);

// Network weights as JSON:
//   {"input_dim": n, "head": "index-max" | "softmax",
//    "layers": [{"weights": [[...], ...], "bias": [...], "activation": "relu"}, ...]}
// Hidden layers share one activation (relu, sigmoid, tanh); the last layer's
// activation is "identity" or omitted.
MlpSpec parse_mlp(std::string_view text, const std::string& source = "<string>");
MlpSpec load_mlp(const std::filesystem::path& path);
std::string dump_mlp(const MlpSpec& mlp);

// Filter/expert wiring:
//   # filter=<model_id>
//   <coarse_label>,<expert_model_id>
struct RoutingSpec {
  std::string filter_id;
  std::vector<std::pair<std::string, std::string>> coarse_to_expert;
};

RoutingSpec parse_routing(std::istream& in, const std::string& source = "<stream>");
RoutingSpec load_routing(const std::filesystem::path& path);

}  // namespace logifold
