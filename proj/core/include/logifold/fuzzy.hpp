#pragma once

#include "logifold/affine.hpp"
#include "logifold/graph.hpp"
#include "logifold/vocabulary.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <variant>
#include <vector>

namespace logifold {

// A probability vector over a vocabulary: a point of the standard simplex.
class FuzzyOutput {
 public:
  // Throws InvalidFuzzyOutput unless probs is nonnegative, sums to 1
  // within 1e-9 and matches the vocabulary length.
  FuzzyOutput(Vocabulary vocab, std::vector<double> probs);

  const Vocabulary& vocab() const { return vocab_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  std::size_t argmax() const { return argmax_lowest(probs_); }
  const std::string& label() const { return vocab_[argmax()]; }

 private:
  Vocabulary vocab_;
  std::vector<double> probs_;
};

inline constexpr double kSimplexTolerance = 1e-9;

// Largest coordinate.
double certainty(const FuzzyOutput& out);
double certainty(std::span<const double> probs);

// Simplex dimensions d_k of a product of simplices; each factor S^d is
// carried in its d affine coordinates (y_1, ..., y_d), y_0 = 1 - sum.
using StateSignature = std::vector<std::size_t>;

std::size_t coordinate_dim(const StateSignature& s);

struct IdentityArrowMap {};
// SoftMax o l into a single-simplex state space.
struct SoftmaxArrowMap {
  AffineMap map;
};
using ArrowMap = std::variant<IdentityArrowMap, SoftmaxArrowMap>;

struct FuzzyGraphParts {
  std::size_t vertex_count = 0;
  std::vector<Arrow> arrows;
  std::map<VertexId, AffineMap> deciders;
  std::vector<StateSignature> state_spaces;  // per vertex
  std::vector<ArrowMap> arrow_maps;          // per arrow
  Vocabulary out_vocab;
};

// Decision DAG whose vertices carry simplex-product state spaces and whose
// arrows carry maps between them. Deciders read the running state.
class FuzzyLinearLogicalGraph {
 public:
  explicit FuzzyLinearLogicalGraph(FuzzyGraphParts parts);

  const Dag& dag() const { return dag_; }
  const Vocabulary& out_vocab() const { return vocab_; }
  std::size_t input_dim() const { return coordinate_dim(states_[dag_.source()]); }
  const StateSignature& state_space(VertexId v) const { return states_[v]; }
  const ArrowMap& arrow_map(ArrowId a) const { return maps_[a]; }
  const std::optional<AffineMap>& decider(VertexId v) const { return deciders_[v]; }

  FuzzyOutput evaluate(const Vector& x) const;

 private:
  Dag dag_;
  std::vector<std::optional<AffineMap>> deciders_;
  std::vector<StateSignature> states_;
  std::vector<ArrowMap> maps_;
  std::vector<std::unordered_map<SignPattern, ArrowId>> arrow_by_key_;
  Vocabulary vocab_;
};

inline FuzzyOutput evaluate_fuzzy(const FuzzyLinearLogicalGraph& g, const Vector& x) {
  return g.evaluate(x);
}

}  // namespace logifold
