#pragma once

#include "logifold/affine.hpp"
#include "logifold/sign_pattern.hpp"
#include "logifold/vocabulary.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace logifold {

using VertexId = std::size_t;
using ArrowId = std::size_t;

struct Arrow {
  VertexId source = 0;
  VertexId target = 0;
  SignPattern key;  // empty for arrows leaving a vertex without a decider
};

// Directed acyclic multigraph with a single source. Shared by the crisp and
// fuzzy graph types; validates everything that does not depend on labels
// or state spaces.
class Dag {
 public:
  Dag() = default;
  Dag(std::size_t vertex_count, std::vector<Arrow> arrows);

  std::size_t vertex_count() const { return out_.size(); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(ArrowId a) const { return arrows_[a]; }
  std::span<const ArrowId> out_arrows(VertexId v) const { return out_[v]; }
  VertexId source() const { return source_; }
  bool is_terminal(VertexId v) const { return out_[v].empty(); }
  const std::vector<VertexId>& topological_order() const { return topo_; }
  // Longest-path depth from the source.
  const std::vector<std::size_t>& depth() const { return depth_; }

 private:
  std::vector<Arrow> arrows_;
  std::vector<std::vector<ArrowId>> out_;
  std::vector<VertexId> topo_;
  std::vector<std::size_t> depth_;
  VertexId source_ = 0;
};

// Plain description of a crisp graph, as produced by the compiler or a file.
struct GraphParts {
  std::size_t vertex_count = 0;
  std::vector<Arrow> arrows;
  std::map<VertexId, AffineMap> deciders;
  std::map<VertexId, std::size_t> sinks;  // vertex -> index into target_vocab
  Vocabulary target_vocab;
  std::size_t input_dim = 0;
};

// A linear logical graph: deciders at branching vertices whose sign chambers
// select outgoing arrows, and labeled sinks. Immutable once constructed.
class LinearLogicalGraph {
 public:
  // Throws InvalidGraph when any structural invariant fails.
  explicit LinearLogicalGraph(GraphParts parts);

  const Dag& dag() const { return dag_; }
  std::size_t input_dim() const { return input_dim_; }
  const Vocabulary& target_vocab() const { return vocab_; }
  const std::optional<AffineMap>& decider(VertexId v) const { return deciders_[v]; }
  std::optional<std::size_t> sink_label(VertexId v) const { return sink_label_[v]; }

  // Index into target_vocab of the sink reached from x.
  std::size_t evaluate_index(const Vector& x) const;
  const std::string& evaluate(const Vector& x) const { return vocab_[evaluate_index(x)]; }

  // Vertices visited on the way to the sink, source first.
  std::vector<VertexId> trace(const Vector& x) const;

  GraphParts parts() const;

 private:
  ArrowId select_arrow(VertexId v, const Vector& x) const;

  Dag dag_;
  std::vector<std::optional<AffineMap>> deciders_;
  std::vector<std::optional<std::size_t>> sink_label_;
  std::vector<std::unordered_map<SignPattern, ArrowId>> arrow_by_key_;
  Vocabulary vocab_;
  std::size_t input_dim_ = 0;
};

// Evaluates the linear logical function of the graph.
inline const std::string& evaluate_llg(const LinearLogicalGraph& g, const Vector& x) {
  return g.evaluate(x);
}

}  // namespace logifold
