#pragma once

#include "logifold/chamber.hpp"
#include "logifold/fuzzy.hpp"
#include "logifold/graph.hpp"
#include "logifold/mlp.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace logifold {

enum class DiscoveryMode {
  Auto,        // Exhaustive when every decider has at most width_cap rows.
  Exhaustive,  // Incremental arrangement enumeration with an LP interior test.
  Sampling,    // Patterns hit by seeded uniform samples from the domain box.
};

std::string_view to_string(DiscoveryMode m);

struct DiscoveryConfig {
  DiscoveryMode mode = DiscoveryMode::Auto;
  std::size_t width_cap = 12;
  std::size_t samples = 100'000;
  std::uint64_t seed = 0;
  // Chambers are realized relative to this domain. Unbounded when empty in
  // exhaustive mode; sampling falls back to [-1, 1]^n.
  std::optional<Box> domain;
  std::size_t max_regions = 1u << 16;
  double interior_tolerance = 1e-9;
};

struct CompileStats {
  DiscoveryMode mode = DiscoveryMode::Auto;
  // realized sign patterns, level 1 first; for crisp graphs a last entry
  // counts the realized logit-difference patterns
  std::vector<std::size_t> chambers_per_level;
  std::size_t vertices = 0;
  std::size_t arrows = 0;
  std::size_t sinks = 0;
};

struct Compilation {
  LinearLogicalGraph graph;
  CompileStats stats;
};

struct FuzzyCompilation {
  FuzzyLinearLogicalGraph graph;
  CompileStats stats;
};

// Builds the linear logical graph of a ReLU network with an index-max head.
// Level-l vertices are the realized sign patterns of hidden layers 1..l, each
// carrying the next layer's pre-activation restricted to its chamber; the
// last level branches on pairwise logit differences and routes to the sink
// of the (lowest-index) maximal logit.
Compilation compile_mlp_detailed(const MlpSpec& mlp, const DiscoveryConfig& config = {});
inline LinearLogicalGraph compile_mlp(const MlpSpec& mlp, const DiscoveryConfig& config = {}) {
  return compile_mlp_detailed(mlp, config).graph;
}

// Softmax-head variant: the last chamber level and the sinks collapse into a
// single sink whose incoming arrows carry SoftMax of the chamber-restricted
// logit map; all other arrows are identities.
FuzzyCompilation compile_mlp_fuzzy_detailed(const MlpSpec& mlp, const DiscoveryConfig& config = {});
inline FuzzyLinearLogicalGraph compile_mlp_fuzzy(const MlpSpec& mlp,
                                                 const DiscoveryConfig& config = {}) {
  return compile_mlp_fuzzy_detailed(mlp, config).graph;
}

// Output labels "0", "1", ... used for compiled graphs.
Vocabulary index_vocabulary(std::size_t n);

// Label index selected by a sign pattern over pairwise differences (l_i - l_j,
// i < j): the smallest i beating every lower index strictly and tying or
// beating every higher one. nullopt for inconsistent patterns.
std::optional<std::size_t> argmax_from_differences(const SignPattern& diffs, std::size_t outputs);

}  // namespace logifold
