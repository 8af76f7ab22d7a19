#pragma once

#include "logifold/ensemble.hpp"
#include "logifold/mlp.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace acceptance {

struct SyntheticLogifold {
  logifold::Dataset dataset;
  std::vector<std::shared_ptr<const logifold::PredictionMatrix>> charts;
  std::vector<std::string> global;
  std::vector<std::size_t> truth;  // global label index per instance
};

// One strong chart (90% correct, certainty 0.97..0.999 when right) and six
// weak charts (55% correct on average) over 10 classes. Instance difficulty
// couples the weak charts; their mistakes share a per-instance confuser label.
SyntheticLogifold strong_and_weak(std::uint64_t seed, std::size_t instances = 10'000);

// Filter over 3 coarse groups (one-hot) and one expert per group that is
// right on its group with a modest margin and uniform on other groups.
SyntheticLogifold filter_and_experts(std::uint64_t seed, std::size_t per_group = 300);

logifold::MlpSpec random_mlp(const std::vector<std::size_t>& widths, std::uint64_t seed, logifold::Head head);

}  // namespace acceptance
