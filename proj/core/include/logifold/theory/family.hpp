#pragma once

#include "logifold/theory/step_function.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace logifold::theory {

class Family {
 public:
  // Throws InvalidArgument if empty or a member has more than N discontinuities.
  Family(std::vector<StepFunction> members, std::size_t N);

  const std::vector<StepFunction>& members() const { return members_; }
  std::size_t K() const { return members_.size(); }
  std::size_t N() const { return N_; }

 private:
  std::vector<StepFunction> members_;
  std::size_t N_;
};

struct VoteProfile {
  std::vector<DyadicRational> merged_breakpoints;  // decreasing
  std::vector<std::size_t> ones_count;             // U per merged interval, top first
};

VoteProfile vote_profile(const Family& F);
// 1 where at least half the members vote 1; coalesced.
StepFunction ensemble(const Family& F);
Rational consistency(const Family& F);
Rational consistency(const VoteProfile& profile, std::size_t K);

// Seeded family generator: a shared base function plus a few members that
// shift one base breakpoint or flip a short blip. Breakpoints on the 2^-grid_depth grid.
struct FamilySampler {
  std::size_t K = 4;
  std::size_t N = 1;
  unsigned grid_depth = 6;
  double perturb_probability = 0.3;

  Family operator()(std::mt19937_64& rng) const;
};

}  // namespace logifold::theory
