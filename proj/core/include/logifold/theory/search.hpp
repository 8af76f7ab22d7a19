#pragma once

#include "logifold/theory/step_function.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace logifold::theory {

enum class SearchMode { Auto, Exhaustive, Random };
std::string to_string(SearchMode m);
SearchMode parse_search_mode(const std::string& s);  // InvalidArgument on unknown names

struct SearchConfig {
  unsigned depth = 8;               // breakpoints drawn from {2^-1, ..., 2^-depth}
  SearchMode mode = SearchMode::Auto;
  std::uint64_t budget = 1'000'000;  // candidate evaluations
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
};

struct SearchResult {
  StepFunction best;
  Rational agreement;
  std::size_t max_discontinuities = 0;  // floor(L)
  SearchMode mode_used = SearchMode::Exhaustive;
  std::uint64_t candidates = 0;
};

// Number of step functions the exhaustive search visits.
Integer exhaustive_candidate_count(unsigned depth, std::size_t max_discontinuities);

// Maximizes agreement over step functions with at most floor(L(K,N)) discontinuities.
// Throws KTooSmall, BudgetExceeded (exhaustive mode over budget), InvalidArgument.
SearchResult search_max_agreement(std::size_t N, std::size_t K, const SearchConfig& config = {});

// Moves breakpoint i to whichever end of its available stretch of E_n scores higher;
// merges with a neighbour when they meet.
StepFunction snap_breakpoint(const StepFunction& g, std::size_t i);
// Snaps until every breakpoint is a power of two.
StepFunction snap_all(const StepFunction& g);

}  // namespace logifold::theory
