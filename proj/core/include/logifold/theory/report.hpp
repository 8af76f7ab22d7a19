#pragma once

#include "logifold/theory/search.hpp"

#include <cstddef>
#include <cstdint>
#include <string>

namespace logifold::theory {

struct TheoryRunConfig {
  std::size_t K = 4;
  std::size_t N = 1;
  std::size_t families = 200;  // sampled families for the proof checks
  SearchConfig search;         // search.seed also seeds the family sampler
};

struct FamilySuiteStats {
  std::size_t sampled = 0;
  std::size_t consistent = 0;
  Rational min_consistency = 1;
  std::size_t delta_pass = 0, delta_fail = 0;
  std::size_t variation_pass = 0, variation_fail = 0;
  std::size_t disc_pass = 0, disc_fail = 0;
  std::size_t max_g_discontinuities = 0;
};

FamilySuiteStats run_family_suite(std::size_t K, std::size_t N, std::size_t count, std::uint64_t seed);

// Plain "key: value" lines. Throws KTooSmall for K < 4.
std::string theory_report(const TheoryRunConfig& config);

}  // namespace logifold::theory
