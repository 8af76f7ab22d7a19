#pragma once

#include "logifold/theory/family.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace logifold::theory {

// L = K N / (2 floor(K/4)) - 1. Throws KTooSmall for K < 4.
Rational discontinuity_bound(std::size_t K, std::size_t N);
std::size_t floor_rational(const Rational& r);  // r >= 0

enum class CheckStatus { Pass, Fail, NotApplicable };
std::string to_string(CheckStatus s);

struct Jump {
  DyadicRational at;
  std::size_t above;  // U on the interval just above `at`
  std::size_t below;
  std::size_t delta() const { return above > below ? above - below : below - above; }
};

struct ProofReport {
  std::size_t K = 0;
  std::size_t N = 0;
  Rational consistency;
  bool consistent = false;  // consistency > 3/4
  StepFunction g;
  Rational L;
  std::size_t floor_L = 0;
  std::size_t min_delta_required = 0;  // 2 floor(K/4)
  std::vector<Jump> g_jumps;           // one per discontinuity of g
  std::size_t total_variation = 0;     // sum of |dU| over all merged transitions
  CheckStatus delta_check = CheckStatus::NotApplicable;
  CheckStatus variation_check = CheckStatus::Pass;
  CheckStatus discontinuity_check = CheckStatus::NotApplicable;
  std::vector<Jump> delta_witnesses;  // jumps below the required size

  bool all_applicable_pass() const {
    return delta_check != CheckStatus::Fail && variation_check != CheckStatus::Fail &&
           discontinuity_check != CheckStatus::Fail;
  }
};

ProofReport check_proof_quantities(const Family& F);

}  // namespace logifold::theory
