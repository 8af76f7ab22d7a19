#include "logifold/theory/proof_check.hpp"

#include "logifold/error.hpp"

namespace logifold::theory {

Rational discontinuity_bound(std::size_t K, std::size_t N) {
  if (K < 4) throw KTooSmall("K = " + std::to_string(K) + " leaves floor(K/4) = 0; need K >= 4");
  return Rational(static_cast<long long>(K * N), static_cast<long long>(2 * (K / 4))) - 1;
}

std::size_t floor_rational(const Rational& r) {
  if (r < 0) throw InvalidArgument("floor of negative rational");
  const Integer q = boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
  return q.convert_to<std::size_t>();
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::NotApplicable: return "n/a";
  }
  return "?";
}

ProofReport check_proof_quantities(const Family& F) {
  ProofReport r;
  r.K = F.K();
  r.N = F.N();
  r.L = discontinuity_bound(r.K, r.N);
  r.floor_L = floor_rational(r.L);
  r.min_delta_required = 2 * (r.K / 4);

  const VoteProfile p = vote_profile(F);
  r.consistency = consistency(p, r.K);
  r.consistent = r.consistency > Rational(3, 4);
  r.g = ensemble(F);

  for (std::size_t j = 1; j < p.ones_count.size(); ++j) {
    const std::size_t a = p.ones_count[j - 1], b = p.ones_count[j];
    r.total_variation += a > b ? a - b : b - a;
    const bool ga = 2 * a >= r.K, gb = 2 * b >= r.K;
    if (ga != gb) r.g_jumps.push_back({p.merged_breakpoints[j - 1], a, b});
  }
  r.variation_check = r.total_variation <= r.K * r.N ? CheckStatus::Pass : CheckStatus::Fail;
  if (r.consistent) {
    for (const auto& jump : r.g_jumps)
      if (jump.delta() < r.min_delta_required) r.delta_witnesses.push_back(jump);
    r.delta_check = r.delta_witnesses.empty() ? CheckStatus::Pass : CheckStatus::Fail;
    r.discontinuity_check = r.g.discontinuities() <= r.floor_L ? CheckStatus::Pass : CheckStatus::Fail;
  }
  return r;
}

}  // namespace logifold::theory
