#include "logifold/theory/report.hpp"

#include "logifold/theory/family.hpp"
#include "logifold/theory/measure.hpp"
#include "logifold/theory/proof_check.hpp"

#include <random>
#include <sstream>

namespace logifold::theory {

FamilySuiteStats run_family_suite(std::size_t K, std::size_t N, std::size_t count, std::uint64_t seed) {
  (void)discontinuity_bound(K, N);
  FamilySuiteStats s;
  std::mt19937_64 rng(seed);
  const FamilySampler sample{K, N};
  for (std::size_t i = 0; i < count; ++i) {
    const ProofReport r = check_proof_quantities(sample(rng));
    ++s.sampled;
    s.consistent += r.consistent;
    if (r.consistency < s.min_consistency) s.min_consistency = r.consistency;
    s.variation_pass += r.variation_check == CheckStatus::Pass;
    s.variation_fail += r.variation_check == CheckStatus::Fail;
    s.delta_pass += r.delta_check == CheckStatus::Pass;
    s.delta_fail += r.delta_check == CheckStatus::Fail;
    s.disc_pass += r.discontinuity_check == CheckStatus::Pass;
    s.disc_fail += r.discontinuity_check == CheckStatus::Fail;
    if (r.consistent) s.max_g_discontinuities = std::max(s.max_g_discontinuities, r.g.discontinuities());
  }
  return s;
}

std::string theory_report(const TheoryRunConfig& c) {
  const Rational L = discontinuity_bound(c.K, c.N);
  const std::size_t floor_L = floor_rational(L);
  const FamilySuiteStats s = run_family_suite(c.K, c.N, c.families, c.search.seed);
  const SearchResult best = search_max_agreement(c.N, c.K, c.search);

  const Rational stated_bound = 1 - 3 * pow2_inv(3 * c.N);
  const Rational restated_bound = 1 - Rational(1, 3) * pow2_inv(floor_L + 1);
  auto yes_no = [](bool b) { return b ? "yes" : "no"; };
  auto pass = [](std::size_t fails) { return fails == 0 ? "pass" : "FAIL"; };

  std::ostringstream out;
  out << "seed: " << c.search.seed << '\n'
      << "K: " << c.K << '\n'
      << "N: " << c.N << '\n'
      << "L: " << to_string(L) << '\n'
      << "floor_L: " << floor_L << '\n'
      << "families_sampled: " << s.sampled << '\n'
      << "families_consistent: " << s.consistent << '\n'
      << "min_consistency: " << to_string(s.min_consistency) << '\n'
      << "max_ensemble_discontinuities: " << s.max_g_discontinuities << '\n'
      << "check_delta: " << pass(s.delta_fail) << " (" << s.delta_pass << " pass, " << s.delta_fail
      << " fail, " << s.sampled - s.delta_pass - s.delta_fail << " n/a)\n"
      << "check_variation: " << pass(s.variation_fail) << " (" << s.variation_pass << " pass, "
      << s.variation_fail << " fail)\n"
      << "check_discontinuities: " << pass(s.disc_fail) << " (" << s.disc_pass << " pass, " << s.disc_fail
      << " fail, " << s.sampled - s.disc_pass - s.disc_fail << " n/a)\n"
      << "search_mode: " << to_string(best.mode_used) << '\n'
      << "search_depth: " << c.search.depth << '\n'
      << "search_candidates: " << best.candidates << '\n'
      << "best_breakpoints:";
  for (const auto& b : best.best.breakpoints()) out << ' ' << b.str();
  out << "\nbest_values:";
  for (auto v : best.best.values()) out << ' ' << static_cast<int>(v);
  out << '\n'
      << "best_discontinuities: " << best.best.discontinuities() << '\n'
      << "agreement: " << to_string(best.agreement) << '\n'
      << "agreement_decimal: " << to_decimal(best.agreement) << '\n'
      << "agreement_below_one: " << yes_no(best.agreement < 1) << '\n'
      << "stated_bound: " << to_string(stated_bound) << '\n'
      << "stated_bound_decimal: " << to_decimal(stated_bound) << '\n'
      << "stated_bound_holds: " << yes_no(best.agreement < stated_bound) << " (informational)\n"
      << "restated_bound: " << to_string(restated_bound) << '\n'
      << "restated_bound_decimal: " << to_decimal(restated_bound) << '\n'
      << "restated_bound_holds: " << yes_no(best.agreement <= restated_bound) << '\n';
  return out.str();
}

}  // namespace logifold::theory
