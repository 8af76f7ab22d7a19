#include "logifold/error.hpp"
#include "logifold/theory/family.hpp"
#include "logifold/theory/measure.hpp"
#include "logifold/theory/proof_check.hpp"
#include "logifold/theory/report.hpp"
#include "logifold/theory/search.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace logifold;
using namespace logifold::theory;

namespace {

DyadicRational d(long long num, std::size_t exp) { return DyadicRational(num, exp); }
Rational q(long long a, long long b) { return Rational(a, b); }

// Agreement by summing E_n pieces down to `depth`; the remainder (0, 2^-(depth+1)] is ignored.
Rational truncated_agreement(const StepFunction& g, std::size_t depth) {
  Rational total = 0;
  for (std::size_t n = 0; n <= depth; ++n) {
    const Rational hi = pow2_inv(n), lo = pow2_inv(n + 1);
    const std::uint8_t f = n % 2 == 0 ? 1 : 0;
    // clip each g-interval against E_n
    for (std::size_t j = 0; j < g.interval_count(); ++j) {
      if (g.values()[j] != f) continue;
      const Rational a = std::max(lo, g.lower(j).value()), b = std::min(hi, g.upper(j).value());
      if (b > a) total += b - a;
    }
  }
  return total;
}

// pointwise majority vote with ties to 1
std::uint8_t vote_at(const Family& F, const Rational& x) {
  std::size_t ones = 0;
  for (const auto& f : F.members()) ones += f.at(x);
  return 2 * ones >= F.K() ? 1 : 0;
}

StepFunction random_step(std::mt19937_64& rng, std::size_t max_bp, unsigned grid_depth) {
  const std::size_t top = std::size_t{1} << grid_depth;
  std::uniform_int_distribution<std::size_t> count(0, max_bp), point(1, top - 1), bit(0, 1);
  std::vector<std::size_t> idx;
  const std::size_t k = count(rng);
  while (idx.size() < k) {
    const std::size_t p = point(rng);
    if (std::find(idx.begin(), idx.end(), p) == idx.end()) idx.push_back(p);
  }
  std::sort(idx.begin(), idx.end(), std::greater<>{});
  std::vector<DyadicRational> b;
  for (auto j : idx) b.emplace_back(Integer(j), grid_depth);
  std::vector<std::uint8_t> v(b.size() + 1);
  for (auto& x : v) x = static_cast<std::uint8_t>(bit(rng));
  return StepFunction(std::move(b), std::move(v));
}

}  // namespace

TEST(DyadicRational, CanonicalForm) {
  const auto a = d(6, 4);
  EXPECT_EQ(a.numerator(), 3);
  EXPECT_EQ(a.exponent(), 3u);
  EXPECT_EQ(a.str(), "3/8");
  EXPECT_EQ(d(0, 7).exponent(), 0u);
  EXPECT_EQ(d(4, 2).str(), "1");
  EXPECT_TRUE(d(1, 2) < d(3, 3));
  EXPECT_EQ(d(2, 3), d(1, 2));
  EXPECT_THROW(d(5, 2), OutOfDomain);
  EXPECT_THROW(d(-1, 2), OutOfDomain);
  EXPECT_EQ(DyadicRational::from_rational(q(3, 16)), d(3, 4));
  EXPECT_THROW(DyadicRational::from_rational(q(1, 3)), OutOfDomain);
}

TEST(Decimal, Rounding) {
  EXPECT_EQ(to_decimal(q(5, 6)), "0.833333333333");
  EXPECT_EQ(to_decimal(q(2, 3), 3), "0.667");
  EXPECT_EQ(to_decimal(Rational(1), 2), "1.00");
}

TEST(TargetValue, Examples) {
  EXPECT_EQ(target_value(Rational(1)), 1);
  EXPECT_EQ(target_value(q(1, 2)), 0);
  EXPECT_EQ(target_value(q(3, 16)), 1);  // (1/8, 1/4] = E_2
  EXPECT_EQ(target_value(q(1, 4)), 1);
  EXPECT_EQ(target_value(q(1, 3)), 0);
  EXPECT_EQ(target_value(d(1, 40)), target_level(d(1, 40).value()) % 2 == 0 ? 1 : 0);
  EXPECT_THROW(target_value(Rational(0)), OutOfDomain);
  EXPECT_THROW(target_value(q(3, 2)), OutOfDomain);
}

TEST(TargetValue, LevelMatchesBrackets) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long long> num(1, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    const long long a = num(rng), b = num(rng);
    const Rational x = q(std::min(a, b), std::max(a, b));
    const std::size_t n = target_level(x);
    ASSERT_TRUE(pow2_inv(n + 1) < x && x <= pow2_inv(n));
  }
}

TEST(StepFunction, Invariants) {
  EXPECT_THROW(StepFunction({d(1, 2)}, {1}), InvalidArgument);
  EXPECT_THROW(StepFunction({d(1, 4), d(1, 2)}, {1, 0, 1}), InvalidArgument);
  EXPECT_THROW(StepFunction({d(1, 0)}, {1, 0}), OutOfDomain);
  const StepFunction g({d(1, 1), d(1, 2)}, {1, 1, 0});
  EXPECT_EQ(g.discontinuities(), 1u);
  EXPECT_EQ(g.coalesced(), StepFunction({d(1, 2)}, {1, 0}));
  EXPECT_EQ(g.at(q(1, 2)), 1);
  EXPECT_EQ(g.at(q(1, 4)), 0);
  EXPECT_EQ(g.at(Rational(1)), 1);
}

TEST(VoteProfile, Examples) {
  const auto f = StepFunction::alternating({d(1, 2), d(1, 8)}, 1);
  const auto same = vote_profile(Family({f, f, f}, 2));
  EXPECT_EQ(same.ones_count, (std::vector<std::size_t>{3, 0, 3}));

  const Family two({StepFunction::upper_indicator(d(1, 1)), StepFunction::upper_indicator(d(1, 2))}, 1);
  const auto p = vote_profile(two);
  ASSERT_EQ(p.merged_breakpoints, (std::vector<DyadicRational>{d(1, 1), d(1, 2)}));
  // counts by sampling a point inside each interval
  const Rational inside[] = {q(3, 4), q(3, 8), q(1, 8)};
  for (std::size_t j = 0; j < 3; ++j) {
    std::size_t ones = 0;
    for (const auto& m : two.members()) ones += m.at(inside[j]);
    EXPECT_EQ(p.ones_count[j], ones);
  }
}

TEST(Ensemble, Examples) {
  const auto f = StepFunction::alternating({d(3, 4), d(1, 4)}, 0);
  EXPECT_EQ(ensemble(Family({f}, 2)), f);
  const auto h = StepFunction::upper_indicator(d(1, 1)), k = StepFunction::upper_indicator(d(1, 2));
  EXPECT_EQ(ensemble(Family({h, h, h, k}, 1)), h);
  // two of four: tie goes to 1
  EXPECT_EQ(ensemble(Family({h, h, k, k}, 1)), k);
}

TEST(Consistency, Examples) {
  const auto h = StepFunction::upper_indicator(d(1, 1)), k = StepFunction::upper_indicator(d(1, 2));
  EXPECT_EQ(consistency(Family({h, h, h, h}, 1)), 1);
  EXPECT_EQ(consistency(Family({h, h, h, k}, 1)), q(3, 4));
  EXPECT_EQ(consistency(Family({h, StepFunction::constant(0), k}, 1)), q(2, 3));
}

TEST(AgreementMeasure, ExactValues) {
  EXPECT_EQ(agreement_measure(StepFunction::upper_indicator(d(1, 1))), q(5, 6));
  EXPECT_EQ(agreement_measure(StepFunction::constant(0)), q(1, 3));
  EXPECT_EQ(agreement_measure(StepFunction::constant(1)), q(2, 3));
  EXPECT_EQ(agreement_measure(StepFunction::alternating({d(1, 1), d(1, 2), d(1, 3)}, 1)), q(23, 24));
  EXPECT_EQ(agreement_measure(StepFunction::alternating({d(1, 1), d(1, 2), d(1, 3), d(1, 4), d(1, 5)}, 1)),
            q(95, 96));
}

TEST(AgreementMeasure, TailFormula) {
  for (std::size_t m = 0; m < 12; ++m) {
    const Rational expected = (m % 2 == 0 ? q(2, 3) : q(1, 3)) * pow2_inv(m);
    EXPECT_EQ(target_measure_below(1, pow2_inv(m)), expected) << m;
  }
}

TEST(AgreementMeasure, MatchesTruncatedSums) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const StepFunction g = random_step(rng, 6, 10);
    const Rational exact = agreement_measure(g);
    const Rational approx = truncated_agreement(g, 40);
    ASSERT_LE(exact - approx, pow2_inv(38)) << g.str();
    ASSERT_GE(exact - approx, 0) << g.str();
    ASSERT_GE(exact, 0);
    ASSERT_LE(exact, 1);
    ASSERT_EQ(exact + disagreement_measure(g), 1);
  }
}

TEST(Ensemble, MatchesPointwiseVote) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long long> num(1, 1'000'003);
  for (int fam = 0; fam < 20; ++fam) {
    std::vector<StepFunction> members;
    const std::size_t K = 3 + static_cast<std::size_t>(fam % 5);
    for (std::size_t i = 0; i < K; ++i) members.push_back(random_step(rng, 3, 5));
    const Family F(members, 3);
    const StepFunction g = ensemble(F);
    for (int s = 0; s < 10000; ++s) {
      const Rational x = q(num(rng), 1'000'003);
      ASSERT_EQ(g.at(x), vote_at(F, x));
    }
    // breakpoint values themselves sit in the interval below-right
    for (const auto& b : vote_profile(F).merged_breakpoints) ASSERT_EQ(g.at(b.value()), vote_at(F, b.value()));
  }
}

TEST(DiscontinuityBound, Examples) {
  EXPECT_EQ(discontinuity_bound(4, 2), 3);
  EXPECT_EQ(discontinuity_bound(8, 3), 5);
  EXPECT_EQ(discontinuity_bound(7, 2), 6);
  EXPECT_EQ(discontinuity_bound(5, 1), q(3, 2));
  EXPECT_THROW(discontinuity_bound(3, 1), KTooSmall);
}

TEST(ProofCheck, UnanimousFamily) {
  const auto f = StepFunction::alternating({d(1, 2), d(1, 4)}, 1);
  const ProofReport r = check_proof_quantities(Family({f, f, f, f}, 2));
  EXPECT_TRUE(r.consistent);
  ASSERT_EQ(r.g_jumps.size(), 2u);
  for (const auto& j : r.g_jumps) EXPECT_EQ(j.delta(), 4u);
  EXPECT_EQ(r.delta_check, CheckStatus::Pass);
  EXPECT_EQ(r.variation_check, CheckStatus::Pass);
  EXPECT_EQ(r.discontinuity_check, CheckStatus::Pass);
  EXPECT_EQ(r.total_variation, 8u);
}

TEST(ProofCheck, InconsistentFamilyIsNotApplicable) {
  // top and bottom both win 2 of 4 while the middle loses: g has two jumps but L = 1
  const auto top = StepFunction::upper_indicator(d(1, 1));
  const StepFunction bottom({d(1, 2)}, {0, 1});
  const ProofReport r = check_proof_quantities(Family({top, top, bottom, bottom}, 1));
  EXPECT_FALSE(r.consistent);
  EXPECT_EQ(r.g.discontinuities(), 2u);
  EXPECT_EQ(r.delta_check, CheckStatus::NotApplicable);
  EXPECT_EQ(r.discontinuity_check, CheckStatus::NotApplicable);
  EXPECT_EQ(r.variation_check, CheckStatus::Pass);
  EXPECT_THROW(check_proof_quantities(Family({top, top, top}, 1)), KTooSmall);
}

TEST(ProofCheck, SampledFamiliesHold) {
  std::mt19937_64 rng(5);
  std::size_t consistent = 0;
  for (int i = 0; i < 600; ++i) {
    const FamilySampler sample{4 + static_cast<std::size_t>(i % 5), 1 + static_cast<std::size_t>(i % 3)};
    const ProofReport r = check_proof_quantities(sample(rng));
    ASSERT_TRUE(r.all_applicable_pass());
    consistent += r.consistent;
  }
  EXPECT_GT(consistent, 100u);
}

TEST(FamilySampler, RespectsBudgetAndSeed) {
  std::mt19937_64 a(3), b(3);
  const FamilySampler s{6, 2, 6, 0.5};
  for (int i = 0; i < 50; ++i) {
    const Family fa = s(a), fb = s(b);
    ASSERT_EQ(fa.K(), 6u);
    for (std::size_t m = 0; m < fa.K(); ++m) {
      ASSERT_LE(fa.members()[m].discontinuities(), 2u);
      ASSERT_EQ(fa.members()[m], fb.members()[m]);
    }
  }
}

TEST(Search, ExhaustiveSmall) {
  SearchConfig cfg;
  cfg.depth = 8;
  cfg.mode = SearchMode::Exhaustive;
  const SearchResult r = search_max_agreement(1, 4, cfg);
  EXPECT_EQ(r.agreement, q(5, 6));
  EXPECT_EQ(r.best, StepFunction::upper_indicator(d(1, 1)));
  EXPECT_EQ(r.candidates, exhaustive_candidate_count(8, 1));
}

TEST(Search, ExhaustiveN3) {
  SearchConfig cfg;
  cfg.depth = 8;
  cfg.mode = SearchMode::Exhaustive;
  const SearchResult r = search_max_agreement(3, 4, cfg);
  EXPECT_EQ(r.agreement, q(95, 96));
  EXPECT_EQ(r.best.discontinuities(), 5u);
}

TEST(Search, RandomRestartsFindOptimumDeterministically) {
  SearchConfig cfg;
  cfg.depth = 12;
  cfg.mode = SearchMode::Random;
  cfg.restarts = 16;
  cfg.seed = 4;
  const SearchResult a = search_max_agreement(3, 4, cfg), b = search_max_agreement(3, 4, cfg);
  EXPECT_EQ(a.agreement, q(95, 96));
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.candidates, b.candidates);
}

TEST(Search, BudgetAndGap) {
  SearchConfig cfg;
  cfg.depth = 30;
  cfg.mode = SearchMode::Exhaustive;
  cfg.budget = 1000;
  EXPECT_THROW(search_max_agreement(3, 8, cfg), BudgetExceeded);
  EXPECT_THROW(search_max_agreement(1, 3), KTooSmall);
  for (std::size_t K = 4; K <= 8; ++K) {
    for (std::size_t N = 1; N <= 3; ++N) {
      SearchConfig c;
      c.depth = 10;
      const SearchResult r = search_max_agreement(N, K, c);
      const std::size_t L = floor_rational(discontinuity_bound(K, N));
      EXPECT_LT(r.agreement, 1);
      EXPECT_GE(1 - r.agreement, q(1, 3) * pow2_inv(L + 1)) << K << "," << N;
      EXPECT_LE(r.best.discontinuities(), L);
    }
  }
}

TEST(Snap, NeverDecreasesAgreement) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 400; ++i) {
    const StepFunction g = random_step(rng, 5, 9).coalesced();
    const Rational before = agreement_measure(g);
    for (std::size_t b = 0; b < g.breakpoints().size(); ++b) ASSERT_GE(agreement_measure(snap_breakpoint(g, b)), before);
    const StepFunction s = snap_all(g);
    ASSERT_GE(agreement_measure(s), before);
    ASSERT_LE(s.discontinuities(), g.discontinuities());
    for (const auto& bp : s.breakpoints()) ASSERT_EQ(bp.numerator(), 1) << s.str();
  }
}

TEST(Report, DeterministicAndFlagsStatedConstant) {
  TheoryRunConfig c;
  c.K = 4;
  c.N = 1;
  c.families = 30;
  c.search.mode = SearchMode::Exhaustive;
  const std::string a = theory_report(c), b = theory_report(c);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("agreement: 5/6\n"), std::string::npos);
  EXPECT_NE(a.find("stated_bound: 5/8\n"), std::string::npos);
  EXPECT_NE(a.find("stated_bound_holds: no"), std::string::npos);
  EXPECT_NE(a.find("restated_bound_holds: yes"), std::string::npos);
  c.K = 3;
  EXPECT_THROW(theory_report(c), KTooSmall);
}
