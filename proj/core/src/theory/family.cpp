#include "logifold/theory/family.hpp"

#include "logifold/error.hpp"

#include <algorithm>

namespace logifold::theory {

Family::Family(std::vector<StepFunction> members, std::size_t N) : members_(std::move(members)), N_(N) {
  if (members_.empty()) throw InvalidArgument("family needs at least one member");
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i].discontinuities() > N_)
      throw InvalidArgument("member " + std::to_string(i) + " has " +
                            std::to_string(members_[i].discontinuities()) +
                            " discontinuities, budget is " + std::to_string(N_));
}

VoteProfile vote_profile(const Family& F) {
  VoteProfile p;
  for (const auto& f : F.members())
    p.merged_breakpoints.insert(p.merged_breakpoints.end(), f.breakpoints().begin(), f.breakpoints().end());
  std::sort(p.merged_breakpoints.begin(), p.merged_breakpoints.end(), std::greater<>{});
  p.merged_breakpoints.erase(std::unique(p.merged_breakpoints.begin(), p.merged_breakpoints.end()),
                             p.merged_breakpoints.end());

  p.ones_count.assign(p.merged_breakpoints.size() + 1, 0);
  // sweep each member down the merged list; members are constant on every merged interval
  for (const auto& f : F.members()) {
    std::size_t k = 0;
    const auto& fb = f.breakpoints();
    for (std::size_t j = 0; j < p.ones_count.size(); ++j) {
      if (j > 0 && k < fb.size() && fb[k] == p.merged_breakpoints[j - 1]) ++k;
      p.ones_count[j] += f.values()[k];
    }
  }
  return p;
}

StepFunction ensemble(const Family& F) {
  const VoteProfile p = vote_profile(F);
  std::vector<std::uint8_t> values(p.ones_count.size());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = 2 * p.ones_count[j] >= F.K() ? 1 : 0;
  return StepFunction(p.merged_breakpoints, std::move(values)).coalesced();
}

Rational consistency(const VoteProfile& profile, std::size_t K) {
  std::size_t worst = K;
  for (auto u : profile.ones_count) worst = std::min(worst, std::max(u, K - u));
  return Rational(static_cast<long long>(worst), static_cast<long long>(K));
}

Rational consistency(const Family& F) { return consistency(vote_profile(F), F.K()); }

namespace {

using Bits = std::vector<std::uint8_t>;

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// grid index j stands for j / 2^depth
StepFunction from_grid(std::vector<std::size_t> idx, Bits values, unsigned depth) {
  std::vector<DyadicRational> b;
  for (auto j : idx) b.emplace_back(Integer(j), depth);
  return StepFunction(std::move(b), std::move(values));
}

std::vector<std::size_t> distinct_points(std::mt19937_64& rng, std::size_t count, std::size_t top) {
  std::vector<std::size_t> all(top - 1);
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j + 1;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(count, all.size()));
  std::sort(all.begin(), all.end(), std::greater<>{});
  return all;
}

Bits alternate(std::size_t n, std::uint8_t first) {
  Bits v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = static_cast<std::uint8_t>((first + j) % 2);
  return v;
}

}  // namespace

Family FamilySampler::operator()(std::mt19937_64& rng) const {
  if (K == 0) throw InvalidArgument("family sampler needs K >= 1");
  const std::size_t top = std::size_t{1} << grid_depth;
  const auto first = static_cast<std::uint8_t>(uniform(rng, 0, 1));
  const std::vector<std::size_t> base = distinct_points(rng, uniform(rng, 0, N), top);
  std::bernoulli_distribution perturb(perturb_probability);

  std::vector<StepFunction> members;
  for (std::size_t i = 0; i < K; ++i) {
    std::vector<std::size_t> idx = base;
    Bits values = alternate(base.size() + 1, first);
    if (!perturb(rng)) {
      members.push_back(from_grid(std::move(idx), std::move(values), grid_depth));
      continue;
    }
    const std::size_t kind = uniform(rng, 0, 2);
    if (kind == 0 && !idx.empty()) {
      // shift one breakpoint between its neighbours
      const std::size_t k = uniform(rng, 0, idx.size() - 1);
      const std::size_t hi = k == 0 ? top : idx[k - 1];
      const std::size_t lo = k + 1 == idx.size() ? 0 : idx[k + 1];
      if (hi - lo >= 2) idx[k] = uniform(rng, lo + 1, hi - 1);
      members.push_back(from_grid(std::move(idx), std::move(values), grid_depth));
    } else if (kind == 1 && base.size() + 2 <= N) {
      // flip the values on a short interval (c, a]
      const auto ends = distinct_points(rng, 2, top);
      std::vector<std::size_t> merged = idx;
      for (auto e : ends)
        if (std::find(merged.begin(), merged.end(), e) == merged.end()) merged.push_back(e);
      std::sort(merged.begin(), merged.end(), std::greater<>{});
      Bits v(merged.size() + 1);
      std::size_t k = 0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (j > 0 && k < idx.size() && idx[k] == merged[j - 1]) ++k;
        const std::size_t upper = j == 0 ? top : merged[j - 1];
        const bool inside = upper <= ends[0] && upper > ends[1];
        v[j] = static_cast<std::uint8_t>(values[k] ^ (inside ? 1 : 0));
      }
      members.push_back(from_grid(std::move(merged), std::move(v), grid_depth).coalesced());
    } else {
      auto pts = distinct_points(rng, uniform(rng, 0, N), top);
      const auto f = static_cast<std::uint8_t>(uniform(rng, 0, 1));
      members.push_back(from_grid(pts, alternate(pts.size() + 1, f), grid_depth));
    }
  }
  return Family(std::move(members), N);
}

}  // namespace logifold::theory
