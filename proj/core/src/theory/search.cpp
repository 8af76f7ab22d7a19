#include "logifold/theory/search.hpp"

#include "logifold/error.hpp"
#include "logifold/parallel.hpp"
#include "logifold/theory/measure.hpp"
#include "logifold/theory/proof_check.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

namespace logifold::theory {

std::string to_string(SearchMode m) {
  switch (m) {
    case SearchMode::Auto: return "auto";
    case SearchMode::Exhaustive: return "exhaustive";
    case SearchMode::Random: return "random";
  }
  return "?";
}

SearchMode parse_search_mode(const std::string& s) {
  if (s == "auto") return SearchMode::Auto;
  if (s == "exhaustive") return SearchMode::Exhaustive;
  if (s == "random") return SearchMode::Random;
  throw InvalidArgument("unknown search mode '" + s + "'");
}

Integer exhaustive_candidate_count(unsigned depth, std::size_t max_discontinuities) {
  Integer total = 0, binom = 1;
  const std::size_t top = std::min<std::size_t>(depth, max_discontinuities);
  for (std::size_t k = 0; k <= top; ++k) {
    total += binom;
    binom = binom * (depth - k) / (k + 1);
  }
  return total * 2;
}

namespace {

// exponents strictly increasing, so breakpoints 2^-e are decreasing
struct Candidate {
  std::vector<unsigned> exponents;
  std::uint8_t first = 0;
  Rational agreement = -1;

  StepFunction function() const {
    std::vector<DyadicRational> b;
    for (auto e : exponents) b.push_back(DyadicRational::pow2_inv(e));
    return StepFunction::alternating(std::move(b), first);
  }
  void score() { agreement = agreement_measure(function()); }
};

// higher agreement wins, then the lexicographically smaller breakpoint list, then smaller first bit
bool better(const Candidate& a, const Candidate& b) {
  if (a.agreement != b.agreement) return a.agreement > b.agreement;
  const bool a_less = std::lexicographical_compare(a.exponents.begin(), a.exponents.end(), b.exponents.begin(),
                                                   b.exponents.end(), std::greater<>{});
  const bool b_less = std::lexicographical_compare(b.exponents.begin(), b.exponents.end(), a.exponents.begin(),
                                                   a.exponents.end(), std::greater<>{});
  if (a_less != b_less) return a_less;
  return a.first < b.first;
}

void enumerate(unsigned depth, std::size_t max_size, Candidate& cur, unsigned next, Candidate& best,
               std::uint64_t& visited) {
  for (std::uint8_t first = 0; first < 2; ++first) {
    cur.first = first;
    cur.score();
    ++visited;
    if (better(cur, best)) best = cur;
  }
  if (cur.exponents.size() == max_size) return;
  for (unsigned e = next; e <= depth; ++e) {
    cur.exponents.push_back(e);
    enumerate(depth, max_size, cur, e + 1, best, visited);
    cur.exponents.pop_back();
  }
}

Candidate climb(Candidate start, unsigned depth, std::size_t max_size, std::uint64_t cap, std::uint64_t& visited) {
  start.score();
  ++visited;
  bool improved = true;
  while (improved && visited < cap) {
    improved = false;
    std::vector<Candidate> moves;
    Candidate flip = start;
    flip.first ^= 1;
    moves.push_back(flip);
    for (unsigned e = 1; e <= depth; ++e) {
      Candidate t = start;
      auto it = std::lower_bound(t.exponents.begin(), t.exponents.end(), e);
      if (it != t.exponents.end() && *it == e) {
        t.exponents.erase(it);
      } else if (t.exponents.size() < max_size) {
        t.exponents.insert(it, e);
      } else {
        continue;
      }
      moves.push_back(std::move(t));
    }
    for (auto& m : moves) {
      if (visited >= cap) break;
      m.score();
      ++visited;
      if (better(m, start)) {
        start = std::move(m);
        improved = true;
        break;
      }
    }
  }
  return start;
}

}  // namespace

SearchResult search_max_agreement(std::size_t N, std::size_t K, const SearchConfig& config) {
  if (N < 1) throw InvalidArgument("search needs N >= 1");
  if (config.depth < 1) throw InvalidArgument("search needs depth >= 1");
  const std::size_t max_disc = floor_rational(discontinuity_bound(K, N));
  const std::size_t max_size = std::min<std::size_t>(max_disc, config.depth);

  SearchResult result;
  result.max_discontinuities = max_disc;
  const Integer count = exhaustive_candidate_count(config.depth, max_disc);
  SearchMode mode = config.mode;
  if (mode == SearchMode::Auto) mode = count <= config.budget ? SearchMode::Exhaustive : SearchMode::Random;
  if (mode == SearchMode::Exhaustive && count > config.budget)
    throw BudgetExceeded("exhaustive search needs " + count.str() + " candidates, budget is " +
                         std::to_string(config.budget));
  result.mode_used = mode;

  Candidate best;
  if (mode == SearchMode::Exhaustive) {
    Candidate cur;
    enumerate(config.depth, max_size, cur, 1, best, result.candidates);
  } else {
    if (config.restarts == 0) throw InvalidArgument("random search needs at least one restart");
    const std::uint64_t cap = std::max<std::uint64_t>(1, config.budget / config.restarts);
    std::vector<Candidate> found(config.restarts);
    std::vector<std::uint64_t> visited(config.restarts, 0);
    parallel_chunks(config.restarts, [&](std::size_t begin, std::size_t end, std::size_t) {
      for (std::size_t r = begin; r < end; ++r) {
        std::seed_seq seq{config.seed, static_cast<std::uint64_t>(r)};
        std::mt19937_64 rng(seq);
        std::vector<unsigned> pool(config.depth);
        for (unsigned e = 0; e < config.depth; ++e) pool[e] = e + 1;
        std::shuffle(pool.begin(), pool.end(), rng);
        Candidate start;
        start.exponents.assign(pool.begin(),
                               pool.begin() + std::uniform_int_distribution<std::size_t>(0, max_size)(rng));
        std::sort(start.exponents.begin(), start.exponents.end());
        start.first = static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 1)(rng));
        found[r] = climb(std::move(start), config.depth, max_size, cap, visited[r]);
      }
    });
    for (std::size_t r = 0; r < found.size(); ++r) {
      result.candidates += visited[r];
      if (better(found[r], best)) best = found[r];
    }
  }
  result.best = best.function();
  result.agreement = best.agreement;
  return result;
}

StepFunction snap_breakpoint(const StepFunction& g, std::size_t i) {
  const auto& bps = g.breakpoints();
  if (i >= bps.size()) throw InvalidArgument("breakpoint index out of range");
  const Rational b = bps[i].value();
  const std::size_t n = target_level(b);
  if (b == pow2_inv(n)) return g;
  const Rational hi = g.upper(i).value(), lo = g.lower(i + 1).value();
  const Rational up = std::min(pow2_inv(n), hi);
  const Rational down = std::max(pow2_inv(n + 1), lo);

  auto moved = [&](const Rational& p) {
    std::vector<DyadicRational> nb = bps;
    std::vector<std::uint8_t> nv = g.values();
    if (p == hi) {
      nb.erase(nb.begin() + static_cast<std::ptrdiff_t>(i));
      nv.erase(nv.begin() + static_cast<std::ptrdiff_t>(i));
    } else if (p == lo) {
      nb.erase(nb.begin() + static_cast<std::ptrdiff_t>(i));
      nv.erase(nv.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    } else {
      nb[i] = DyadicRational::from_rational(p);
    }
    return StepFunction(std::move(nb), std::move(nv));
  };
  StepFunction a = moved(up), c = moved(down);
  return agreement_measure(a) >= agreement_measure(c) ? a : c;
}

StepFunction snap_all(const StepFunction& g) {
  StepFunction cur = g;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < cur.breakpoints().size(); ++i) {
      StepFunction next = snap_breakpoint(cur, i);
      if (!(next == cur)) {
        cur = std::move(next);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

}  // namespace logifold::theory
