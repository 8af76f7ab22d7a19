#include "logifold/fuzzy.hpp"

#include "logifold/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace logifold {

FuzzyOutput::FuzzyOutput(Vocabulary vocab, std::vector<double> probs)
    : vocab_(std::move(vocab)), probs_(std::move(probs)) {
  if (probs_.size() != vocab_.size()) {
    throw InvalidFuzzyOutput("probability vector of length " + std::to_string(probs_.size()) +
                             " for a vocabulary of " + std::to_string(vocab_.size()) + " labels");
  }
  if (probs_.empty()) throw InvalidFuzzyOutput("empty probability vector");
  double sum = 0.0;
  for (double& p : probs_) {
    if (!std::isfinite(p) || p < -kSimplexTolerance) {
      throw InvalidFuzzyOutput("probability entry " + std::to_string(p) + " is not in [0, 1]");
    }
    p = std::max(p, 0.0);
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw InvalidFuzzyOutput("probabilities sum to " + std::to_string(sum));
  }
}

double certainty(std::span<const double> probs) {
  return probs.empty() ? 0.0 : *std::max_element(probs.begin(), probs.end());
}

double certainty(const FuzzyOutput& out) { return certainty(out.probs()); }

std::size_t coordinate_dim(const StateSignature& s) {
  return std::accumulate(s.begin(), s.end(), std::size_t{0});
}

namespace {

std::string sig_str(const StateSignature& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += "S^" + std::to_string(s[i]);
  }
  return out + ")";
}

}  // namespace

FuzzyLinearLogicalGraph::FuzzyLinearLogicalGraph(FuzzyGraphParts parts)
    : dag_(parts.vertex_count, std::move(parts.arrows)),
      deciders_(parts.vertex_count),
      states_(std::move(parts.state_spaces)),
      maps_(std::move(parts.arrow_maps)),
      arrow_by_key_(parts.vertex_count),
      vocab_(std::move(parts.out_vocab)) {
  const std::size_t n = dag_.vertex_count();
  if (states_.size() != n) throw InvalidGraph("one state space per vertex required");
  if (maps_.size() != dag_.arrows().size()) throw InvalidGraph("one arrow map per arrow required");
  if (vocab_.empty()) throw InvalidGraph("output vocabulary is empty");

  for (VertexId v = 0; v < n; ++v) {
    if (states_[v].empty()) throw InvalidGraph("vertex " + std::to_string(v) + " has no state space");
  }
  for (auto& [v, map] : parts.deciders) {
    if (v >= n) throw InvalidGraph("decider attached to nonexistent vertex");
    if (map.input_dim() != coordinate_dim(states_[v])) {
      throw InvalidGraph("decider at vertex " + std::to_string(v) + " does not read state space " +
                         sig_str(states_[v]));
    }
    deciders_[v] = std::move(map);
  }

  const StateSignature sink_state{vocab_.size() - 1};
  for (VertexId v = 0; v < n; ++v) {
    const auto out = dag_.out_arrows(v);
    if (out.empty()) {
      if (states_[v] != sink_state) {
        throw InvalidGraph("sink vertex " + std::to_string(v) + " has state space " +
                           sig_str(states_[v]) + ", expected " + sig_str(sink_state));
      }
      if (deciders_[v]) throw InvalidGraph("sink vertex carries a decider");
      continue;
    }
    if (out.size() > 1 && !deciders_[v]) {
      throw InvalidGraph("vertex " + std::to_string(v) + " branches without a decider");
    }
    for (ArrowId a : out) {
      const Arrow& arrow = dag_.arrow(a);
      if (deciders_[v]) {
        if (arrow.key.size() != deciders_[v]->output_dim() ||
            !arrow_by_key_[v].emplace(arrow.key, a).second) {
          throw InvalidGraph("bad or duplicate sign-pattern key \"" + arrow.key.str() +
                             "\" at vertex " + std::to_string(v));
        }
      } else if (!arrow.key.empty()) {
        throw InvalidGraph("keyed arrow leaves a vertex without a decider");
      }

      const StateSignature& from = states_[arrow.source];
      const StateSignature& to = states_[arrow.target];
      if (std::holds_alternative<IdentityArrowMap>(maps_[a])) {
        if (from != to) {
          throw InvalidGraph("identity arrow " + std::to_string(a) + " between " + sig_str(from) +
                             " and " + sig_str(to));
        }
      } else {
        const AffineMap& l = std::get<SoftmaxArrowMap>(maps_[a]).map;
        if (to.size() != 1 || l.input_dim() != coordinate_dim(from) ||
            l.output_dim() != to.front() + 1) {
          throw InvalidGraph("softmax arrow " + std::to_string(a) + " does not map " +
                             sig_str(from) + " into " + sig_str(to));
        }
      }
    }
  }
}

FuzzyOutput FuzzyLinearLogicalGraph::evaluate(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != input_dim()) {
    throw DimensionMismatch("input of dimension " + std::to_string(x.size()) +
                            " given to fuzzy graph expecting " + std::to_string(input_dim()));
  }
  Vector state = x;
  std::optional<Vector> barycentric;  // exact simplex point after a softmax arrow
  VertexId v = dag_.source();
  while (!dag_.is_terminal(v)) {
    const auto out = dag_.out_arrows(v);
    ArrowId a = out.front();
    if (deciders_[v]) {
      const SignPattern key = SignPattern::of(deciders_[v]->apply(state));
      auto it = arrow_by_key_[v].find(key);
      if (it == arrow_by_key_[v].end()) {
        throw MissingArrow("no arrow for sign pattern \"" + key.str() + "\" at vertex " +
                           std::to_string(v));
      }
      a = it->second;
    }
    if (const auto* sm = std::get_if<SoftmaxArrowMap>(&maps_[a])) {
      Vector p = softmax(sm->map.apply(state));
      state = p.tail(p.size() - 1);
      barycentric = std::move(p);
    }
    v = dag_.arrow(a).target;
  }

  std::vector<double> probs(vocab_.size());
  if (barycentric) {
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = (*barycentric)(static_cast<Eigen::Index>(i));
  } else {
    probs[0] = 1.0 - state.sum();
    for (std::size_t i = 1; i < probs.size(); ++i) probs[i] = state(static_cast<Eigen::Index>(i - 1));
  }
  return FuzzyOutput(vocab_, std::move(probs));
}

}  // namespace logifold
