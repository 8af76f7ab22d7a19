#include "logifold/compile.hpp"

#include "logifold/error.hpp"

#include <deque>
#include <map>
#include <random>

namespace logifold {

std::string_view to_string(DiscoveryMode m) {
  switch (m) {
    case DiscoveryMode::Auto: return "auto";
    case DiscoveryMode::Exhaustive: return "exhaustive";
    case DiscoveryMode::Sampling: return "sampling";
  }
  return "?";
}

Vocabulary index_vocabulary(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return Vocabulary(std::move(labels));
}

std::optional<std::size_t> argmax_from_differences(const SignPattern& diffs, std::size_t outputs) {
  if (diffs.size() != outputs * (outputs - 1) / 2) {
    throw DimensionMismatch("difference pattern length does not match output count");
  }
  // Row index of the pair (i, j), i < j, in lexicographic order.
  auto row = [outputs](std::size_t i, std::size_t j) {
    return i * outputs - i * (i + 1) / 2 + (j - i - 1);
  };
  for (std::size_t i = 0; i < outputs; ++i) {
    bool wins = true;
    for (std::size_t j = 0; j < i && wins; ++j) wins = !diffs.nonnegative(row(j, i));
    for (std::size_t j = i + 1; j < outputs && wins; ++j) wins = diffs.nonnegative(row(i, j));
    if (wins) return i;
  }
  return std::nullopt;
}

namespace {

// A chamber under construction: the affine map read at this vertex
// (restricted to the chamber) plus what is needed to discover its children.
struct Node {
  VertexId vertex;
  std::size_t level;  // number of hidden layers already fixed
  AffineMap map;      // pre-activation of the next layer, or logits when level == hidden
  ChamberConstraints chamber;
  std::vector<std::size_t> samples;
};

struct Child {
  SignPattern pattern;
  ChamberConstraints chamber;
  std::vector<std::size_t> samples;
};

class ChamberBuilder {
 public:
  ChamberBuilder(const MlpSpec& mlp, const DiscoveryConfig& config)
      : mlp_(mlp), config_(config), hidden_(mlp.layers().size() - 1) {
    if (mlp.hidden_activation() != Activation::ReLU && hidden_ > 0) {
      throw NonReLUActivation("compilation requires ReLU hidden activations, network uses " +
                              std::string(to_string(mlp.hidden_activation())));
    }
    if (config.domain && config.domain->dim() != mlp.input_dim()) {
      throw DimensionMismatch("discovery domain dimension does not match network input");
    }
    mode_ = config.mode;
    if (mode_ == DiscoveryMode::Auto) {
      std::size_t widest = 0;
      for (std::size_t k = 0; k < hidden_; ++k) widest = std::max(widest, mlp.layers()[k].output_dim());
      const std::size_t out = mlp.output_dim();
      widest = std::max(widest, out * (out - 1) / 2);
      mode_ = widest <= config.width_cap ? DiscoveryMode::Exhaustive : DiscoveryMode::Sampling;
    }
    if (mode_ == DiscoveryMode::Sampling) draw_samples();
    stats_.mode = mode_;
    stats_.chambers_per_level.assign(hidden_ + 1, 0);
  }

  std::size_t hidden() const { return hidden_; }
  CompileStats& stats() { return stats_; }

  Node root() const {
    Node n{0, 0, mlp_.layers().front(), ChamberConstraints(mlp_.input_dim()), {}};
    n.samples.resize(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) n.samples[i] = i;
    return n;
  }

  // Map read by the vertex one level below `node` on chamber `pattern`.
  AffineMap child_map(const Node& node, const SignPattern& pattern) const {
    std::vector<bool> keep(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i) keep[i] = pattern.nonnegative(i);
    return mlp_.layers()[node.level + 1].compose(node.map.mask_rows(keep));
  }

  // Realized sign patterns of `decider` inside the node's chamber.
  std::vector<Child> discover(const Node& node, const AffineMap& decider) {
    std::vector<Child> out;
    if (mode_ == DiscoveryMode::Sampling) {
      std::map<SignPattern, std::size_t> index;
      for (std::size_t s : node.samples) {
        SignPattern p = SignPattern::of(decider.apply(samples_[s]));
        auto [it, fresh] = index.emplace(p, out.size());
        if (fresh) {
          out.push_back(Child{std::move(p), ChamberConstraints(mlp_.input_dim()), {}});
          charge(1);
        }
        out[it->second].samples.push_back(s);
      }
      return out;
    }

    // Incremental arrangement: split surviving partial chambers one row at a time.
    std::vector<Child> partial{Child{SignPattern(), node.chamber, {}}};
    for (std::size_t row = 0; row < decider.output_dim(); ++row) {
      const auto r = static_cast<Eigen::Index>(row);
      const Vector normal = decider.weights().row(r).transpose();
      const double offset = decider.bias()(r);
      std::vector<Child> next;
      for (const Child& c : partial) {
        for (Sign s : {Sign::NonNegative, Sign::Negative}) {
          Child grown = c;
          grown.pattern.push_back(s);
          grown.chamber.add_row(normal, offset, s);
          if (grown.chamber.has_interior(config_.domain, config_.interior_tolerance)) {
            next.push_back(std::move(grown));
          }
        }
      }
      if (next.size() > config_.max_regions) {
        throw RegionBudgetExceeded("more than " + std::to_string(config_.max_regions) +
                                   " partial chambers at a single vertex");
      }
      partial = std::move(next);
    }
    charge(partial.size());
    return partial;
  }

 private:
  void charge(std::size_t n) {
    regions_ += n;
    if (regions_ > config_.max_regions) {
      throw RegionBudgetExceeded("discovered chambers exceed the cap of " +
                                 std::to_string(config_.max_regions));
    }
  }

  void draw_samples() {
    const Box box = config_.domain ? *config_.domain : Box::cube(mlp_.input_dim(), -1.0, 1.0);
    std::mt19937_64 rng(config_.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    samples_.reserve(config_.samples);
    for (std::size_t s = 0; s < config_.samples; ++s) {
      Vector x(box.lower.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        x(i) = box.lower(i) + (box.upper(i) - box.lower(i)) * unit(rng);
      }
      samples_.push_back(std::move(x));
    }
  }

  const MlpSpec& mlp_;
  const DiscoveryConfig& config_;
  std::size_t hidden_;
  DiscoveryMode mode_;
  std::vector<Vector> samples_;
  std::size_t regions_ = 0;
  CompileStats stats_;
};

}  // namespace

Compilation compile_mlp_detailed(const MlpSpec& mlp, const DiscoveryConfig& config) {
  if (mlp.head() != Head::IndexMax) {
    throw InvalidArgument("compile_mlp expects an index-max head; use compile_mlp_fuzzy for softmax");
  }
  ChamberBuilder builder(mlp, config);
  const std::size_t outputs = mlp.output_dim();

  GraphParts parts;
  parts.target_vocab = index_vocabulary(outputs);
  parts.input_dim = mlp.input_dim();
  parts.vertex_count = 1;
  std::map<std::size_t, VertexId> sink_of_label;

  auto sink = [&](std::size_t label) {
    auto [it, fresh] = sink_of_label.emplace(label, parts.vertex_count);
    if (fresh) {
      parts.sinks.emplace(parts.vertex_count, label);
      ++parts.vertex_count;
    }
    return it->second;
  };

  std::deque<Node> queue;
  queue.push_back(builder.root());
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();

    if (node.level < builder.hidden()) {
      const AffineMap decider = node.map;
      auto children = builder.discover(node, decider);
      builder.stats().chambers_per_level[node.level] += children.size();
      for (auto& c : children) {
        const VertexId v = parts.vertex_count++;
        parts.arrows.push_back(Arrow{node.vertex, v, c.pattern});
        queue.push_back(Node{v, node.level + 1, builder.child_map(node, c.pattern),
                             std::move(c.chamber), std::move(c.samples)});
      }
      parts.deciders.emplace(node.vertex, decider);
      continue;
    }

    // Last level: node.map is the chamber-restricted logit map.
    if (outputs == 1) {
      builder.stats().chambers_per_level[node.level] += 1;
      parts.arrows.push_back(Arrow{node.vertex, sink(0), SignPattern()});
      continue;
    }
    const AffineMap decider = node.map.pairwise_differences();
    auto children = builder.discover(node, decider);
    builder.stats().chambers_per_level[node.level] += children.size();
    for (const auto& c : children) {
      const auto label = argmax_from_differences(c.pattern, outputs);
      if (!label) {
        throw InvalidGraph("realized logit-difference pattern \"" + c.pattern.str() +
                           "\" has no consistent maximum");
      }
      parts.arrows.push_back(Arrow{node.vertex, sink(*label), c.pattern});
    }
    parts.deciders.emplace(node.vertex, decider);
  }

  CompileStats stats = builder.stats();
  stats.vertices = parts.vertex_count;
  stats.arrows = parts.arrows.size();
  stats.sinks = parts.sinks.size();
  return Compilation{LinearLogicalGraph(std::move(parts)), std::move(stats)};
}

FuzzyCompilation compile_mlp_fuzzy_detailed(const MlpSpec& mlp, const DiscoveryConfig& config) {
  if (mlp.head() != Head::Softmax) {
    throw InvalidArgument("compile_mlp_fuzzy expects a softmax head");
  }
  ChamberBuilder builder(mlp, config);
  const std::size_t outputs = mlp.output_dim();
  const StateSignature hidden_state(mlp.input_dim(), 1);  // (S^1)^n

  FuzzyGraphParts parts;
  parts.out_vocab = index_vocabulary(outputs);
  parts.vertex_count = 1;
  parts.state_spaces.push_back(hidden_state);
  const VertexId target = [&] {
    parts.state_spaces.push_back(StateSignature{outputs - 1});
    return parts.vertex_count++;
  }();

  std::deque<Node> queue;
  queue.push_back(builder.root());
  if (builder.hidden() == 0) {
    // No hidden layer: a single softmax arrow from the source to the target.
    builder.stats().chambers_per_level[0] = 1;
    parts.arrows.push_back(Arrow{0, target, SignPattern()});
    parts.arrow_maps.push_back(SoftmaxArrowMap{mlp.layers().front()});
    queue.clear();
  }

  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    const AffineMap decider = node.map;
    auto children = builder.discover(node, decider);
    builder.stats().chambers_per_level[node.level] += children.size();
    const bool into_target = node.level + 1 == builder.hidden();
    for (auto& c : children) {
      AffineMap restricted = builder.child_map(node, c.pattern);
      if (into_target) {
        parts.arrows.push_back(Arrow{node.vertex, target, c.pattern});
        parts.arrow_maps.push_back(SoftmaxArrowMap{std::move(restricted)});
        continue;
      }
      const VertexId v = parts.vertex_count++;
      parts.state_spaces.push_back(hidden_state);
      parts.arrows.push_back(Arrow{node.vertex, v, c.pattern});
      parts.arrow_maps.push_back(IdentityArrowMap{});
      queue.push_back(Node{v, node.level + 1, std::move(restricted), std::move(c.chamber),
                           std::move(c.samples)});
    }
    parts.deciders.emplace(node.vertex, decider);
  }

  CompileStats stats = builder.stats();
  stats.chambers_per_level.resize(std::max<std::size_t>(builder.hidden(), 1));
  stats.vertices = parts.vertex_count;
  stats.arrows = parts.arrows.size();
  stats.sinks = 1;
  return FuzzyCompilation{FuzzyLinearLogicalGraph(std::move(parts)), std::move(stats)};
}

}  // namespace logifold
