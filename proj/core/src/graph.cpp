#include "logifold/graph.hpp"

#include "logifold/error.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace logifold {

namespace {

std::string vertex_name(VertexId v) { return "vertex " + std::to_string(v); }

}  // namespace

Dag::Dag(std::size_t vertex_count, std::vector<Arrow> arrows)
    : arrows_(std::move(arrows)), out_(vertex_count), depth_(vertex_count, 0) {
  if (vertex_count == 0) throw InvalidGraph("graph has no vertices");

  std::vector<std::size_t> indegree(vertex_count, 0);
  for (ArrowId a = 0; a < arrows_.size(); ++a) {
    const Arrow& arrow = arrows_[a];
    if (arrow.source >= vertex_count || arrow.target >= vertex_count) {
      throw InvalidGraph("arrow " + std::to_string(a) + " references a vertex out of range");
    }
    if (arrow.source == arrow.target) {
      throw InvalidGraph("self-loop at " + vertex_name(arrow.source));
    }
    out_[arrow.source].push_back(a);
    ++indegree[arrow.target];
  }

  std::vector<VertexId> sources;
  for (VertexId v = 0; v < vertex_count; ++v) {
    if (indegree[v] == 0) sources.push_back(v);
  }
  if (sources.size() != 1) {
    throw InvalidGraph("graph must have exactly one source vertex, found " +
                       std::to_string(sources.size()));
  }
  source_ = sources.front();

  // Kahn's algorithm; a leftover vertex means a cycle.
  std::deque<VertexId> ready{source_};
  topo_.reserve(vertex_count);
  while (!ready.empty()) {
    const VertexId v = ready.front();
    ready.pop_front();
    topo_.push_back(v);
    for (ArrowId a : out_[v]) {
      const VertexId t = arrows_[a].target;
      depth_[t] = std::max(depth_[t], depth_[v] + 1);
      if (--indegree[t] == 0) ready.push_back(t);
    }
  }
  if (topo_.size() != vertex_count) throw InvalidGraph("graph contains a cycle");
}

LinearLogicalGraph::LinearLogicalGraph(GraphParts parts)
    : dag_(parts.vertex_count, std::move(parts.arrows)),
      deciders_(parts.vertex_count),
      sink_label_(parts.vertex_count),
      arrow_by_key_(parts.vertex_count),
      vocab_(std::move(parts.target_vocab)),
      input_dim_(parts.input_dim) {
  const std::size_t n = parts.vertex_count;

  for (auto& [v, map] : parts.deciders) {
    if (v >= n) throw InvalidGraph("decider attached to nonexistent " + vertex_name(v));
    if (input_dim_ == 0) input_dim_ = map.input_dim();
    if (map.input_dim() != input_dim_) {
      throw InvalidGraph("decider at " + vertex_name(v) + " expects input dimension " +
                         std::to_string(map.input_dim()) + ", graph input dimension is " +
                         std::to_string(input_dim_));
    }
    deciders_[v] = std::move(map);
  }
  for (const auto& [v, label] : parts.sinks) {
    if (v >= n) throw InvalidGraph("sink label on nonexistent " + vertex_name(v));
    if (label >= vocab_.size()) {
      throw InvalidGraph("sink " + vertex_name(v) + " has label index " + std::to_string(label) +
                         " outside the target vocabulary");
    }
    sink_label_[v] = label;
  }

  for (VertexId v = 0; v < n; ++v) {
    const auto out = dag_.out_arrows(v);
    const bool sink = sink_label_[v].has_value();
    if (out.empty() && !sink) {
      throw InvalidGraph(vertex_name(v) + " has no outgoing arrows but is not a labeled sink");
    }
    if (!out.empty() && sink) {
      throw InvalidGraph("sink " + vertex_name(v) + " has outgoing arrows");
    }
    if (sink && deciders_[v]) throw InvalidGraph("sink " + vertex_name(v) + " carries a decider");

    if (out.size() > 1 && !deciders_[v]) {
      throw InvalidGraph(vertex_name(v) + " branches without a decider");
    }
    for (ArrowId a : out) {
      const SignPattern& key = dag_.arrow(a).key;
      if (deciders_[v]) {
        if (key.size() != deciders_[v]->output_dim()) {
          throw InvalidGraph("arrow " + std::to_string(a) + " key \"" + key.str() +
                             "\" does not match decider output dimension at " + vertex_name(v));
        }
        if (!arrow_by_key_[v].emplace(key, a).second) {
          throw InvalidGraph("duplicate sign-pattern key \"" + key.str() + "\" at " +
                             vertex_name(v));
        }
      } else if (!key.empty()) {
        throw InvalidGraph("arrow " + std::to_string(a) + " carries a key but " +
                           vertex_name(v) + " has no decider");
      }
    }
  }
}

ArrowId LinearLogicalGraph::select_arrow(VertexId v, const Vector& x) const {
  const auto out = dag_.out_arrows(v);
  if (!deciders_[v]) return out.front();
  const SignPattern key = SignPattern::of(deciders_[v]->apply(x));
  auto it = arrow_by_key_[v].find(key);
  if (it == arrow_by_key_[v].end()) {
    throw MissingArrow("no arrow for sign pattern \"" + key.str() + "\" at " + vertex_name(v));
  }
  return it->second;
}

std::vector<VertexId> LinearLogicalGraph::trace(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != input_dim_ && input_dim_ != 0) {
    throw DimensionMismatch("input of dimension " + std::to_string(x.size()) +
                            " given to graph expecting " + std::to_string(input_dim_));
  }
  std::vector<VertexId> path{dag_.source()};
  VertexId v = dag_.source();
  while (!sink_label_[v]) {
    v = dag_.arrow(select_arrow(v, x)).target;
    path.push_back(v);
  }
  return path;
}

std::size_t LinearLogicalGraph::evaluate_index(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != input_dim_ && input_dim_ != 0) {
    throw DimensionMismatch("input of dimension " + std::to_string(x.size()) +
                            " given to graph expecting " + std::to_string(input_dim_));
  }
  VertexId v = dag_.source();
  while (!sink_label_[v]) v = dag_.arrow(select_arrow(v, x)).target;
  return *sink_label_[v];
}

GraphParts LinearLogicalGraph::parts() const {
  GraphParts p;
  p.vertex_count = dag_.vertex_count();
  p.arrows = dag_.arrows();
  for (VertexId v = 0; v < p.vertex_count; ++v) {
    if (deciders_[v]) p.deciders.emplace(v, *deciders_[v]);
    if (sink_label_[v]) p.sinks.emplace(v, *sink_label_[v]);
  }
  p.target_vocab = vocab_;
  p.input_dim = input_dim_;
  return p;
}

}  // namespace logifold
