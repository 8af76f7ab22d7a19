#include "logifold/graph_io.hpp"

#include "logifold/error.hpp"

#include <json.hpp>

namespace logifold {

namespace {

using nlohmann::json;

json affine_to_json(const AffineMap& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.weights().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.weights().cols(); ++j) row.push_back(m.weights()(i, j));
    rows.push_back(std::move(row));
  }
  json bias = json::array();
  for (Eigen::Index i = 0; i < m.bias().size(); ++i) bias.push_back(m.bias()(i));
  return {{"weights", std::move(rows)}, {"bias", std::move(bias)}};
}

AffineMap affine_from_json(const json& j, std::size_t input_dim) {
  auto rows = j.at("weights").get<std::vector<std::vector<double>>>();
  auto bias = j.at("bias").get<std::vector<double>>();
  if (rows.empty()) {
    return AffineMap(Matrix(0, static_cast<Eigen::Index>(input_dim)), Vector(0));
  }
  return AffineMap::from_rows(rows, bias);
}

json arrows_to_json(const Dag& dag) {
  json arrows = json::array();
  for (const Arrow& a : dag.arrows()) {
    arrows.push_back({{"from", a.source}, {"to", a.target}, {"key", a.key.str()}});
  }
  return arrows;
}

std::vector<Arrow> arrows_from_json(const json& j) {
  std::vector<Arrow> out;
  for (const auto& a : j) {
    out.push_back(Arrow{a.at("from").get<VertexId>(), a.at("to").get<VertexId>(),
                        SignPattern(a.at("key").get<std::string>())});
  }
  return out;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed graph document: ") + e.what());
  }
}

}  // namespace

std::string dump_graph(const LinearLogicalGraph& g) {
  json doc;
  doc["kind"] = "linear-logical-graph";
  doc["input_dim"] = g.input_dim();
  doc["target_vocab"] = g.target_vocab().labels();
  doc["vertices"] = g.dag().vertex_count();
  doc["source"] = g.dag().source();
  json deciders = json::array();
  json sinks = json::array();
  for (VertexId v = 0; v < g.dag().vertex_count(); ++v) {
    if (const auto& d = g.decider(v)) {
      json entry = affine_to_json(*d);
      entry["vertex"] = v;
      deciders.push_back(std::move(entry));
    }
    if (const auto label = g.sink_label(v)) {
      sinks.push_back({{"vertex", v}, {"label", g.target_vocab()[*label]}});
    }
  }
  doc["deciders"] = std::move(deciders);
  doc["sinks"] = std::move(sinks);
  doc["arrows"] = arrows_to_json(g.dag());
  return doc.dump(1) + "\n";
}

LinearLogicalGraph parse_graph(std::string_view text) {
  return guarded([&] {
    const json doc = json::parse(text);
    if (doc.at("kind") != "linear-logical-graph") throw SchemaError("not a linear logical graph");
    GraphParts parts;
    parts.input_dim = doc.at("input_dim").get<std::size_t>();
    parts.target_vocab = Vocabulary(doc.at("target_vocab").get<std::vector<std::string>>());
    parts.vertex_count = doc.at("vertices").get<std::size_t>();
    for (const auto& d : doc.at("deciders")) {
      parts.deciders.emplace(d.at("vertex").get<VertexId>(), affine_from_json(d, parts.input_dim));
    }
    for (const auto& s : doc.at("sinks")) {
      parts.sinks.emplace(s.at("vertex").get<VertexId>(),
                          parts.target_vocab.index_of(s.at("label").get<std::string>()));
    }
    parts.arrows = arrows_from_json(doc.at("arrows"));
    return LinearLogicalGraph(std::move(parts));
  });
}

std::string dump_fuzzy_graph(const FuzzyLinearLogicalGraph& g) {
  json doc;
  doc["kind"] = "fuzzy-linear-logical-graph";
  doc["out_vocab"] = g.out_vocab().labels();
  doc["vertices"] = g.dag().vertex_count();
  doc["source"] = g.dag().source();
  json states = json::array();
  json deciders = json::array();
  for (VertexId v = 0; v < g.dag().vertex_count(); ++v) {
    states.push_back(g.state_space(v));
    if (const auto& d = g.decider(v)) {
      json entry = affine_to_json(*d);
      entry["vertex"] = v;
      deciders.push_back(std::move(entry));
    }
  }
  doc["state_spaces"] = std::move(states);
  doc["deciders"] = std::move(deciders);
  json arrows = arrows_to_json(g.dag());
  for (ArrowId a = 0; a < arrows.size(); ++a) {
    if (const auto* sm = std::get_if<SoftmaxArrowMap>(&g.arrow_map(a))) {
      arrows[a]["map"] = "softmax";
      arrows[a]["affine"] = affine_to_json(sm->map);
    } else {
      arrows[a]["map"] = "identity";
    }
  }
  doc["arrows"] = std::move(arrows);
  return doc.dump(1) + "\n";
}

FuzzyLinearLogicalGraph parse_fuzzy_graph(std::string_view text) {
  return guarded([&] {
    const json doc = json::parse(text);
    if (doc.at("kind") != "fuzzy-linear-logical-graph") {
      throw SchemaError("not a fuzzy linear logical graph");
    }
    FuzzyGraphParts parts;
    parts.out_vocab = Vocabulary(doc.at("out_vocab").get<std::vector<std::string>>());
    parts.vertex_count = doc.at("vertices").get<std::size_t>();
    parts.state_spaces = doc.at("state_spaces").get<std::vector<StateSignature>>();
    if (parts.state_spaces.size() != parts.vertex_count) {
      throw SchemaError("state_spaces length does not match vertex count");
    }
    for (const auto& d : doc.at("deciders")) {
      const auto v = d.at("vertex").get<VertexId>();
      if (v >= parts.vertex_count) throw SchemaError("decider on nonexistent vertex");
      parts.deciders.emplace(v, affine_from_json(d, coordinate_dim(parts.state_spaces[v])));
    }
    parts.arrows = arrows_from_json(doc.at("arrows"));
    for (const auto& a : doc.at("arrows")) {
      const auto kind = a.at("map").get<std::string>();
      if (kind == "identity") {
        parts.arrow_maps.emplace_back(IdentityArrowMap{});
      } else if (kind == "softmax") {
        parts.arrow_maps.emplace_back(SoftmaxArrowMap{affine_from_json(a.at("affine"), 0)});
      } else {
        throw SchemaError("unknown arrow map \"" + kind + "\"");
      }
    }
    return FuzzyLinearLogicalGraph(std::move(parts));
  });
}

}  // namespace logifold
