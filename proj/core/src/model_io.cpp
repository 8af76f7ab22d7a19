#include "logifold/model_io.hpp"

#include "logifold/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace logifold {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

double parse_number(std::string_view field, const std::string& context) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw SchemaError(context + "\"" + std::string(field) + "\" is not a finite decimal number");
  }
  return v;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + path.string());
  return in;
}

// getline that rejects CR so files stay LF-only.
bool next_line(std::istream& in, std::string& line, std::size_t& lineno, const std::string& source) {
  if (!std::getline(in, line)) return false;
  ++lineno;
  if (line.find('\r') != std::string::npos) {
    throw SchemaError(where(source, lineno) + "carriage return found; files must use LF line endings");
  }
  return true;
}

}  // namespace

PredictionMatrix::PredictionMatrix(std::string model_id, Vocabulary vocab,
                                   std::vector<std::string> instance_ids,
                                   std::vector<std::vector<double>> rows)
    : model_id_(std::move(model_id)), vocab_(std::move(vocab)), ids_(std::move(instance_ids)) {
  if (model_id_.empty()) throw SchemaError("prediction matrix needs a model id");
  if (vocab_.empty()) throw SchemaError("prediction matrix \"" + model_id_ + "\" has no labels");
  if (rows.size() != ids_.size()) throw SchemaError("row count does not match instance count");

  const std::size_t k = vocab_.size();
  data_.reserve(rows.size() * k);
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string& id = ids_[i];
    if (id.empty()) throw SchemaError("empty instance id in \"" + model_id_ + "\"");
    if (!index_.emplace(id, i).second) {
      throw DuplicateInstance("instance \"" + id + "\" appears twice in \"" + model_id_ + "\"");
    }
    auto& row = rows[i];
    if (row.size() != k) {
      throw SchemaError("instance \"" + id + "\" has " + std::to_string(row.size()) +
                        " probabilities, expected " + std::to_string(k));
    }
    double sum = 0.0;
    for (double& p : row) {
      if (!std::isfinite(p) || p < -kNegativeTolerance) {
        throw SchemaError("instance \"" + id + "\" has invalid probability " + std::to_string(p));
      }
      p = std::max(p, 0.0);
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw RowSumError("instance \"" + id + "\" probabilities sum to " + std::to_string(sum));
    }
    std::size_t top = 0;
    for (std::size_t j = 0; j < k; ++j) {
      row[j] /= sum;
      if (row[j] > row[top]) top = j;
    }
    // Absorb the rounding residue in the largest entry.
    double rest = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (j != top) rest += row[j];
    }
    row[top] = 1.0 - rest;
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

std::optional<std::size_t> PredictionMatrix::find(std::string_view instance_id) const {
  auto it = index_.find(std::string(instance_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PredictionMatrix parse_predictions(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno, source)) throw SchemaError(source + ": empty prediction file");

  constexpr std::string_view prefix = "# ";
  if (line.rfind(prefix, 0) != 0) {
    throw SchemaError(where(source, 1) + "header must start with \"# model_id=\"");
  }
  std::optional<std::string> model_id;
  std::optional<std::vector<std::string>> labels;
  for (auto token : split(std::string_view(line).substr(prefix.size()), ' ')) {
    if (token.empty()) continue;
    if (token.rfind("model_id=", 0) == 0) {
      model_id = std::string(token.substr(9));
    } else if (token.rfind("labels=", 0) == 0) {
      labels.emplace();
      for (auto l : split(token.substr(7), ',')) {
        if (l.empty()) throw SchemaError(where(source, 1) + "empty label in header");
        labels->emplace_back(l);
      }
    } else {
      throw SchemaError(where(source, 1) + "unknown header field \"" + std::string(token) + "\"");
    }
  }
  if (!model_id || model_id->empty()) throw SchemaError(where(source, 1) + "missing model_id");
  if (!labels) throw SchemaError(where(source, 1) + "missing labels");

  Vocabulary vocab = [&] {
    try {
      return Vocabulary(*labels);
    } catch (const InvalidArgument& e) {
      throw SchemaError(where(source, 1) + e.what());
    }
  }();

  std::vector<std::string> ids;
  std::vector<std::vector<double>> rows;
  while (next_line(in, line, lineno, source)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != vocab.size() + 1) {
      throw SchemaError(where(source, lineno) + "expected " + std::to_string(vocab.size() + 1) +
                        " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(vocab.size());
    for (std::size_t j = 1; j < fields.size(); ++j) {
      row.push_back(parse_number(fields[j], where(source, lineno)));
    }
    ids.emplace_back(fields[0]);
    rows.push_back(std::move(row));
  }
  return PredictionMatrix(std::move(*model_id), std::move(vocab), std::move(ids), std::move(rows));
}

PredictionMatrix load_predictions(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_predictions(in, path.string());
}

std::string format_probability(double p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", p);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

void write_predictions(std::ostream& out, const PredictionMatrix& m) {
  out << "# model_id=" << m.model_id() << " labels=";
  for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m.vocab()[j];
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << m.instance_ids()[i];
    for (double p : m.row(i)) out << ',' << format_probability(p);
    out << '\n';
  }
}

GroundTruth parse_ground_truth(std::istream& in, const std::string& source) {
  GroundTruth truth;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (next_line(in, line, lineno, source)) {
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, ',');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw SchemaError(where(source, lineno) + "expected \"<instance_id>,<label>\"");
    }
    if (!seen.emplace(fields[0]).second) {
      throw DuplicateInstance(where(source, lineno) + "instance \"" + std::string(fields[0]) +
                              "\" appears twice");
    }
    truth.instance_ids.emplace_back(fields[0]);
    truth.labels.emplace_back(fields[1]);
  }
  return truth;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_ground_truth(in, path.string());
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
  for (std::size_t i = 0; i < truth.instance_ids.size(); ++i) {
    out << truth.instance_ids[i] << ',' << truth.labels[i] << '\n';
  }
}

namespace {

using nlohmann::json;

enum class LayerActivation { Identity, ReLU, Sigmoid, Tanh };

LayerActivation parse_activation(const std::string& name, const std::string& context) {
  if (name == "relu") return LayerActivation::ReLU;
  if (name == "sigmoid") return LayerActivation::Sigmoid;
  if (name == "tanh") return LayerActivation::Tanh;
  if (name == "identity" || name == "linear" || name == "none") return LayerActivation::Identity;
  throw UnknownActivation(context + "unknown activation \"" + name + "\"");
}

const json& require(const json& obj, const char* key, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(context + "missing field \"" + key + "\"");
  return *it;
}

}  // namespace

MlpSpec parse_mlp(std::string_view text, const std::string& source) {
  const std::string ctx = source + ": ";
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(ctx + "malformed JSON: " + e.what());
  }
  if (!doc.is_object()) throw SchemaError(ctx + "top level must be an object");

  try {
    const auto input_dim = require(doc, "input_dim", ctx).get<std::int64_t>();
    if (input_dim <= 0) throw SchemaError(ctx + "input_dim must be positive");

    const auto head_name = require(doc, "head", ctx).get<std::string>();
    Head head;
    if (head_name == "index-max") {
      head = Head::IndexMax;
    } else if (head_name == "softmax") {
      head = Head::Softmax;
    } else {
      throw SchemaError(ctx + "unknown head \"" + head_name + "\"");
    }

    const json& layers_json = require(doc, "layers", ctx);
    if (!layers_json.is_array() || layers_json.empty()) {
      throw SchemaError(ctx + "\"layers\" must be a nonempty array");
    }

    std::vector<AffineMap> layers;
    std::optional<LayerActivation> hidden;
    for (std::size_t k = 0; k < layers_json.size(); ++k) {
      const json& layer = layers_json[k];
      const std::string lctx = ctx + "layer " + std::to_string(k) + ": ";
      if (!layer.is_object()) throw SchemaError(lctx + "must be an object");
      const auto rows = require(layer, "weights", lctx).get<std::vector<std::vector<double>>>();
      const auto bias = require(layer, "bias", lctx).get<std::vector<double>>();
      if (rows.size() != bias.size()) {
        throw DimensionChainError(lctx + std::to_string(rows.size()) + " weight rows but " +
                                  std::to_string(bias.size()) + " bias entries");
      }
      for (const auto& r : rows) {
        if (r.size() != rows.front().size()) throw SchemaError(lctx + "ragged weight matrix");
      }
      const std::size_t cols = rows.empty() ? 0 : rows.front().size();
      const std::size_t expected =
          layers.empty() ? static_cast<std::size_t>(input_dim) : layers.back().output_dim();
      if (cols != expected) {
        throw DimensionChainError(lctx + "takes " + std::to_string(cols) + " inputs, expected " +
                                  std::to_string(expected));
      }

      const auto act_it = layer.find("activation");
      const LayerActivation act = act_it == layer.end()
                                      ? LayerActivation::Identity
                                      : parse_activation(act_it->get<std::string>(), lctx);
      const bool last = k + 1 == layers_json.size();
      if (last && act != LayerActivation::Identity) {
        throw SchemaError(lctx + "the output layer must not carry an activation; the head applies");
      }
      if (!last) {
        if (act == LayerActivation::Identity) {
          throw SchemaError(lctx + "hidden layers need an activation");
        }
        if (hidden && *hidden != act) throw SchemaError(lctx + "mixed hidden activations");
        hidden = act;
      }
      try {
        layers.push_back(AffineMap::from_rows(rows, bias));
      } catch (const InvalidArgument& e) {
        throw SchemaError(lctx + e.what());
      }
    }

    Activation activation = Activation::ReLU;
    if (hidden == LayerActivation::Sigmoid) activation = Activation::Sigmoid;
    if (hidden == LayerActivation::Tanh) activation = Activation::Tanh;
    return MlpSpec(std::move(layers), activation, head);
  } catch (const json::exception& e) {
    throw SchemaError(ctx + "wrong field type: " + e.what());
  }
}

MlpSpec load_mlp(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_mlp(buf.str(), path.string());
}

std::string dump_mlp(const MlpSpec& mlp) {
  json doc;
  doc["input_dim"] = mlp.input_dim();
  doc["head"] = std::string(to_string(mlp.head()));
  json layers = json::array();
  for (std::size_t k = 0; k < mlp.layers().size(); ++k) {
    const AffineMap& l = mlp.layers()[k];
    json rows = json::array();
    for (Eigen::Index i = 0; i < l.weights().rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < l.weights().cols(); ++j) row.push_back(l.weights()(i, j));
      rows.push_back(std::move(row));
    }
    json bias = json::array();
    for (Eigen::Index i = 0; i < l.bias().size(); ++i) bias.push_back(l.bias()(i));
    const bool last = k + 1 == mlp.layers().size();
    layers.push_back({{"weights", std::move(rows)},
                      {"bias", std::move(bias)},
                      {"activation", last ? std::string("identity")
                                          : std::string(to_string(mlp.hidden_activation()))}});
  }
  doc["layers"] = std::move(layers);
  return doc.dump(2) + "\n";
}

RoutingSpec parse_routing(std::istream& in, const std::string& source) {
  RoutingSpec spec;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (next_line(in, line, lineno, source)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view key = "# filter=";
      if (line.rfind(key, 0) == 0) spec.filter_id = line.substr(key.size());
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw SchemaError(where(source, lineno) + "expected \"<coarse_label>,<expert_model_id>\"");
    }
    if (!seen.emplace(fields[0]).second) {
      throw SchemaError(where(source, lineno) + "coarse label \"" + std::string(fields[0]) +
                        "\" routed twice");
    }
    spec.coarse_to_expert.emplace_back(std::string(fields[0]), std::string(fields[1]));
  }
  if (spec.filter_id.empty()) throw SchemaError(source + ": missing \"# filter=<model_id>\" line");
  return spec;
}

RoutingSpec load_routing(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_routing(in, path.string());
}

}  // namespace logifold
