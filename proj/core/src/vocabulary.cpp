#include "logifold/vocabulary.hpp"

#include "logifold/error.hpp"

#include <unordered_set>

namespace logifold {

Vocabulary::Vocabulary() : data_(std::make_shared<const Data>()) {}

Vocabulary::Vocabulary(std::vector<std::string> labels) {
  Data d;
  d.index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!d.index.emplace(labels[i], i).second) {
      throw InvalidArgument("duplicate label \"" + labels[i] + "\" in vocabulary");
    }
  }
  d.labels = std::move(labels);
  data_ = std::make_shared<const Data>(std::move(d));
}

std::optional<std::size_t> Vocabulary::find(std::string_view label) const {
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw UnknownLabel("label \"" + std::string(label) + "\" is not in the vocabulary");
}

GlobalLabelSpace::GlobalLabelSpace(Vocabulary labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InvalidArgument("global label space must be nonempty");
}

namespace {

template <class Range, class Labels>
GlobalLabelSpace union_impl(const Range& vocabs, Labels labels_of) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& v : vocabs) {
    for (const auto& label : labels_of(v)) {
      if (seen.insert(label).second) out.push_back(label);
    }
  }
  return GlobalLabelSpace(std::move(out));
}

}  // namespace

GlobalLabelSpace union_label_space(std::span<const Vocabulary> vocabs) {
  return union_impl(vocabs, [](const Vocabulary& v) -> const auto& { return v.labels(); });
}

GlobalLabelSpace union_label_space(std::span<const std::vector<std::string>> vocabs) {
  for (const auto& v : vocabs) (void)Vocabulary(v);  // rejects internal duplicates
  return union_impl(vocabs, [](const std::vector<std::string>& v) -> const auto& { return v; });
}

}  // namespace logifold
