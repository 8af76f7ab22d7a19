#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace logifold {

// Ordered set of distinct labels. Shares storage between copies, so passing
// vocabularies around by value is cheap.
class Vocabulary {
 public:
  Vocabulary();
  explicit Vocabulary(std::vector<std::string> labels);

  std::size_t size() const { return data_->labels.size(); }
  bool empty() const { return data_->labels.empty(); }
  const std::string& operator[](std::size_t i) const { return data_->labels[i]; }
  const std::vector<std::string>& labels() const { return data_->labels; }

  std::optional<std::size_t> find(std::string_view label) const;
  bool contains(std::string_view label) const { return find(label).has_value(); }
  // Throws UnknownLabel.
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.data_ == b.data_ || a.labels() == b.labels();
  }

 private:
  struct Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

// The label space all charts of a logifold embed into. Never empty.
class GlobalLabelSpace {
 public:
  explicit GlobalLabelSpace(Vocabulary labels);
  explicit GlobalLabelSpace(std::vector<std::string> labels)
      : GlobalLabelSpace(Vocabulary(std::move(labels))) {}

  const Vocabulary& vocab() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

 private:
  Vocabulary labels_;
};

// Ordered union in first-occurrence order.
GlobalLabelSpace union_label_space(std::span<const Vocabulary> vocabs);
GlobalLabelSpace union_label_space(std::span<const std::vector<std::string>> vocabs);

}  // namespace logifold
