#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace esrf {

enum class AttributeKind { Numeric, Nominal };

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::Numeric;
  std::vector<std::string> values;  // nominal categories; empty for numeric

  static AttributeSpec numeric(std::string name);
  static AttributeSpec nominal(std::string name, std::vector<std::string> values);

  bool is_nominal() const noexcept { return kind == AttributeKind::Nominal; }
  std::size_t num_values() const noexcept { return values.size(); }
  std::optional<std::size_t> value_index(const std::string& token) const;

  bool operator==(const AttributeSpec&) const = default;
};

// Validated on construction: >= 1 attribute, >= 2 labels, unique attribute names,
// non-empty unique nominal value lists.
class Schema {
 public:
  Schema(std::vector<AttributeSpec> attributes, std::vector<std::string> class_labels);

  const std::vector<AttributeSpec>& attributes() const noexcept { return attributes_; }
  const AttributeSpec& attribute(std::size_t i) const { return attributes_.at(i); }
  const std::vector<std::string>& class_labels() const noexcept { return class_labels_; }
  std::size_t num_attributes() const noexcept { return attributes_.size(); }
  std::size_t num_classes() const noexcept { return class_labels_.size(); }
  std::optional<std::size_t> class_index(const std::string& label) const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<AttributeSpec> attributes_;
  std::vector<std::string> class_labels_;
};

// Nominal values are stored as their category index.
struct Instance {
  std::vector<double> values;
  int class_index = 0;
  double weight = 1.0;

  bool operator==(const Instance&) const = default;
};

// Throws SchemaMismatch if the instance violates the schema.
void validate_instance(const Schema& schema, const Instance& instance);
bool conforms(const Schema& schema, const Instance& instance) noexcept;

}  // namespace esrf
