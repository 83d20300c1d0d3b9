#include "esrf/streams/schema.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "esrf/common/errors.hpp"

namespace esrf {

namespace {

template <typename T>
bool all_unique(const std::vector<T>& items) {
  return std::set<T>(items.begin(), items.end()).size() == items.size();
}

std::optional<std::size_t> find_index(const std::vector<std::string>& items,
                                      const std::string& token) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] == token) return i;
  }
  return std::nullopt;
}

}  // namespace

AttributeSpec AttributeSpec::numeric(std::string name) {
  return AttributeSpec{std::move(name), AttributeKind::Numeric, {}};
}

AttributeSpec AttributeSpec::nominal(std::string name, std::vector<std::string> values) {
  return AttributeSpec{std::move(name), AttributeKind::Nominal, std::move(values)};
}

std::optional<std::size_t> AttributeSpec::value_index(const std::string& token) const {
  return find_index(values, token);
}

Schema::Schema(std::vector<AttributeSpec> attributes, std::vector<std::string> class_labels)
    : attributes_(std::move(attributes)), class_labels_(std::move(class_labels)) {
  if (attributes_.empty()) throw std::invalid_argument("schema needs at least one attribute");
  if (class_labels_.size() < 2) throw std::invalid_argument("schema needs at least two labels");
  if (!all_unique(class_labels_)) throw std::invalid_argument("duplicate class label");
  std::vector<std::string> names;
  for (const auto& a : attributes_) {
    names.push_back(a.name);
    if (a.is_nominal() && (a.values.empty() || !all_unique(a.values))) {
      throw std::invalid_argument("nominal attribute '" + a.name +
                                  "' needs a non-empty list of unique values");
    }
    if (!a.is_nominal() && !a.values.empty()) {
      throw std::invalid_argument("numeric attribute '" + a.name + "' cannot declare values");
    }
  }
  if (!all_unique(names)) throw std::invalid_argument("duplicate attribute name");
}

std::optional<std::size_t> Schema::class_index(const std::string& label) const {
  return find_index(class_labels_, label);
}

bool conforms(const Schema& schema, const Instance& instance) noexcept {
  if (instance.values.size() != schema.num_attributes()) return false;
  if (instance.class_index < 0 ||
      static_cast<std::size_t>(instance.class_index) >= schema.num_classes()) {
    return false;
  }
  if (!(instance.weight >= 0.0) || !std::isfinite(instance.weight)) return false;
  for (std::size_t i = 0; i < instance.values.size(); ++i) {
    const double v = instance.values[i];
    const auto& attr = schema.attributes()[i];
    if (attr.is_nominal()) {
      if (v < 0.0 || v != std::floor(v) || v >= static_cast<double>(attr.num_values())) {
        return false;
      }
    } else if (!std::isfinite(v)) {
      return false;
    }
  }
  return true;
}

void validate_instance(const Schema& schema, const Instance& instance) {
  if (!conforms(schema, instance)) throw SchemaMismatch("instance does not conform to schema");
}

}  // namespace esrf
