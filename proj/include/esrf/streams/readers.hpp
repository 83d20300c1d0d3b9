#pragma once

#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "esrf/streams/stream.hpp"

namespace esrf {

// Splits one CSV record (RFC-4180 quoting, no embedded newlines).
std::vector<std::string> split_csv_record(const std::string& line, std::size_t line_number,
                                          char delimiter = ',');

// Missing values ('?' or an empty field) become 0.0 for numeric and category 0 for nominal;
// every replacement is counted per attribute.
class MissingValueCounter {
 public:
  explicit MissingValueCounter(std::size_t attributes) : counts_(attributes, 0) {}
  void record(std::size_t attribute) { ++counts_.at(attribute); }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  std::size_t total() const noexcept;

 private:
  std::vector<std::size_t> counts_;
};

// Lazily streams an ARFF file. The header is parsed on construction.
class ArffReader final : public InstanceStream {
 public:
  // class_attribute: zero-based index among all declared attributes; default is the last one.
  explicit ArffReader(const std::string& path,
                      std::optional<std::size_t> class_attribute = std::nullopt);

  const Schema& schema() const override { return *schema_; }
  std::optional<Instance> next() override;

  const std::string& relation() const noexcept { return relation_; }
  const MissingValueCounter& missing() const noexcept { return missing_; }

 private:
  std::ifstream in_;
  std::string relation_;
  std::optional<Schema> schema_;
  std::size_t class_column_ = 0;
  std::size_t line_number_ = 0;
  std::vector<std::vector<std::string>> column_values_;  // per declared column; empty if numeric
  MissingValueCounter missing_{1};
};

// Lazily streams a CSV file against a known schema; the class is the last field.
class CsvReader final : public InstanceStream {
 public:
  CsvReader(const std::string& path, Schema schema, bool has_header);

  const Schema& schema() const override { return schema_; }
  std::optional<Instance> next() override;

  const MissingValueCounter& missing() const noexcept { return missing_; }

 private:
  std::ifstream in_;
  Schema schema_;
  std::size_t line_number_ = 0;
  MissingValueCounter missing_;
};

// Builds a schema from a CSV file: columns where every non-missing field parses as a number are
// numeric, the rest nominal with categories in order of first appearance. Last column is the
// class.
Schema infer_csv_schema(const std::string& path, bool has_header);

// Eagerly collects every instance of a finite stream.
std::vector<Instance> read_all(InstanceStream& stream);

}  // namespace esrf
