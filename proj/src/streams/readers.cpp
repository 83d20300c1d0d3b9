#include "esrf/streams/readers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "esrf/common/errors.hpp"

namespace esrf {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool starts_with_ci(const std::string& s, const std::string& prefix) {
  return lower(s.substr(0, prefix.size())) == prefix;
}

std::optional<double> parse_number(const std::string& token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

bool is_missing(const std::string& token) { return token.empty() || token == "?"; }

std::string unquote(const std::string& token) {
  if (token.size() >= 2 && ((token.front() == '\'' && token.back() == '\'') ||
                            (token.front() == '"' && token.back() == '"'))) {
    return token.substr(1, token.size() - 2);
  }
  return token;
}

// Reads an attribute name, honouring single/double quotes. Returns the rest of the line.
std::string take_name(const std::string& s, std::string& name, std::size_t line) {
  const std::string t = trim(s);
  if (t.empty()) throw ParseError(line, "missing attribute name");
  if (t.front() == '\'' || t.front() == '"') {
    const auto close = t.find(t.front(), 1);
    if (close == std::string::npos) throw ParseError(line, "unterminated quoted name");
    name = t.substr(1, close - 1);
    return t.substr(close + 1);
  }
  const auto space = t.find_first_of(" \t");
  if (space == std::string::npos) throw ParseError(line, "missing attribute type");
  name = t.substr(0, space);
  return t.substr(space);
}

std::vector<std::string> parse_nominal_list(const std::string& type, std::size_t line) {
  const auto close = type.rfind('}');
  if (type.front() != '{' || close == std::string::npos) {
    throw ParseError(line, "malformed nominal value list");
  }
  std::vector<std::string> values;
  for (const auto& field : split_csv_record(type.substr(1, close - 1), line)) {
    values.push_back(unquote(trim(field)));
  }
  if (values.empty() || (values.size() == 1 && values.front().empty())) {
    throw ParseError(line, "empty nominal value list");
  }
  return values;
}

bool next_content_line(std::ifstream& in, std::size_t& line_number, std::string& out) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_number;
    const std::string t = trim(raw);
    if (t.empty() || t.front() == '%') continue;
    out = t;
    return true;
  }
  return false;
}

double encode_field(const AttributeSpec& attr, const std::string& raw, std::size_t attribute,
                    std::size_t line, MissingValueCounter& missing) {
  const std::string token = unquote(trim(raw));
  if (is_missing(token)) {
    missing.record(attribute);
    return 0.0;
  }
  if (attr.is_nominal()) {
    const auto index = attr.value_index(token);
    if (!index) throw UnknownNominalValue(line, token);
    return static_cast<double>(*index);
  }
  const auto value = parse_number(token);
  if (!value) throw ParseError(line, "malformed numeric value '" + token + "'");
  return *value;
}

}  // namespace

std::size_t MissingValueCounter::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

std::vector<std::string> split_csv_record(const std::string& line, std::size_t line_number,
                                          char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"' && trim(current).empty()) {
      in_quotes = true;
      was_quoted = true;
      current.clear();
    } else if (c == delimiter) {
      fields.push_back(was_quoted ? current : trim(current));
      current.clear();
      was_quoted = false;
    } else if (c != '\r') {
      current += c;
    }
  }
  if (in_quotes) throw ParseError(line_number, "unterminated quoted field");
  fields.push_back(was_quoted ? current : trim(current));
  return fields;
}

ArffReader::ArffReader(const std::string& path, std::optional<std::size_t> class_attribute)
    : in_(path) {
  if (!in_) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<AttributeSpec> columns;
  std::string line;
  bool data_seen = false;
  while (next_content_line(in_, line_number_, line)) {
    if (starts_with_ci(line, "@relation")) {
      relation_ = unquote(trim(line.substr(9)));
    } else if (starts_with_ci(line, "@attribute")) {
      std::string name;
      const std::string type = trim(take_name(line.substr(10), name, line_number_));
      if (type.empty()) throw ParseError(line_number_, "missing attribute type");
      if (type.front() == '{') {
        columns.push_back(AttributeSpec::nominal(name, parse_nominal_list(type, line_number_)));
      } else {
        const std::string kind = lower(type);
        if (kind == "numeric" || kind == "real" || kind == "integer") {
          columns.push_back(AttributeSpec::numeric(name));
        } else if (kind.starts_with("string") || kind.starts_with("date") ||
                   kind.starts_with("relational")) {
          throw UnsupportedAttribute("line " + std::to_string(line_number_) + ": attribute '" +
                                     name + "' has unsupported type '" + type + "'");
        } else {
          throw ParseError(line_number_, "unknown attribute type '" + type + "'");
        }
      }
    } else if (starts_with_ci(line, "@data")) {
      data_seen = true;
      break;
    } else {
      throw ParseError(line_number_, "unexpected header line");
    }
  }
  if (!data_seen) throw ParseError(line_number_, "missing @data section");
  if (columns.size() < 2) throw ParseError(line_number_, "need at least one attribute and a class");

  class_column_ = class_attribute.value_or(columns.size() - 1);
  if (class_column_ >= columns.size()) {
    throw std::invalid_argument("class attribute index out of range");
  }
  const AttributeSpec& cls = columns[class_column_];
  if (!cls.is_nominal()) {
    throw UnsupportedAttribute("class attribute '" + cls.name + "' must be nominal");
  }
  std::vector<AttributeSpec> attributes;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i != class_column_) attributes.push_back(columns[i]);
  }
  schema_.emplace(std::move(attributes), cls.values);
  missing_ = MissingValueCounter(schema_->num_attributes());
  for (const auto& c : columns) column_values_.push_back(c.values);
}

std::optional<Instance> ArffReader::next() {
  std::string line;
  if (!next_content_line(in_, line_number_, line)) return std::nullopt;
  if (line.front() == '{') throw ParseError(line_number_, "sparse rows are not supported");
  const auto fields = split_csv_record(line, line_number_);
  const std::size_t columns = schema_->num_attributes() + 1;
  if (fields.size() != columns) {
    throw ParseError(line_number_, "expected " + std::to_string(columns) + " fields, got " +
                                       std::to_string(fields.size()));
  }
  Instance inst;
  inst.values.reserve(schema_->num_attributes());
  std::size_t attribute = 0;
  for (std::size_t col = 0; col < fields.size(); ++col) {
    if (col == class_column_) {
      const std::string token = unquote(trim(fields[col]));
      if (is_missing(token)) throw ParseError(line_number_, "missing class value");
      const auto index = schema_->class_index(token);
      if (!index) throw UnknownNominalValue(line_number_, token);
      inst.class_index = static_cast<int>(*index);
    } else {
      inst.values.push_back(encode_field(schema_->attribute(attribute), fields[col], attribute,
                                         line_number_, missing_));
      ++attribute;
    }
  }
  return inst;
}

CsvReader::CsvReader(const std::string& path, Schema schema, bool has_header)
    : in_(path), schema_(std::move(schema)), missing_(schema_.num_attributes()) {
  if (!in_) throw std::runtime_error("cannot open '" + path + "'");
  if (has_header) {
    std::string header;
    if (std::getline(in_, header)) ++line_number_;
  }
}

std::optional<Instance> CsvReader::next() {
  std::string raw;
  while (std::getline(in_, raw)) {
    ++line_number_;
    if (trim(raw).empty()) continue;
    const auto fields = split_csv_record(raw, line_number_);
    const std::size_t columns = schema_.num_attributes() + 1;
    if (fields.size() != columns) {
      throw ParseError(line_number_, "expected " + std::to_string(columns) + " fields, got " +
                                         std::to_string(fields.size()));
    }
    Instance inst;
    inst.values.reserve(schema_.num_attributes());
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
      inst.values.push_back(
          encode_field(schema_.attribute(i), fields[i], i, line_number_, missing_));
    }
    const std::string& label = fields.back();
    if (is_missing(label)) throw ParseError(line_number_, "missing class value");
    const auto index = schema_.class_index(label);
    if (!index) throw UnknownNominalValue(line_number_, label);
    inst.class_index = static_cast<int>(*index);
    return inst;
  }
  return std::nullopt;
}

Schema infer_csv_schema(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  // Visits every data record; returns the header fields if present.
  auto for_each_record = [&](auto&& visit) {
    in.clear();
    in.seekg(0);
    std::vector<std::string> header;
    std::string raw;
    std::size_t line = 0;
    bool skip = has_header;
    while (std::getline(in, raw)) {
      ++line;
      if (trim(raw).empty()) continue;
      auto fields = split_csv_record(raw, line);
      if (skip) {
        header = std::move(fields);
        skip = false;
        continue;
      }
      visit(fields, line);
    }
    return header;
  };

  std::vector<bool> numeric;
  const auto header = for_each_record([&](const std::vector<std::string>& fields, std::size_t line) {
    if (numeric.empty()) numeric.assign(fields.size(), true);
    if (fields.size() != numeric.size()) {
      throw ParseError(line, "expected " + std::to_string(numeric.size()) + " fields");
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!is_missing(fields[i]) && !parse_number(fields[i])) numeric[i] = false;
    }
  });
  if (numeric.empty() && !header.empty()) numeric.assign(header.size(), true);
  if (numeric.size() < 2) throw ParseError(0, "need at least one attribute and a class");
  numeric.back() = false;

  std::vector<std::vector<std::string>> categories(numeric.size());
  for_each_record([&](const std::vector<std::string>& fields, std::size_t) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (numeric[i] || is_missing(fields[i])) continue;
      auto& cats = categories[i];
      if (std::find(cats.begin(), cats.end(), fields[i]) == cats.end()) cats.push_back(fields[i]);
    }
  });

  std::vector<AttributeSpec> attributes;
  for (std::size_t i = 0; i + 1 < numeric.size(); ++i) {
    std::string name = header.size() == numeric.size() ? header[i] : "att" + std::to_string(i + 1);
    if (numeric[i]) {
      attributes.push_back(AttributeSpec::numeric(std::move(name)));
    } else {
      attributes.push_back(AttributeSpec::nominal(std::move(name), categories[i]));
    }
  }
  return Schema(std::move(attributes), categories.back());
}

std::vector<Instance> read_all(InstanceStream& stream) {
  std::vector<Instance> out;
  while (auto inst = stream.next()) out.push_back(std::move(*inst));
  return out;
}

}  // namespace esrf
