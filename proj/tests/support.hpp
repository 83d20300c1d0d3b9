#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "esrf/streams/schema.hpp"
#include "esrf/streams/stream.hpp"

namespace esrf::test {

inline std::filesystem::path temp_dir(const std::string& name) {
  const char* base = std::getenv("ESRF_TEST_TMP");
  auto dir = std::filesystem::path(base ? base : std::filesystem::temp_directory_path().string()) /
             name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

inline std::shared_ptr<const Schema> numeric_schema(std::size_t attributes, std::size_t classes) {
  std::vector<AttributeSpec> attrs;
  for (std::size_t i = 0; i < attributes; ++i) attrs.push_back(AttributeSpec::numeric("a" + std::to_string(i)));
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < classes; ++c) labels.push_back("c" + std::to_string(c));
  return std::make_shared<const Schema>(std::move(attrs), std::move(labels));
}

// Replays a fixed list of instances.
class VectorStream final : public InstanceStream {
 public:
  VectorStream(Schema schema, std::vector<Instance> items)
      : schema_(std::move(schema)), items_(std::move(items)) {}
  const Schema& schema() const override { return schema_; }
  std::optional<Instance> next() override {
    if (pos_ >= items_.size()) return std::nullopt;
    return items_[pos_++];
  }

 private:
  Schema schema_;
  std::vector<Instance> items_;
  std::size_t pos_ = 0;
};

}  // namespace esrf::test
