#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "esrf/common/rng.hpp"
#include "esrf/streams/stream.hpp"

namespace esrf {

enum class GeneratorKind { Sea, Agrawal, Led, Rtg, Rbf, Hyperplane };

std::string to_string(GeneratorKind kind);
GeneratorKind generator_kind_from_string(const std::string& name);

struct SeaParams {
  int function = 1;  // 1..4, thresholds 8, 9, 7, 9.5
  double noise = 0.10;
};

struct AgrawalParams {
  int function = 1;  // 1..10
  double perturbation = 0.05;
};

struct LedParams {
  double noise = 0.10;
  int drift_attributes = 0;  // relevant segments swapped with irrelevant positions, 0..7
};

struct RtgParams {
  int num_nominal = 5;
  int num_numeric = 5;
  int values_per_nominal = 5;
  int num_classes = 2;
  int max_depth = 5;
  int first_leaf_level = 3;
  double leaf_fraction = 0.15;
};

struct RbfParams {
  int num_centroids = 50;
  int num_drift_centroids = 50;
  int num_attributes = 10;
  int num_classes = 5;
  double speed = 0.0;  // centroid displacement per instance
};

struct HyperplaneParams {
  int num_attributes = 10;
  int num_drift_attributes = 10;
  double magnitude = 0.001;
  double noise = 0.05;
  double sigma = 0.10;  // per-instance probability of reversing a weight's drift direction
};

// A seeded synthetic concept. Identical (kind, parameters, seed) give identical sequences.
class Generator : public InstanceStream {
 public:
  const Schema& schema() const override { return schema_; }
  std::optional<Instance> next() override { return synth_next(); }

  Instance synth_next();
  std::uint64_t instances_emitted() const noexcept { return counter_; }
  virtual GeneratorKind kind() const noexcept = 0;

 protected:
  Generator(Schema schema, std::uint64_t seed) : schema_(std::move(schema)), rng_(seed) {}
  virtual Instance generate() = 0;

  Schema schema_;
  Rng rng_;

 private:
  std::uint64_t counter_ = 0;
};

class SeaGenerator final : public Generator {
 public:
  SeaGenerator(SeaParams params, std::uint64_t seed);
  GeneratorKind kind() const noexcept override { return GeneratorKind::Sea; }
  double threshold() const noexcept;
  // Label of a noise-free example; sums at or below the threshold fall in class 0.
  static int classify(double threshold, double a1, double a2) noexcept {
    return a1 + a2 <= threshold ? 0 : 1;
  }

 private:
  Instance generate() override;
  SeaParams params_;
};

struct AgrawalRecord {
  double salary, commission, age;
  int elevel, car, zipcode;  // car and zipcode are 0-based category indices
  double hvalue, hyears, loan;
};

class AgrawalGenerator final : public Generator {
 public:
  AgrawalGenerator(AgrawalParams params, std::uint64_t seed);
  GeneratorKind kind() const noexcept override { return GeneratorKind::Agrawal; }
  static int classify(int function, const AgrawalRecord& r);

 private:
  Instance generate() override;
  AgrawalParams params_;
};

class LedGenerator final : public Generator {
 public:
  static constexpr int kRelevant = 7;
  static constexpr int kAttributes = 24;
  static const std::array<std::array<int, kRelevant>, 10>& segments();

  LedGenerator(LedParams params, std::uint64_t seed);
  GeneratorKind kind() const noexcept override { return GeneratorKind::Led; }
  // Output position -> generated position.
  const std::array<int, kAttributes>& attribute_map() const noexcept { return map_; }

 private:
  Instance generate() override;
  LedParams params_;
  std::array<int, kAttributes> map_{};
};

class RtgGenerator final : public Generator {
 public:
  RtgGenerator(RtgParams params, std::uint64_t seed);
  GeneratorKind kind() const noexcept override { return GeneratorKind::Rtg; }
  int classify(const std::vector<double>& values) const;

 private:
  struct Node {
    int attribute = -1;  // -1 marks a leaf
    double split_value = 0.0;
    int label = 0;
    std::vector<int> children;
  };
  int build(int depth, std::vector<int> nominal_candidates, std::vector<double> lo,
            std::vector<double> hi, Rng& model_rng);
  Instance generate() override;

  RtgParams params_;
  std::vector<Node> nodes_;
};

class RbfGenerator final : public Generator {
 public:
  RbfGenerator(RbfParams params, std::uint64_t seed);
  GeneratorKind kind() const noexcept override { return GeneratorKind::Rbf; }

 private:
  struct Centroid {
    std::vector<double> centre;
    std::vector<double> velocity;
    int label = 0;
    double stdev = 0.0;
  };
  Instance generate() override;

  RbfParams params_;
  std::vector<Centroid> centroids_;
  std::vector<double> cumulative_weights_;
};

class HyperplaneGenerator final : public Generator {
 public:
  HyperplaneGenerator(HyperplaneParams params, std::uint64_t seed);
  GeneratorKind kind() const noexcept override { return GeneratorKind::Hyperplane; }
  // Points on the hyperplane (weighted sum exactly half the weight total) are class 0.
  static int classify(const std::vector<double>& weights, const std::vector<double>& x);
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  Instance generate() override;

  HyperplaneParams params_;
  std::vector<double> weights_;
  std::vector<double> directions_;
};

}  // namespace esrf
