#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esrf/common/rng.hpp"
#include "esrf/streams/schema.hpp"
#include "esrf/tree/observers.hpp"

namespace esrf {

// epsilon = sqrt(R^2 ln(1/delta) / (2n)). Throws DomainError unless R > 0, 0 < delta < 1, n > 0.
double hoeffding_bound(double range, double confidence, double n);

enum class LeafPrediction { MajorityClass, NaiveBayesAdaptive };

struct TreeConfig {
  double split_confidence = 0.01;
  double tie_threshold = 0.05;
  int grace_period = 50;
  int subspace_size = 0;  // 0: floor(sqrt(M)) + 1
  LeafPrediction leaf_prediction = LeafPrediction::NaiveBayesAdaptive;
  std::optional<int> max_depth;
  int numeric_split_points = 10;
  double min_branch_fraction = 0.01;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  std::size_t resolved_subspace_size(std::size_t num_attributes) const;
};

struct SplitTest {
  enum class Kind { Nominal, NumericBinary };
  Kind kind = Kind::NumericBinary;
  int attribute = 0;
  double threshold = 0.0;  // NumericBinary: values <= threshold go left

  std::size_t branch(const Instance& instance) const;
};

struct SplitCandidate {
  SplitTest test;
  double merit = 0.0;
  std::vector<std::vector<double>> child_distributions;
};

// Split iff the best merit is positive and (best - second > epsilon or epsilon < tie_threshold).
bool should_split(double best_merit, double second_merit, double epsilon, double tie_threshold);

struct SplitOutcome {
  bool split = false;
  std::optional<SplitCandidate> chosen;
  double epsilon = 0.0;
  double best_merit = 0.0;
  double second_merit = 0.0;
};

class HoeffdingTree {
 public:
  struct Leaf {
    std::vector<double> class_counts;
    std::vector<AttributeObserver> observers;  // aligned with Node::subspace
    double inherited_weight = 0.0;  // class weight copied from the parent at split time
    double routed_weight = 0.0;
    double weight_at_last_check = 0.0;
    double mc_correct = 0.0;
    double nb_correct = 0.0;

    double weight_seen() const noexcept { return inherited_weight + routed_weight; }
  };

  struct Node {
    std::vector<int> subspace;  // sorted attribute indices sampled for this node
    int depth = 0;
    std::optional<Leaf> leaf;  // empty for internal nodes
    SplitTest split;
    std::vector<int> children;

    bool is_leaf() const noexcept { return leaf.has_value(); }
  };

  HoeffdingTree(std::shared_ptr<const Schema> schema, TreeConfig config, Rng rng);

  // Weight-0 instances are ignored. Throws SchemaMismatch on a malformed instance.
  void train(const Instance& instance) { train(instance, instance.weight); }
  // Trains with `weight` in place of the instance's own weight.
  void train(const Instance& instance, double weight);
  // Non-negative per-class scores (unnormalised); all zero for an empty tree.
  void predict(const Instance& instance, std::span<double> scores) const;
  std::vector<double> predict(const Instance& instance) const;
  // Drops every node and samples a fresh root subspace; the rng keeps advancing.
  void reset();

  // Evaluates the leaf's split candidates and splits it when the bound allows.
  SplitOutcome attempt_split(int leaf_node);
  // Best candidate per subspace attribute, unordered.
  std::vector<SplitCandidate> split_candidates(int leaf_node) const;

  const Schema& schema() const noexcept { return *schema_; }
  const TreeConfig& config() const noexcept { return config_; }
  const Rng& rng() const noexcept { return rng_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  int sort_to_leaf(const Instance& instance) const;
  std::size_t num_leaves() const;
  int depth() const;
  double instances_seen() const noexcept { return instances_seen_; }
  std::string dump() const;

 private:
  int make_leaf(int depth, std::vector<double> class_counts);
  std::vector<int> sample_subspace();
  void naive_bayes(const Node& node, const Instance& instance, std::span<double> scores) const;
  void leaf_scores(const Node& node, const Instance& instance, std::span<double> scores) const;

  std::shared_ptr<const Schema> schema_;
  TreeConfig config_;
  Rng rng_;
  std::vector<Node> nodes_;
  double instances_seen_ = 0.0;
  std::vector<double> scratch_;
};

}  // namespace esrf
