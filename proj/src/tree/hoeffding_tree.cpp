#include "esrf/tree/hoeffding_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "esrf/common/errors.hpp"

namespace esrf {

namespace {

std::size_t argmax(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace

double hoeffding_bound(double range, double confidence, double n) {
  if (!(range > 0.0) || !(confidence > 0.0) || !(confidence < 1.0) || !(n > 0.0)) {
    throw DomainError("hoeffding_bound requires R > 0, 0 < delta < 1 and n > 0");
  }
  return std::sqrt(range * range * std::log(1.0 / confidence) / (2.0 * n));
}

void TreeConfig::validate() const {
  if (!(split_confidence > 0.0 && split_confidence < 1.0)) {
    throw std::invalid_argument("split_confidence must be in (0,1)");
  }
  if (!(tie_threshold >= 0.0)) throw std::invalid_argument("tie_threshold must be >= 0");
  if (grace_period <= 0) throw std::invalid_argument("grace_period must be positive");
  if (subspace_size < 0) throw std::invalid_argument("subspace_size must be >= 0");
  if (max_depth && *max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  if (numeric_split_points < 1) throw std::invalid_argument("numeric_split_points must be >= 1");
  if (!(min_branch_fraction >= 0.0 && min_branch_fraction < 0.5)) {
    throw std::invalid_argument("min_branch_fraction must be in [0, 0.5)");
  }
}

std::size_t TreeConfig::resolved_subspace_size(std::size_t num_attributes) const {
  const std::size_t m =
      subspace_size > 0
          ? static_cast<std::size_t>(subspace_size)
          : static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(num_attributes)))) + 1;
  return std::min(m, num_attributes);
}

std::size_t SplitTest::branch(const Instance& instance) const {
  const double v = instance.values[static_cast<std::size_t>(attribute)];
  if (kind == Kind::Nominal) return static_cast<std::size_t>(v);
  return v <= threshold ? 0 : 1;
}

bool should_split(double best_merit, double second_merit, double epsilon, double tie_threshold) {
  if (!(best_merit > 0.0)) return false;
  return best_merit - second_merit > epsilon || epsilon < tie_threshold;
}

HoeffdingTree::HoeffdingTree(std::shared_ptr<const Schema> schema, TreeConfig config, Rng rng)
    : schema_(std::move(schema)), config_(config), rng_(rng) {
  if (!schema_) throw std::invalid_argument("tree needs a schema");
  config_.validate();
  reset();
}

void HoeffdingTree::reset() {
  nodes_.clear();
  instances_seen_ = 0.0;
  make_leaf(0, std::vector<double>(schema_->num_classes(), 0.0));
}

std::vector<int> HoeffdingTree::sample_subspace() {
  const std::size_t total = schema_->num_attributes();
  const std::size_t m = config_.resolved_subspace_size(total);
  std::vector<int> all(total);
  std::iota(all.begin(), all.end(), 0);
  if (m < total) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t remaining = total - i;
      const std::size_t j =
          i + std::min(remaining - 1, static_cast<std::size_t>(uniform01(rng_) * remaining));
      std::swap(all[i], all[j]);
    }
    all.resize(m);
  }
  std::sort(all.begin(), all.end());
  return all;
}

int HoeffdingTree::make_leaf(int depth, std::vector<double> class_counts) {
  Node node;
  node.depth = depth;
  node.subspace = sample_subspace();
  Leaf leaf;
  leaf.inherited_weight = std::accumulate(class_counts.begin(), class_counts.end(), 0.0);
  leaf.weight_at_last_check = leaf.inherited_weight;
  leaf.class_counts = std::move(class_counts);
  const std::size_t k = schema_->num_classes();
  for (int a : node.subspace) {
    const auto& spec = schema_->attribute(static_cast<std::size_t>(a));
    leaf.observers.push_back(spec.is_nominal() ? AttributeObserver::nominal(k, spec.num_values())
                                               : AttributeObserver::numeric(k));
  }
  node.leaf = std::move(leaf);
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

int HoeffdingTree::sort_to_leaf(const Instance& instance) const {
  int id = 0;
  while (!nodes_[id].is_leaf()) {
    const Node& n = nodes_[id];
    id = n.children[n.split.branch(instance)];
  }
  return id;
}

void HoeffdingTree::train(const Instance& instance, double weight) {
  const std::size_t k = schema_->num_classes();
  if (instance.values.size() != schema_->num_attributes() || instance.class_index < 0 ||
      static_cast<std::size_t>(instance.class_index) >= k) {
    throw SchemaMismatch("training instance does not match the tree schema");
  }
  const double w = weight;
  if (!(w > 0.0)) return;

  const int id = sort_to_leaf(instance);
  Node& node = nodes_[id];
  Leaf& leaf = *node.leaf;
  const int y = instance.class_index;

  if (config_.leaf_prediction == LeafPrediction::NaiveBayesAdaptive && leaf.weight_seen() > 0.0) {
    if (static_cast<int>(argmax(leaf.class_counts)) == y) leaf.mc_correct += w;
    scratch_.resize(k);
    naive_bayes(node, instance, scratch_);
    if (static_cast<int>(argmax(scratch_)) == y) leaf.nb_correct += w;
  }

  leaf.class_counts[static_cast<std::size_t>(y)] += w;
  leaf.routed_weight += w;
  instances_seen_ += w;
  for (std::size_t j = 0; j < node.subspace.size(); ++j) {
    leaf.observers[j].observe(instance.values[static_cast<std::size_t>(node.subspace[j])], y, w);
  }

  if (leaf.weight_seen() - leaf.weight_at_last_check >= config_.grace_period) {
    const auto nonzero = std::count_if(leaf.class_counts.begin(), leaf.class_counts.end(),
                                       [](double c) { return c > 0.0; });
    if (nonzero > 1) attempt_split(id);
    if (nodes_[id].is_leaf()) nodes_[id].leaf->weight_at_last_check = nodes_[id].leaf->weight_seen();
  }
}

std::vector<SplitCandidate> HoeffdingTree::split_candidates(int leaf_node) const {
  const Node& node = nodes_.at(static_cast<std::size_t>(leaf_node));
  if (!node.is_leaf()) throw std::invalid_argument("split_candidates needs a leaf");
  const Leaf& leaf = *node.leaf;
  std::vector<SplitCandidate> out;
  for (std::size_t j = 0; j < node.subspace.size(); ++j) {
    const AttributeObserver& obs = leaf.observers[j];
    SplitCandidate best;
    best.test.attribute = node.subspace[j];
    best.merit = -std::numeric_limits<double>::infinity();
    if (obs.is_nominal()) {
      best.test.kind = SplitTest::Kind::Nominal;
      best.child_distributions = obs.multiway_split();
      best.merit = info_gain(leaf.class_counts, best.child_distributions,
                             config_.min_branch_fraction);
    } else {
      best.test.kind = SplitTest::Kind::NumericBinary;
      for (double t : obs.candidate_thresholds(config_.numeric_split_points)) {
        auto sides = obs.binary_split(t);
        std::vector<std::vector<double>> dists{std::move(sides[0]), std::move(sides[1])};
        const double merit = info_gain(leaf.class_counts, dists, config_.min_branch_fraction);
        if (merit > best.merit) {
          best.merit = merit;
          best.test.threshold = t;
          best.child_distributions = std::move(dists);
        }
      }
    }
    out.push_back(std::move(best));
  }
  return out;
}

SplitOutcome HoeffdingTree::attempt_split(int leaf_node) {
  SplitOutcome outcome;
  const Node& node = nodes_.at(static_cast<std::size_t>(leaf_node));
  if (!node.is_leaf()) return outcome;
  if (config_.max_depth && node.depth >= *config_.max_depth) return outcome;

  auto candidates = split_candidates(leaf_node);
  std::sort(candidates.begin(), candidates.end(),
            [](const SplitCandidate& a, const SplitCandidate& b) { return a.merit > b.merit; });
  const double k = static_cast<double>(schema_->num_classes());
  outcome.epsilon = hoeffding_bound(std::log2(k), config_.split_confidence,
                                    std::max(node.leaf->weight_seen(), 1e-12));
  if (candidates.empty()) return outcome;
  // The no-split alternative has merit 0.
  outcome.best_merit = candidates[0].merit;
  outcome.second_merit = candidates.size() > 1 ? std::max(0.0, candidates[1].merit) : 0.0;
  if (!should_split(outcome.best_merit, outcome.second_merit, outcome.epsilon,
                    config_.tie_threshold)) {
    return outcome;
  }

  SplitCandidate chosen = std::move(candidates[0]);
  const int depth = node.depth;
  std::vector<int> children;
  for (auto& dist : chosen.child_distributions) {
    children.push_back(make_leaf(depth + 1, dist));
  }
  Node& parent = nodes_[static_cast<std::size_t>(leaf_node)];
  parent.leaf.reset();
  parent.split = chosen.test;
  parent.children = std::move(children);
  outcome.split = true;
  outcome.chosen = std::move(chosen);
  return outcome;
}

void HoeffdingTree::naive_bayes(const Node& node, const Instance& instance,
                                std::span<double> scores) const {
  const Leaf& leaf = *node.leaf;
  const double total = leaf.weight_seen();
  if (total <= 0.0) {
    std::fill(scores.begin(), scores.end(), 0.0);
    return;
  }
  for (std::size_t c = 0; c < scores.size(); ++c) {
    double s = leaf.class_counts[c] / total;
    for (std::size_t j = 0; j < node.subspace.size() && s > 0.0; ++j) {
      s *= leaf.observers[j].likelihood(instance.values[static_cast<std::size_t>(node.subspace[j])],
                                        static_cast<int>(c));
    }
    scores[c] = s;
  }
}

void HoeffdingTree::leaf_scores(const Node& node, const Instance& instance,
                                std::span<double> scores) const {
  const Leaf& leaf = *node.leaf;
  if (config_.leaf_prediction == LeafPrediction::NaiveBayesAdaptive &&
      !(leaf.mc_correct > leaf.nb_correct)) {
    naive_bayes(node, instance, scores);
    return;
  }
  std::copy(leaf.class_counts.begin(), leaf.class_counts.end(), scores.begin());
}

void HoeffdingTree::predict(const Instance& instance, std::span<double> scores) const {
  if (instance.values.size() != schema_->num_attributes() ||
      scores.size() != schema_->num_classes()) {
    throw SchemaMismatch("prediction instance does not match the tree schema");
  }
  leaf_scores(nodes_[static_cast<std::size_t>(sort_to_leaf(instance))], instance, scores);
}

std::vector<double> HoeffdingTree::predict(const Instance& instance) const {
  std::vector<double> scores(schema_->num_classes(), 0.0);
  predict(instance, scores);
  return scores;
}

std::size_t HoeffdingTree::num_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

int HoeffdingTree::depth() const {
  int d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

std::string HoeffdingTree::dump() const {
  std::ostringstream out;
  auto walk = [&](auto&& self, int id, int indent) -> void {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (n.is_leaf()) {
      out << pad << "leaf [";
      for (std::size_t c = 0; c < n.leaf->class_counts.size(); ++c) {
        out << (c ? " " : "") << n.leaf->class_counts[c];
      }
      out << "]\n";
      return;
    }
    const auto& attr = schema_->attribute(static_cast<std::size_t>(n.split.attribute));
    for (std::size_t b = 0; b < n.children.size(); ++b) {
      if (n.split.kind == SplitTest::Kind::Nominal) {
        out << pad << attr.name << " = " << attr.values[b] << "\n";
      } else {
        out << pad << attr.name << (b == 0 ? " <= " : " > ") << n.split.threshold << "\n";
      }
      self(self, n.children[b], indent + 1);
    }
  };
  walk(walk, 0, 0);
  return out.str();
}

}  // namespace esrf
