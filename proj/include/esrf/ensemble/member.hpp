#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "esrf/common/rng.hpp"
#include "esrf/drift/drift_monitor.hpp"
#include "esrf/tree/hoeffding_tree.hpp"

namespace esrf {

struct MemberConfig {
  TreeConfig tree;
  MonitorConfig monitor;
  double lambda = 6.0;  // Poisson rate for online bagging weights
};

// A tree with its drift monitor, since-reset accuracy counters and a private rng.
// Both rng streams derive from (master seed, member id) only.
class EnsembleMember {
 public:
  EnsembleMember(int id, std::shared_ptr<const Schema> schema, const MemberConfig& config,
                 std::uint64_t master_seed);

  int id() const noexcept { return id_; }
  const HoeffdingTree& tree() const noexcept { return tree_; }
  HoeffdingTree& tree() noexcept { return tree_; }
  const DriftMonitor& monitor() const noexcept { return monitor_; }
  std::uint64_t correct() const noexcept { return correct_; }
  std::uint64_t total() const noexcept { return total_; }

  // Normalised class distribution of the tree (all zero when it has no evidence).
  void vote(const Instance& instance, std::span<double> out) const;

  // Records one outcome in the counters and the monitor.
  DriftSignal record(bool correct);
  double draw_weight();
  void clear_counters() noexcept { correct_ = total_ = 0; }
  // Empties the tree and clears counters; the monitor resets itself on drift.
  void reset();
  Rng& rng() noexcept { return rng_; }

  // Cached pre-training prediction for the instance currently being processed.
  std::optional<int> pending_prediction;

 private:
  int id_;
  HoeffdingTree tree_;
  DriftMonitor monitor_;
  double lambda_;
  Rng rng_;
  std::uint64_t correct_ = 0;
  std::uint64_t total_ = 0;
};

// correct / total since the last reset; 0 before any outcome.
double member_weight(const EnsembleMember& member) noexcept;

// Lowest index among maximal entries; 0 for an empty span.
int argmax_lowest(std::span<const double> scores) noexcept;

// Sums each member's normalised vote scaled by its weight. Throws EmptyEnsemble if empty.
struct Prediction {
  int label = 0;
  std::vector<double> scores;
};
Prediction predict_label(std::span<const EnsembleMember* const> members, const Instance& instance);

}  // namespace esrf
