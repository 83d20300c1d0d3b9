#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "esrf/common/parallel.hpp"
#include "esrf/ensemble/classifier.hpp"
#include "esrf/ensemble/ewma.hpp"
#include "esrf/ensemble/member.hpp"

namespace esrf {

enum class ResizeDecision { Keep, Grow, Shrink };

const char* to_string(ResizeDecision d) noexcept;

// Grow iff delta_grow >= delta_shrink and delta_grow > grow_threshold (ties favour growing);
// otherwise Shrink iff delta_shrink > delta_grow and delta_shrink > shrink_threshold.
ResizeDecision decide_resize(double delta_grow, double delta_shrink, double grow_threshold,
                             double shrink_threshold) noexcept;

// Accuracy trackers for the shrunk, default and grown shadow ensembles.
struct ResizeTrackers {
  EwmaAccuracy shrunk;
  EwmaAccuracy current;
  EwmaAccuracy grown;

  explicit ResizeTrackers(double alpha)
      : shrunk(alpha), current(alpha), grown(alpha) {}
};

// Feeds the three shadow predictions' correctness to the trackers, then decides.
ResizeDecision check_if_resize(int truth, int shrunk_label, int current_label, int grown_label,
                               ResizeTrackers& trackers, double grow_threshold,
                               double shrink_threshold);

struct EsrfConfig {
  int initial_fs = 10;
  int cs_size = 10;
  int resize_factor = 1;
  double grow_threshold = 0.01;
  double shrink_threshold = 0.001;
  int ewma_window = 2000;
  int min_fs = 10;
  int max_total = 100;
  bool elastic = true;  // false: fixed-size forefront without a grow set (swap only)
  // After a resize the default tracker takes over the value of the tracker that measured the
  // ensemble now in use (grown after Grow, shrunk after Shrink).
  bool tracker_handover = true;
  MemberConfig member = default_member_config();
  std::uint64_t seed = 1;
  int threads = 1;

  static MemberConfig default_member_config();
  void validate() const;
};

struct SwapReport {
  bool swapped = false;
  std::optional<int> forefront_min_id;
  std::optional<int> candidate_max_id;
  double forefront_min_weight = 0.0;
  double candidate_max_weight = 0.0;
};

struct StepReport {
  ResizeDecision decided = ResizeDecision::Keep;  // before bound suppression
  ResizeDecision applied = ResizeDecision::Keep;
  SwapReport swap;
};

// Forefront set votes; candidate set trains in the background and may swap in; the grow set
// feeds the elastic resize decision.
class EsrfEnsemble final : public Classifier {
 public:
  EsrfEnsemble(std::shared_ptr<const Schema> schema, EsrfConfig config);

  int predict(const Instance& instance) const override;
  void train(const Instance& instance) override { train_on_instance(instance); }
  std::size_t voting_size() const override { return forefront_.size(); }

  // Resize, then train every member, then swap.
  StepReport train_on_instance(const Instance& instance);

  // Individual steps, exposed for tests. Callers must run them in the order above.
  ResizeDecision resize_ensemble(const Instance& instance, StepReport* report = nullptr);
  void train_all_classifiers(const Instance& instance);
  SwapReport swap_step();

  Prediction predict_forefront(const Instance& instance) const;
  // r lowest-weight forefront members (ties: lowest id).
  std::vector<int> forefront_min_ids() const;

  const std::vector<EnsembleMember>& forefront() const noexcept { return forefront_; }
  const std::vector<EnsembleMember>& candidates() const noexcept { return candidates_; }
  const std::vector<EnsembleMember>& grow_set() const noexcept { return grow_set_; }
  std::vector<EnsembleMember>& forefront_mut() noexcept { return forefront_; }
  std::vector<EnsembleMember>& candidates_mut() noexcept { return candidates_; }
  const ResizeTrackers& trackers() const noexcept { return trackers_; }
  const EsrfConfig& config() const noexcept { return config_; }
  std::size_t total_members() const noexcept {
    return forefront_.size() + candidates_.size() + grow_set_.size();
  }
  // Digest of every counter, tracker and tree statistic; equal digests mean no mutation.
  std::uint64_t state_digest() const;

 private:
  EnsembleMember make_member();
  void refill_grow_set();

  std::shared_ptr<const Schema> schema_;
  EsrfConfig config_;
  std::vector<EnsembleMember> forefront_;
  std::vector<EnsembleMember> candidates_;
  std::vector<EnsembleMember> grow_set_;
  ResizeTrackers trackers_;
  ParallelExecutor executor_;
  int next_id_ = 0;
};

}  // namespace esrf
