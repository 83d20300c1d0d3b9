#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "esrf/common/parallel.hpp"
#include "esrf/ensemble/classifier.hpp"
#include "esrf/ensemble/member.hpp"

namespace esrf {

struct ArfConfig {
  int n_trees = 100;
  MemberConfig member;  // two-level monitors by default
  std::uint64_t seed = 1;
  int threads = 1;

  void validate() const;
};

struct ArfStepReport {
  int warnings = 0;
  int drifts = 0;
  int replaced_by_background = 0;
};

// Fixed-size adaptive random forest: a warning starts a background tree for the member, a
// confirmed drift swaps it in (or a fresh tree when none exists).
class ArfEnsemble final : public Classifier {
 public:
  ArfEnsemble(std::shared_ptr<const Schema> schema, ArfConfig config);

  int predict(const Instance& instance) const override;
  void train(const Instance& instance) override { train_on_instance(instance); }
  std::size_t voting_size() const noexcept override { return members_.size(); }

  ArfStepReport train_on_instance(const Instance& instance);
  Prediction predict_all(const Instance& instance) const;

  const std::vector<EnsembleMember>& members() const noexcept { return members_; }
  bool has_background(std::size_t member_index) const { return background_.at(member_index).has_value(); }
  const std::optional<HoeffdingTree>& background(std::size_t member_index) const {
    return background_.at(member_index);
  }
  std::size_t background_count() const noexcept;

 private:
  std::shared_ptr<const Schema> schema_;
  ArfConfig config_;
  std::vector<EnsembleMember> members_;
  std::vector<std::optional<HoeffdingTree>> background_;  // parallel to members_
  ParallelExecutor executor_;
};

}  // namespace esrf
