#include "esrf/ensemble/arf.hpp"

#include <algorithm>
#include <stdexcept>

#include "esrf/common/errors.hpp"

namespace esrf {

void ArfConfig::validate() const {
  if (n_trees < 1) throw std::invalid_argument("ARF needs at least one tree");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (!(member.lambda > 0.0)) throw std::invalid_argument("Poisson lambda must be positive");
  member.tree.validate();
  member.monitor.validate();
}

ArfEnsemble::ArfEnsemble(std::shared_ptr<const Schema> schema, ArfConfig config)
    : schema_(std::move(schema)), config_(std::move(config)), executor_(config_.threads) {
  config_.validate();
  for (int i = 0; i < config_.n_trees; ++i) {
    members_.emplace_back(i, schema_, config_.member, config_.seed);
  }
  background_.resize(members_.size());
}

Prediction ArfEnsemble::predict_all(const Instance& instance) const {
  std::vector<const EnsembleMember*> all;
  all.reserve(members_.size());
  for (const auto& m : members_) all.push_back(&m);
  return predict_label(all, instance);
}

int ArfEnsemble::predict(const Instance& instance) const { return predict_all(instance).label; }

std::size_t ArfEnsemble::background_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(background_.begin(), background_.end(),
                                                [](const auto& b) { return b.has_value(); }));
}

ArfStepReport ArfEnsemble::train_on_instance(const Instance& instance) {
  if (instance.class_index < 0 ||
      static_cast<std::size_t>(instance.class_index) >= schema_->num_classes()) {
    throw SchemaMismatch("training instance has an out-of-range label");
  }
  const std::size_t k = schema_->num_classes();
  std::vector<DriftSignal> signals(members_.size(), DriftSignal::None);
  std::vector<char> replaced(members_.size(), 0);
  executor_.for_each(members_.size(), [&](std::size_t i) {
    EnsembleMember& m = members_[i];
    std::vector<double> vote(k);
    m.vote(instance, vote);
    const bool correct = argmax_lowest(vote) == instance.class_index;
    const double w = m.draw_weight() * instance.weight;
    m.tree().train(instance, w);
    if (background_[i]) background_[i]->train(instance, w);

    const DriftSignal signal = m.record(correct);
    signals[i] = signal;
    if (signal == DriftSignal::Warning) {
      background_[i].emplace(schema_, config_.member.tree, Rng(m.rng()()));
    } else if (signal == DriftSignal::Drift) {
      if (background_[i]) {
        m.tree() = std::move(*background_[i]);
        background_[i].reset();
        replaced[i] = 1;
      } else {
        m.tree().reset();
      }
      m.clear_counters();
    }
  });

  ArfStepReport report;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (signals[i] == DriftSignal::Warning) ++report.warnings;
    if (signals[i] == DriftSignal::Drift) ++report.drifts;
    report.replaced_by_background += replaced[i];
  }
  return report;
}

}  // namespace esrf
