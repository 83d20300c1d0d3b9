#include "esrf/ensemble/esrf.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "esrf/common/errors.hpp"

namespace esrf {

namespace {

void add_weighted(std::vector<double>& acc, std::span<const double> vote, double w) {
  for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += w * vote[c];
}

struct Digest {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void add(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  void add(double x) { add(std::bit_cast<std::uint64_t>(x)); }
};

}  // namespace

const char* to_string(ResizeDecision d) noexcept {
  switch (d) {
    case ResizeDecision::Keep: return "keep";
    case ResizeDecision::Grow: return "grow";
    case ResizeDecision::Shrink: return "shrink";
  }
  return "?";
}

ResizeDecision decide_resize(double delta_grow, double delta_shrink, double grow_threshold,
                             double shrink_threshold) noexcept {
  if (delta_grow >= delta_shrink && delta_grow > grow_threshold) return ResizeDecision::Grow;
  if (delta_shrink > delta_grow && delta_shrink > shrink_threshold) return ResizeDecision::Shrink;
  return ResizeDecision::Keep;
}

ResizeDecision check_if_resize(int truth, int shrunk_label, int current_label, int grown_label,
                               ResizeTrackers& trackers, double grow_threshold,
                               double shrink_threshold) {
  trackers.shrunk.update(shrunk_label == truth ? 1.0 : 0.0);
  trackers.current.update(current_label == truth ? 1.0 : 0.0);
  trackers.grown.update(grown_label == truth ? 1.0 : 0.0);
  const double delta_shrink = trackers.shrunk.value() - trackers.current.value();
  const double delta_grow = trackers.grown.value() - trackers.current.value();
  return decide_resize(delta_grow, delta_shrink, grow_threshold, shrink_threshold);
}

MemberConfig EsrfConfig::default_member_config() {
  MemberConfig m;
  m.monitor.mode = MonitorMode::SingleLevel;
  m.monitor.drift_delta = 0.00001;
  return m;
}

void EsrfConfig::validate() const {
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (cs_size < 1) fail("candidate set size must be >= 1");
  if (min_fs < 1) fail("min_fs must be >= 1");
  if (initial_fs < min_fs) fail("initial forefront size must be >= min_fs");
  if (!(grow_threshold >= 0.0) || !(shrink_threshold >= 0.0)) fail("thresholds must be >= 0");
  if (ewma_window < 1) fail("EWMA window must be >= 1");
  if (threads < 1) fail("threads must be >= 1");
  if (elastic) {
    if (resize_factor < 1) fail("resize factor must be >= 1");
    if (min_fs <= resize_factor) fail("min_fs must exceed the resize factor");
    if (initial_fs + cs_size + resize_factor > max_total) {
      fail("initial forefront + candidates + grow set exceed max_total");
    }
  } else if (initial_fs + cs_size > max_total) {
    fail("initial forefront + candidates exceed max_total");
  }
  member.tree.validate();
  member.monitor.validate();
  if (!(member.lambda > 0.0)) fail("Poisson lambda must be positive");
}

EsrfEnsemble::EsrfEnsemble(std::shared_ptr<const Schema> schema, EsrfConfig config)
    : schema_(std::move(schema)),
      config_(std::move(config)),
      trackers_(EwmaAccuracy::alpha_for_window(config_.ewma_window)),
      executor_(config_.threads) {
  config_.validate();
  for (int i = 0; i < config_.initial_fs; ++i) forefront_.push_back(make_member());
  for (int i = 0; i < config_.cs_size; ++i) candidates_.push_back(make_member());
  if (config_.elastic) refill_grow_set();
}

EnsembleMember EsrfEnsemble::make_member() {
  return EnsembleMember(next_id_++, schema_, config_.member, config_.seed);
}

void EsrfEnsemble::refill_grow_set() {
  grow_set_.clear();
  for (int i = 0; i < config_.resize_factor; ++i) grow_set_.push_back(make_member());
}

Prediction EsrfEnsemble::predict_forefront(const Instance& instance) const {
  std::vector<const EnsembleMember*> members;
  members.reserve(forefront_.size());
  for (const auto& m : forefront_) members.push_back(&m);
  return predict_label(members, instance);
}

int EsrfEnsemble::predict(const Instance& instance) const {
  return predict_forefront(instance).label;
}

std::vector<int> EsrfEnsemble::forefront_min_ids() const {
  std::vector<const EnsembleMember*> order;
  for (const auto& m : forefront_) order.push_back(&m);
  std::sort(order.begin(), order.end(), [](const EnsembleMember* a, const EnsembleMember* b) {
    const double wa = member_weight(*a);
    const double wb = member_weight(*b);
    return wa != wb ? wa < wb : a->id() < b->id();
  });
  std::vector<int> ids;
  const auto r = std::min<std::size_t>(static_cast<std::size_t>(config_.resize_factor), order.size());
  for (std::size_t i = 0; i < r; ++i) ids.push_back(order[i]->id());
  return ids;
}

ResizeDecision EsrfEnsemble::resize_ensemble(const Instance& instance, StepReport* report) {
  if (!config_.elastic) return ResizeDecision::Keep;
  const std::size_t k = schema_->num_classes();
  const std::size_t nf = forefront_.size();
  const std::size_t ng = grow_set_.size();

  // Each member's vote is computed once and reused by all three shadow ensembles.
  std::vector<std::vector<double>> votes(nf + ng, std::vector<double>(k, 0.0));
  executor_.for_each(nf + ng, [&](std::size_t i) {
    EnsembleMember& m = i < nf ? forefront_[i] : grow_set_[i - nf];
    m.vote(instance, votes[i]);
    m.pending_prediction = argmax_lowest(votes[i]);
  });

  const std::vector<int> dropped = forefront_min_ids();
  std::vector<double> shrunk(k, 0.0);
  std::vector<double> current(k, 0.0);
  for (std::size_t i = 0; i < nf; ++i) {
    const double w = member_weight(forefront_[i]);
    if (w <= 0.0) continue;
    add_weighted(current, votes[i], w);
    if (std::find(dropped.begin(), dropped.end(), forefront_[i].id()) == dropped.end()) {
      add_weighted(shrunk, votes[i], w);
    }
  }
  std::vector<double> grown = current;
  for (std::size_t i = 0; i < ng; ++i) {
    const double w = member_weight(grow_set_[i]);
    if (w > 0.0) add_weighted(grown, votes[nf + i], w);
  }

  const ResizeDecision decided =
      check_if_resize(instance.class_index, argmax_lowest(shrunk), argmax_lowest(current),
                      argmax_lowest(grown), trackers_, config_.grow_threshold,
                      config_.shrink_threshold);

  ResizeDecision applied = decided;
  const auto r = static_cast<std::size_t>(config_.resize_factor);
  if (decided == ResizeDecision::Grow) {
    if (nf + r + candidates_.size() + r > static_cast<std::size_t>(config_.max_total)) {
      applied = ResizeDecision::Keep;
    } else {
      for (auto& m : grow_set_) forefront_.push_back(std::move(m));
      refill_grow_set();
      if (config_.tracker_handover) trackers_.current = trackers_.grown;
    }
  } else if (decided == ResizeDecision::Shrink) {
    if (nf < r + static_cast<std::size_t>(config_.min_fs)) {
      applied = ResizeDecision::Keep;
    } else {
      std::erase_if(forefront_, [&](const EnsembleMember& m) {
        return std::find(dropped.begin(), dropped.end(), m.id()) != dropped.end();
      });
      refill_grow_set();
      if (config_.tracker_handover) trackers_.current = trackers_.shrunk;
    }
  }
  if (report) {
    report->decided = decided;
    report->applied = applied;
  }
  return applied;
}

void EsrfEnsemble::train_all_classifiers(const Instance& instance) {
  if (instance.class_index < 0 ||
      static_cast<std::size_t>(instance.class_index) >= schema_->num_classes()) {
    throw SchemaMismatch("training instance has an out-of-range label");
  }
  const std::size_t nf = forefront_.size();
  const std::size_t nc = candidates_.size();
  const std::size_t k = schema_->num_classes();
  executor_.for_each(nf + nc + grow_set_.size(), [&](std::size_t i) {
    EnsembleMember& m = i < nf ? forefront_[i] : i < nf + nc ? candidates_[i - nf]
                                                             : grow_set_[i - nf - nc];
    int predicted = 0;
    if (m.pending_prediction) {
      predicted = *m.pending_prediction;
      m.pending_prediction.reset();
    } else {
      std::vector<double> vote(k);
      m.vote(instance, vote);
      predicted = argmax_lowest(vote);
    }
    m.tree().train(instance, m.draw_weight() * instance.weight);
    if (m.record(predicted == instance.class_index) == DriftSignal::Drift) m.reset();
  });
}

SwapReport EsrfEnsemble::swap_step() {
  SwapReport report;
  if (forefront_.empty() || candidates_.empty()) return report;
  std::size_t worst = 0;
  for (std::size_t i = 1; i < forefront_.size(); ++i) {
    const double w = member_weight(forefront_[i]);
    const double best = member_weight(forefront_[worst]);
    if (w < best || (w == best && forefront_[i].id() < forefront_[worst].id())) worst = i;
  }
  std::size_t top = 0;
  for (std::size_t i = 1; i < candidates_.size(); ++i) {
    const double w = member_weight(candidates_[i]);
    const double best = member_weight(candidates_[top]);
    if (w > best || (w == best && candidates_[i].id() < candidates_[top].id())) top = i;
  }
  report.forefront_min_id = forefront_[worst].id();
  report.candidate_max_id = candidates_[top].id();
  report.forefront_min_weight = member_weight(forefront_[worst]);
  report.candidate_max_weight = member_weight(candidates_[top]);
  if (report.candidate_max_weight > report.forefront_min_weight) {
    std::swap(forefront_[worst], candidates_[top]);
    report.swapped = true;
  }
  return report;
}

StepReport EsrfEnsemble::train_on_instance(const Instance& instance) {
  StepReport report;
  resize_ensemble(instance, &report);
  train_all_classifiers(instance);
  report.swap = swap_step();
  return report;
}

std::uint64_t EsrfEnsemble::state_digest() const {
  Digest d;
  for (const auto* set : {&forefront_, &candidates_, &grow_set_}) {
    d.add(static_cast<std::uint64_t>(set->size()));
    for (const auto& m : *set) {
      d.add(static_cast<std::uint64_t>(m.id()));
      d.add(m.correct());
      d.add(m.total());
      d.add(m.tree().instances_seen());
      d.add(static_cast<std::uint64_t>(m.tree().nodes().size()));
      d.add(m.monitor().drift_detector().width());
      d.add(m.monitor().drift_detector().total());
    }
  }
  d.add(trackers_.shrunk.value());
  d.add(trackers_.current.value());
  d.add(trackers_.grown.value());
  d.add(static_cast<std::uint64_t>(next_id_));
  return d.h;
}

}  // namespace esrf
