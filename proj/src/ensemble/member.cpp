#include "esrf/ensemble/member.hpp"

#include <numeric>
#include <random>

#include "esrf/common/errors.hpp"

namespace esrf {

EnsembleMember::EnsembleMember(int id, std::shared_ptr<const Schema> schema,
                               const MemberConfig& config, std::uint64_t master_seed)
    : id_(id),
      tree_(std::move(schema), config.tree, make_rng(derive_seed(master_seed, id), 0)),
      monitor_(config.monitor),
      lambda_(config.lambda),
      rng_(make_rng(derive_seed(master_seed, id), 1)) {}

void EnsembleMember::vote(const Instance& instance, std::span<double> out) const {
  tree_.predict(instance, out);
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  if (sum > 0.0) {
    for (double& x : out) x /= sum;
  }
}

DriftSignal EnsembleMember::record(bool correct) {
  ++total_;
  if (correct) ++correct_;
  return monitor_.update(correct);
}

double EnsembleMember::draw_weight() {
  std::poisson_distribution<int> poisson(lambda_);
  return static_cast<double>(poisson(rng_));
}

void EnsembleMember::reset() {
  tree_.reset();
  clear_counters();
}

double member_weight(const EnsembleMember& member) noexcept {
  return member.total() == 0
             ? 0.0
             : static_cast<double>(member.correct()) / static_cast<double>(member.total());
}

int argmax_lowest(std::span<const double> scores) noexcept {
  int best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

Prediction predict_label(std::span<const EnsembleMember* const> members,
                         const Instance& instance) {
  if (members.empty()) throw EmptyEnsemble();
  const std::size_t k = members.front()->tree().schema().num_classes();
  Prediction out;
  out.scores.assign(k, 0.0);
  std::vector<double> vote(k);
  for (const EnsembleMember* m : members) {
    const double w = member_weight(*m);
    if (w <= 0.0) continue;
    m->vote(instance, vote);
    for (std::size_t c = 0; c < k; ++c) out.scores[c] += w * vote[c];
  }
  out.label = argmax_lowest(out.scores);
  return out;
}

}  // namespace esrf
