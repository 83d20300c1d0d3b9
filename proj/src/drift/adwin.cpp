#include "esrf/drift/adwin.hpp"

#include <cmath>
#include <stdexcept>

#include "esrf/common/errors.hpp"

namespace esrf {

void AdwinConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("adwin delta must be in (0,1)");
  if (max_buckets < 2) throw std::invalid_argument("adwin max_buckets must be >= 2");
  if (clock < 1) throw std::invalid_argument("adwin clock must be >= 1");
  if (min_window < 0 || min_subwindow < 1) {
    throw std::invalid_argument("adwin window minimums out of range");
  }
}

AdaptiveWindowDetector::AdaptiveWindowDetector(AdwinConfig config) : config_(config) {
  config_.validate();
}

void AdaptiveWindowDetector::reset() {
  rows_.clear();
  width_ = 0;
  total_ = 0.0;
  variance_sum_ = 0.0;
  time_ = 0;
}

double AdaptiveWindowDetector::variance() const noexcept {
  return width_ > 0 ? variance_sum_ / static_cast<double>(width_) : 0.0;
}

std::size_t AdaptiveWindowDetector::num_buckets() const noexcept {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.size();
  return n;
}

std::vector<std::uint64_t> AdaptiveWindowDetector::bucket_sizes() const {
  std::vector<std::uint64_t> out;
  for (std::size_t r = rows_.size(); r-- > 0;) {
    for (std::size_t k = 0; k < rows_[r].size(); ++k) out.push_back(std::uint64_t{1} << r);
  }
  return out;
}

double AdaptiveWindowDetector::cut_threshold(double delta, double n0, double n1, double n) {
  const double m = 1.0 / (1.0 / n0 + 1.0 / n1);
  return std::sqrt(std::log(4.0 * n / delta) / (2.0 * m));
}

ChangeFlag AdaptiveWindowDetector::update(double x) {
  if (x != 0.0 && x != 1.0) throw DomainError("adaptive window input must be 0 or 1");
  insert(x);
  ++time_;
  if (time_ % static_cast<std::uint64_t>(config_.clock) == 0 &&
      width_ > static_cast<std::uint64_t>(config_.min_window) && check_cut()) {
    return ChangeFlag::Change;
  }
  return ChangeFlag::Stable;
}

void AdaptiveWindowDetector::insert(double x) {
  ++width_;
  if (width_ > 1) {
    const double prev = static_cast<double>(width_ - 1);
    const double d = x - total_ / prev;
    variance_sum_ += prev * d * d / static_cast<double>(width_);
  }
  total_ += x;
  if (rows_.empty()) rows_.emplace_back();
  rows_[0].push_back({x, 0.0});
  compress();
}

void AdaptiveWindowDetector::compress() {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() <= static_cast<std::size_t>(config_.max_buckets)) break;
    const Bucket older = rows_[i].front();
    rows_[i].pop_front();
    const Bucket newer = rows_[i].front();
    rows_[i].pop_front();
    const double n = std::ldexp(1.0, static_cast<int>(i));
    const double diff = older.total / n - newer.total / n;
    Bucket merged{older.total + newer.total, older.variance + newer.variance + n * diff * diff / 2.0};
    if (i + 1 == rows_.size()) rows_.emplace_back();
    rows_[i + 1].push_back(merged);
  }
}

void AdaptiveWindowDetector::drop_oldest() {
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
  if (rows_.empty()) return;
  const std::size_t r = rows_.size() - 1;
  const Bucket b = rows_[r].front();
  rows_[r].pop_front();
  const double n1 = std::ldexp(1.0, static_cast<int>(r));
  width_ -= std::uint64_t{1} << r;
  total_ -= b.total;
  if (width_ == 0) {
    variance_sum_ = 0.0;
  } else {
    const double w = static_cast<double>(width_);
    const double d = b.total / n1 - total_ / w;
    variance_sum_ -= b.variance + n1 * w * d * d / (n1 + w);
    if (variance_sum_ < 0.0) variance_sum_ = 0.0;
  }
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

bool AdaptiveWindowDetector::check_cut() {
  bool changed = false;
  bool again = true;
  const double min_sub = config_.min_subwindow;
  while (again && width_ > 0) {
    again = false;
    double n0 = 0.0;
    double u0 = 0.0;
    double n1 = static_cast<double>(width_);
    double u1 = total_;
    const double n = n1;
    for (std::size_t r = rows_.size(); r-- > 0 && !again;) {
      const double size = std::ldexp(1.0, static_cast<int>(r));
      for (std::size_t k = 0; k < rows_[r].size(); ++k) {
        if (r == 0 && k + 1 == rows_[r].size()) break;  // W1 must keep the newest bucket
        n0 += size;
        n1 -= size;
        u0 += rows_[r][k].total;
        u1 -= rows_[r][k].total;
        if (n0 >= min_sub && n1 >= min_sub &&
            std::abs(u0 / n0 - u1 / n1) >= cut_threshold(config_.delta, n0, n1, n)) {
          drop_oldest();
          changed = true;
          again = true;
          break;
        }
      }
    }
  }
  return changed;
}

}  // namespace esrf
