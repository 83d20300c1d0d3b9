#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "esrf/cli/experiment.hpp"
#include "esrf/cli/run_config.hpp"
#include "esrf/common/rng.hpp"
#include "esrf/drift/adwin.hpp"
#include "esrf/ensemble/esrf.hpp"
#include "esrf/ensemble/ewma.hpp"
#include "esrf/eval/metrics.hpp"
#include "esrf/eval/prequential.hpp"
#include "esrf/streams/stream_factory.hpp"
#include "esrf/tree/hoeffding_tree.hpp"
#include "oracles/adwin_oracle.hpp"

namespace {
#include "oracles/constants.inc"

struct HoeffdingRow {
  int classes;
  double delta;
  double n;
  double eps;
};
const HoeffdingRow kHoeffdingTable[] = {
#include "oracles/hoeffding_table.inc"
};
}  // namespace

using namespace esrf;

namespace {

// Tolerances and scales for each criterion.
constexpr double kEwmaDecayTol = 1e-12;
constexpr double kAlphaTol = 1e-15;
constexpr double kHoeffdingRelTol = 1e-12;
constexpr std::uint64_t kTrendInstances = 200000;
constexpr int kTrendBaselineTrees = 60;
constexpr double kTrendMaxMeanFs = 40.0;
constexpr int kTrendMeanFsStreams = 2;
constexpr double kTrendMaxAbsDelta = 2.0;
constexpr double kTrendMaxTimeRatio = 0.6;
constexpr double kCurveNoise = 0.3;
constexpr std::uint64_t kSensitivityInstances = 100000;
constexpr double kSensitivityTol = 0.3;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome truth_table() {
  using D = ResizeDecision;
  struct Case {
    double dg, ds, tg, ts;
    D expected;
  };
  const Case cases[] = {
      {0.02, 0.01, 0.01, 0.001, D::Grow},      {0.05, 0.05, 0.01, 0.001, D::Grow},
      {0.005, 0.004, 0.01, 0.001, D::Keep},    {0.0, 0.002, 0.01, 0.001, D::Shrink},
      {0.0, 0.0, 0.01, 0.001, D::Keep},        {0.01, 0.0, 0.01, 0.001, D::Keep},
      {0.0, 0.001, 0.01, 0.001, D::Keep},      {0.0011, 0.0011, 0.01, 0.001, D::Keep},
      {0.02, 0.03, 0.01, 0.001, D::Shrink},    {0.03, 0.02, 0.01, 0.001, D::Grow},
      {-0.01, -0.02, 0.01, 0.001, D::Keep},    {-0.02, -0.01, 0.01, 0.001, D::Keep},
      {-0.01, 0.005, 0.01, 0.001, D::Shrink},  {0.011, -0.5, 0.01, 0.001, D::Grow},
      {0.0, 0.0, 0.0, 0.0, D::Keep},           {1e-9, 0.0, 0.0, 0.0, D::Grow},
      {0.0, 1e-9, 0.0, 0.0, D::Shrink},        {1e-9, 1e-9, 0.0, 0.0, D::Grow},
      {0.4, 0.3, 0.5, 0.5, D::Keep},           {0.6, 0.3, 0.5, 0.5, D::Grow},
      {0.3, 0.6, 0.5, 0.5, D::Shrink},         {0.6, 0.6, 0.5, 0.5, D::Grow},
      {0.5, 0.4, 0.5, 0.5, D::Keep},           {0.4, 0.5, 0.5, 0.5, D::Keep},
      {0.002, 0.0015, 0.001, 0.001, D::Grow},  {0.0015, 0.002, 0.001, 0.001, D::Shrink},
      {0.0005, 0.002, 0.001, 0.001, D::Shrink}, {0.002, 0.0005, 0.001, 0.001, D::Grow},
      {0.0009, 0.0008, 0.001, 0.001, D::Keep}, {0.0008, 0.0009, 0.001, 0.001, D::Keep},
      {-1.0, 1.0, 0.01, 0.001, D::Shrink},     {1.0, -1.0, 0.01, 0.001, D::Grow},
  };
  int ok = 0;
  int total = 0;
  std::string first_bad;
  for (const auto& c : cases) {
    ++total;
    const auto got = decide_resize(c.dg, c.ds, c.tg, c.ts);
    if (got == c.expected) {
      ++ok;
    } else if (first_bad.empty()) {
      first_bad = "; first mismatch at case " + std::to_string(total);
    }
  }
  return {ok == total && total == 32,
          std::to_string(ok) + "/" + std::to_string(total) + " cases match" + first_bad};
}

Outcome swap_soundness() {
  auto stream = make_synthetic_stream("AGR_a", 100000, 1);
  auto schema = std::make_shared<const Schema>(stream->schema());
  EsrfEnsemble e(schema, EsrfConfig{});
  std::uint64_t n = 0;
  std::uint64_t swaps = 0;
  std::uint64_t violations = 0;
  std::size_t max_fs = 0;
  while (auto inst = stream->next()) {
    const auto r = e.train_on_instance(*inst);
    ++n;
    bool ok = e.candidates().size() == 10 && e.grow_set().size() == 1 &&
              e.forefront().size() >= 10 && e.forefront().size() <= 89;
    if (r.swap.swapped) {
      ++swaps;
      ok = ok && r.swap.candidate_max_weight > r.swap.forefront_min_weight;
    } else {
      double cs_max = 0.0;
      double fs_min = 1.0;
      for (const auto& m : e.candidates()) cs_max = std::max(cs_max, member_weight(m));
      for (const auto& m : e.forefront()) fs_min = std::min(fs_min, member_weight(m));
      ok = ok && cs_max <= fs_min;
    }
    violations += ok ? 0 : 1;
    max_fs = std::max(max_fs, e.forefront().size());
  }
  return {violations == 0 && n == 100000,
          std::to_string(n) + " instances, " + std::to_string(violations) + " violations, " +
              std::to_string(swaps) + " swaps, max |FS| " + std::to_string(max_fs)};
}

Outcome ewma_suite() {
  Rng rng(2000);
  const double alpha = EwmaAccuracy::alpha_for_window(2000);
  bool bounded = true;
  EwmaAccuracy e(alpha, 0.5);
  EwmaAccuracy fast(0.3, 0.5);
  for (int i = 0; i < 1000000; ++i) {
    const double s = uniform01(rng) < 0.5 ? 0.0 : 1.0;
    e.update(s);
    fast.update(s);
    bounded = bounded && e.value() >= 0.0 && e.value() <= 1.0 && fast.value() >= 0.0 &&
              fast.value() <= 1.0;
  }
  double worst = 0.0;
  for (double start : {0.0, 0.25, 0.7, 1.0}) {
    for (double c : {0.0, 1.0}) {
      EwmaAccuracy t(alpha, start);
      for (int k = 1; k <= 20000; ++k) {
        t.update(c);
        const double closed = c + (start - c) * std::pow(1.0 - alpha, k);
        worst = std::max(worst, std::abs(t.value() - closed));
      }
    }
  }
  const double alpha_err = std::abs(alpha - kAlphaW2000);
  return {bounded && worst <= kEwmaDecayTol && alpha_err <= kAlphaTol,
          std::string("bounded=") + (bounded ? "yes" : "no") +
              ", max decay error " + fmt("%.2e", worst) + ", alpha error " + fmt("%.2e", alpha_err)};
}

Outcome hoeffding_oracle() {
  double worst = 0.0;
  for (const auto& row : kHoeffdingTable) {
    const double got = hoeffding_bound(std::log2(static_cast<double>(row.classes)), row.delta, row.n);
    worst = std::max(worst, std::abs(got - row.eps) / row.eps);
  }
  Rng rng(31);
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const double r = 0.1 + uniform01(rng) * 6.0;
    const double d = 1e-9 + uniform01(rng) * 0.5;
    const double n1 = 1.0 + std::floor(uniform01(rng) * 1e6);
    const double n2 = n1 + 1.0 + std::floor(uniform01(rng) * 1e6);
    const double r2 = r + 1e-3 + uniform01(rng);
    const double d2 = d + 1e-6 + uniform01(rng) * (0.99 - d);
    if (!(hoeffding_bound(r, d, n2) < hoeffding_bound(r, d, n1))) ++violations;
    if (!(hoeffding_bound(r2, d, n1) > hoeffding_bound(r, d, n1))) ++violations;
    if (!(hoeffding_bound(r, d2, n1) < hoeffding_bound(r, d, n1))) ++violations;
  }
  return {worst <= kHoeffdingRelTol && violations == 0,
          std::to_string(std::size(kHoeffdingTable)) + " oracle rows, max relative error " +
              fmt("%.2e", worst) + ", " + std::to_string(violations) + " monotonicity violations"};
}

Outcome drift_equivalence() {
  Rng rng(77);
  int mismatched = 0;
  int changes = 0;
  for (int seq = 0; seq < 1000; ++seq) {
    const int length = 1 + static_cast<int>(uniform01(rng) * 256);
    const double p0 = uniform01(rng);
    const double p1 = uniform01(rng);
    const int shift = static_cast<int>(uniform01(rng) * length);
    AdwinConfig cfg;
    cfg.delta = 0.002;
    cfg.clock = seq % 2 == 0 ? 1 : 32;
    cfg.max_buckets = 1024;
    AdaptiveWindowDetector d(cfg);
    test::BruteForceWindow oracle(cfg.delta, cfg.clock, cfg.min_window, cfg.min_subwindow);
    bool same = true;
    for (int i = 0; i < length; ++i) {
      const int x = uniform01(rng) < (i < shift ? p0 : p1) ? 1 : 0;
      const bool a = d.update(x) == ChangeFlag::Change;
      const bool b = oracle.update(x);
      same = same && a == b && d.width() == oracle.width();
      changes += a ? 1 : 0;
    }
    mismatched += same ? 0 : 1;
  }
  return {mismatched == 0, "1000 sequences, " + std::to_string(mismatched) + " mismatched, " +
                               std::to_string(changes) + " changes detected"};
}

std::filesystem::path work_dir() {
  auto dir = std::filesystem::temp_directory_path() / "esrf_acceptance";
  std::filesystem::create_directories(dir);
  return dir;
}

RunConfig prequential(const std::string& stream, std::uint64_t n) {
  RunConfig c;
  c.stream = stream;
  c.instances = n;
  c.folds = 1;
  c.report_interval = n;
  c.seed = 1;
  return c;
}

RunConfig arf(const std::string& stream, std::uint64_t n, int trees) {
  RunConfig c = prequential(stream, n);
  c.learner = LearnerKind::Arf;
  c.n_trees = trees;
  return c;
}

RunConfig esrf(const std::string& stream, std::uint64_t n, double tg, double ts) {
  RunConfig c = prequential(stream, n);
  c.learner = LearnerKind::Esrf;
  c.tg = tg;
  c.ts = ts;
  return c;
}

Outcome determinism() {
  const auto dir = work_dir() / "determinism";
  std::filesystem::remove_all(dir);
  std::vector<std::string> rows;
  for (int threads : {1, 8}) {
    RunConfig c = esrf("SEA_a", 100000, 0.01, 0.001);
    c.seed = 42;
    c.threads = threads;
    c.out = (dir / std::to_string(threads)).string();
    run_experiment(c);
    auto read = read_results((dir / std::to_string(threads) / "results.csv").string());
    if (read.size() != 1) return {false, "expected one row per run"};
    read[0].time_s = 0.0;
    read[0].per_sample_us = 0.0;
    read[0].speedup.reset();
    rows.push_back(format_result_row(read[0]));
  }
  return {rows[0] == rows[1], rows[0] == rows[1] ? "rows identical excluding time fields"
                                                 : "rows differ: " + rows[0] + " vs " + rows[1]};
}

Outcome trend() {
  int small_fs = 0;
  bool deltas_ok = true;
  bool times_ok = true;
  std::string detail;
  for (const std::string stream : {"SEA_a", "AGR_a", "LED_a"}) {
    const auto base = evaluate(arf(stream, kTrendInstances, kTrendBaselineTrees));
    const auto row = evaluate(esrf(stream, kTrendInstances, 0.01, 0.001));
    const double delta = accuracy_delta(row.accuracy_pct, base.accuracy_pct);
    const double ratio = row.per_sample_us / base.per_sample_us;
    small_fs += row.size_mean <= kTrendMaxMeanFs ? 1 : 0;
    deltas_ok = deltas_ok && std::abs(delta) <= kTrendMaxAbsDelta;
    times_ok = times_ok && ratio <= kTrendMaxTimeRatio;
    detail += stream + ": ARF" + std::to_string(kTrendBaselineTrees) + " " +
              fmt("%.2f%%", base.accuracy_pct) + ", ESRF " + fmt("%.2f%%", row.accuracy_pct) +
              " (delta " + fmt("%+.2f", delta) + " pp), mean |FS| " + fmt("%.2f", row.size_mean) +
              ", time ratio " + fmt("%.3f", ratio) + "; ";
  }
  return {small_fs >= kTrendMeanFsStreams && deltas_ok && times_ok, detail};
}

Outcome convergence() {
  const int sizes[] = {10, 20, 30, 50};
  std::vector<double> acc;
  std::string detail;
  for (int n : sizes) {
    acc.push_back(evaluate(arf("SEA_a", kTrendInstances, n)).accuracy_pct);
    detail += "ARF" + std::to_string(n) + " " + fmt("%.3f%%", acc.back()) + "; ";
  }
  bool monotone = true;
  for (std::size_t i = 1; i < acc.size(); ++i) monotone = monotone && acc[i] >= acc[i - 1] - kCurveNoise;
  const double early = acc[2] - acc[0];
  const double late = acc[3] - acc[2];
  detail += "gain 10->30 " + fmt("%.3f", early) + ", 30->50 " + fmt("%.3f", late);
  return {monotone && late < early, detail};
}

Outcome sensitivity() {
  const auto base = evaluate(arf("AGR_a", kSensitivityInstances, 100));
  const auto permissive = evaluate(esrf("AGR_a", kSensitivityInstances, 0.001, 0.001));
  const auto restrictive = evaluate(esrf("AGR_a", kSensitivityInstances, 0.5, 0.5));
  const double dp = accuracy_delta(permissive.accuracy_pct, base.accuracy_pct);
  const double dr = accuracy_delta(restrictive.accuracy_pct, base.accuracy_pct);
  const bool sizes = permissive.size_mean >= restrictive.size_mean;
  const bool deltas = dp >= dr - kSensitivityTol;
  return {sizes && deltas,
          "AGR_a vs ARF100 " + fmt("%.2f%%", base.accuracy_pct) + ": permissive mean |FS| " +
              fmt("%.2f", permissive.size_mean) + " delta " + fmt("%+.2f", dp) +
              " pp; restrictive mean |FS| " + fmt("%.2f", restrictive.size_mean) + " delta " +
              fmt("%+.2f", dr) + " pp"};
}

struct Event {
  char kind;
  int id;
};

class AuditLearner final : public Classifier {
 public:
  explicit AuditLearner(std::shared_ptr<std::vector<Event>> log) : log_(std::move(log)) {}
  int predict(const Instance& x) const override {
    log_->push_back({'p', static_cast<int>(x.values[0])});
    return 0;
  }
  void train(const Instance& x) override { log_->push_back({'t', static_cast<int>(x.values[0])}); }
  std::size_t voting_size() const override { return 1; }

 private:
  std::shared_ptr<std::vector<Event>> log_;
};

class IndexStream final : public InstanceStream {
 public:
  explicit IndexStream(int n)
      : schema_({AttributeSpec::numeric("id")}, {"a", "b"}), n_(n) {}
  const Schema& schema() const override { return schema_; }
  std::optional<Instance> next() override {
    if (i_ >= n_) return std::nullopt;
    const int id = i_++;
    return Instance{{static_cast<double>(id)}, id % 2, 1.0};
  }

 private:
  Schema schema_;
  int n_;
  int i_ = 0;
};

bool test_then_train(const std::vector<Event>& log, int n, int fold, int k) {
  int last = -1;
  int trains = 0;
  for (const auto& e : log) {
    if (e.kind == 'p') {
      if (e.id != last + 1) return false;
      last = e.id;
    } else {
      if (e.id != last) return false;
      if (fold >= 0 && e.id % k == fold) return false;
      ++trains;
    }
  }
  const int expected = fold < 0 ? n : n - (n + k - 1 - fold) / k;
  return last == n - 1 && trains == expected;
}

Outcome harness_audit() {
  const int n = 1000;
  auto log = std::make_shared<std::vector<Event>>();
  AuditLearner single(log);
  IndexStream s1(n);
  prequential_run(single, s1, EvalConfig{});
  const bool order_ok = test_then_train(*log, n, -1, 1);

  std::vector<std::shared_ptr<std::vector<Event>>> logs;
  EvalConfig cv;
  cv.mode = EvalConfig::Mode::KFoldCV;
  cv.folds = 10;
  IndexStream s2(n);
  kfold_cv_run(
      [&](int) {
        logs.push_back(std::make_shared<std::vector<Event>>());
        return std::make_unique<AuditLearner>(logs.back());
      },
      s2, cv);
  bool isolation_ok = logs.size() == 10;
  for (std::size_t j = 0; j < logs.size(); ++j) {
    isolation_ok = isolation_ok && test_then_train(*logs[j], n, static_cast<int>(j), 10);
  }

  const double sp = std::round(speedup(22670.86, 4423.66) * 100.0) / 100.0;
  const double dl = std::round(accuracy_delta(89.96, 89.73) * 100.0) / 100.0;
  const bool arithmetic_ok = sp == 5.12 && dl == 0.23;
  return {order_ok && isolation_ok && arithmetic_ok,
          std::string("test-then-train ") + (order_ok ? "ok" : "violated") + ", fold isolation " +
              (isolation_ok ? "ok" : "violated") + ", speedup " + fmt("%.2f", sp) + ", delta " +
              fmt("%.2f", dl)};
}

}  // namespace

int main() {
  report(1, "resize truth table", truth_table);
  report(2, "swap soundness and set sizes", swap_soundness);
  report(3, "EWMA suite", ewma_suite);
  report(4, "Hoeffding bound oracle", hoeffding_oracle);
  report(5, "drift detector brute-force equivalence", drift_equivalence);
  report(6, "thread-count determinism", determinism);
  report(7, "scaled trend reproduction", trend);
  report(8, "convergence curve", convergence);
  report(9, "threshold sensitivity direction", sensitivity);
  report(10, "harness audits", harness_audit);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
