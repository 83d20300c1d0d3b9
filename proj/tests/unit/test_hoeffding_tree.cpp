#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "esrf/common/errors.hpp"
#include "esrf/common/rng.hpp"
#include "esrf/streams/generators.hpp"
#include "esrf/tree/hoeffding_tree.hpp"
#include "oracles/constants.inc"
#include "support.hpp"

using namespace esrf;

namespace {

TreeConfig all_attributes(int attributes) {
  TreeConfig c;
  c.subspace_size = attributes;
  return c;
}

double brute_entropy(const std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) total += c;
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) h -= (c / total) * std::log2(c / total);
  }
  return h;
}

}  // namespace

TEST_CASE("hoeffding bound values") {
  CHECK(hoeffding_bound(1.0, 0.05, 1000.0) == doctest::Approx(kBoundR1D005N1000).epsilon(1e-13));
  CHECK(std::abs(hoeffding_bound(1.0, 0.05, 1000.0) - 0.03871) < 1e-5);
  for (double n : {1.0, 7.0, 1234.5}) {
    CHECK(hoeffding_bound(2.0, 0.01, 4.0 * n) / hoeffding_bound(2.0, 0.01, n) ==
          doctest::Approx(0.5).epsilon(1e-15));
  }
  CHECK(hoeffding_bound(1.0, 1.0 - 1e-12, 1.0) < 1e-6);
  CHECK(hoeffding_bound(1.0, 0.01, 100.0) > hoeffding_bound(1.0, 0.01, 101.0));
  CHECK(hoeffding_bound(1.0, 0.001, 100.0) > hoeffding_bound(1.0, 0.01, 100.0));
}

TEST_CASE("hoeffding bound preconditions") {
  CHECK_THROWS_AS(hoeffding_bound(0.0, 0.1, 10), DomainError);
  CHECK_THROWS_AS(hoeffding_bound(1.0, 0.0, 10), DomainError);
  CHECK_THROWS_AS(hoeffding_bound(1.0, 1.0, 10), DomainError);
  CHECK_THROWS_AS(hoeffding_bound(1.0, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(hoeffding_bound(1.0, 0.5, -3.0), DomainError);
  CHECK_THROWS_AS(hoeffding_bound(std::nan(""), 0.5, 1.0), DomainError);
}

TEST_CASE("tree config validation and subspace size") {
  TreeConfig c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.resolved_subspace_size(9) == 4);
  CHECK(c.resolved_subspace_size(24) == 5);
  CHECK(c.resolved_subspace_size(1) == 1);
  c.split_confidence = 1.0;
  CHECK_THROWS(c.validate());
  c = TreeConfig{};
  c.grace_period = 0;
  CHECK_THROWS(c.validate());
  c = TreeConfig{};
  c.tie_threshold = -0.1;
  CHECK_THROWS(c.validate());
}

TEST_CASE("entropy and information gain against direct formulas") {
  CHECK(entropy(std::vector<double>{1, 1}) == doctest::Approx(1.0));
  CHECK(entropy(std::vector<double>{5, 0}) == 0.0);
  const std::vector<double> pre = {6, 4};
  const std::vector<std::vector<double>> post = {{5, 1}, {1, 3}};
  const double expected = brute_entropy(pre) - (6.0 / 10) * brute_entropy(post[0]) -
                          (4.0 / 10) * brute_entropy(post[1]);
  CHECK(info_gain(pre, post) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(info_gain(pre, {{6, 4}, {0, 0}}) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("split rule") {
  CHECK(should_split(0.9, 0.1, 0.2, 0.05));
  CHECK_FALSE(should_split(0.50, 0.49, 0.3, 0.05));
  CHECK(should_split(0.50, 0.49, 0.04, 0.05));
  CHECK_FALSE(should_split(0.0, 0.0, 0.01, 0.05));
}

TEST_CASE("weight-zero training is a no-op") {
  auto schema = test::numeric_schema(2, 2);
  HoeffdingTree tree(schema, TreeConfig{}, Rng(1));
  tree.train(Instance{{0.1, 0.2}, 1, 1.0});
  const std::string before = tree.dump();
  const auto scores = tree.predict(Instance{{0.1, 0.2}, 0, 1.0});
  tree.train(Instance{{0.9, 0.9}, 0, 0.0});
  tree.train(Instance{{0.9, 0.9}, 0, 1.0}, 0.0);
  CHECK(tree.dump() == before);
  CHECK(tree.instances_seen() == 1.0);
  CHECK(tree.predict(Instance{{0.1, 0.2}, 0, 1.0}) == scores);
}

TEST_CASE("schema mismatch") {
  auto schema = test::numeric_schema(2, 2);
  HoeffdingTree tree(schema, TreeConfig{}, Rng(1));
  CHECK_THROWS_AS(tree.train(Instance{{0.1}, 0, 1.0}), SchemaMismatch);
  CHECK_THROWS_AS(tree.train(Instance{{0.1, 0.2}, 2, 1.0}), SchemaMismatch);
  CHECK_THROWS_AS(tree.predict(Instance{{0.1, 0.2, 0.3}, 0, 1.0}), SchemaMismatch);
}

TEST_CASE("empty tree and single instance predictions") {
  auto schema = test::numeric_schema(3, 4);
  HoeffdingTree tree(schema, TreeConfig{}, Rng(3));
  CHECK(tree.predict(Instance{{1, 2, 3}, 0, 1}) == std::vector<double>(4, 0.0));
  tree.train(Instance{{1, 2, 3}, 2, 1});
  const auto s = tree.predict(Instance{{1, 2, 3}, 0, 1});
  CHECK(std::max_element(s.begin(), s.end()) - s.begin() == 2);
}

TEST_CASE("majority-class leaf scores are the class counts") {
  auto schema = test::numeric_schema(1, 2);
  TreeConfig cfg;
  cfg.leaf_prediction = LeafPrediction::MajorityClass;
  cfg.grace_period = 1000;
  HoeffdingTree tree(schema, cfg, Rng(1));
  for (int i = 0; i < 3; ++i) tree.train(Instance{{0.0}, 0, 1});
  for (int i = 0; i < 7; ++i) tree.train(Instance{{1.0}, 1, 1});
  CHECK(tree.predict(Instance{{0.5}, 0, 1}) == std::vector<double>{3, 7});
}

TEST_CASE("naive Bayes leaf matches a closed-form Gaussian naive Bayes") {
  auto schema = test::numeric_schema(2, 2);
  TreeConfig cfg = all_attributes(2);
  cfg.grace_period = 100000;
  HoeffdingTree tree(schema, cfg, Rng(5));

  Rng rng(77);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Instance> data;
  for (int i = 0; i < 400; ++i) {
    const int y = i % 3 == 0 ? 1 : 0;
    const double cx = y ? 2.0 : -1.0;
    const double cy = y ? -0.5 : 1.5;
    data.push_back(Instance{{cx + noise(rng), cy + 0.5 * noise(rng)}, y, 1.0});
  }
  for (const auto& x : data) tree.train(x);
  const auto& leaf = *tree.nodes()[0].leaf;
  REQUIRE_FALSE(leaf.mc_correct > leaf.nb_correct);

  // Two-pass per-class mean and sample variance.
  double count[2] = {0, 0};
  double mean[2][2] = {};
  double var[2][2] = {};
  for (const auto& x : data) {
    count[x.class_index] += 1;
    for (int a = 0; a < 2; ++a) mean[x.class_index][a] += x.values[a];
  }
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < 2; ++a) mean[c][a] /= count[c];
  }
  for (const auto& x : data) {
    for (int a = 0; a < 2; ++a) {
      const double d = x.values[a] - mean[x.class_index][a];
      var[x.class_index][a] += d * d;
    }
  }
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < 2; ++a) var[c][a] /= count[c] - 1;
  }

  for (const auto& probe : {Instance{{0.3, 0.4}, 0, 1}, Instance{{2.5, -1.0}, 0, 1},
                            Instance{{-1.2, 1.9}, 0, 1}}) {
    const auto scores = tree.predict(probe);
    for (int c = 0; c < 2; ++c) {
      double expected = count[c] / 400.0;
      for (int a = 0; a < 2; ++a) {
        const double d = probe.values[a] - mean[c][a];
        expected *= std::exp(-d * d / (2 * var[c][a])) / std::sqrt(2 * std::numbers::pi * var[c][a]);
      }
      CHECK(scores[c] == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("separable single attribute gives one root split at the best empirical threshold") {
  auto schema = test::numeric_schema(1, 2);
  HoeffdingTree tree(schema, TreeConfig{}, Rng(9));
  Rng rng(10);
  std::vector<Instance> data;
  for (int i = 0; i < 1000; ++i) {
    const int y = static_cast<int>(rng() % 2);
    const double x = y == 0 ? 0.4 * uniform01(rng) : 0.6 + 0.4 * uniform01(rng);
    data.push_back(Instance{{x}, y, 1.0});
  }
  double lo = 1.0;
  double hi = 0.0;
  double max0 = 0.0;
  double min1 = 1.0;
  for (const auto& d : data) {
    tree.train(d);
    lo = std::min(lo, d.values[0]);
    hi = std::max(hi, d.values[0]);
    if (d.class_index == 0) {
      max0 = std::max(max0, d.values[0]);
    } else {
      min1 = std::min(min1, d.values[0]);
    }
  }
  REQUIRE_FALSE(tree.nodes()[0].is_leaf());
  CHECK(tree.num_leaves() == 2);
  const SplitTest& split = tree.nodes()[0].split;
  CHECK(split.kind == SplitTest::Kind::NumericBinary);
  CHECK(split.threshold >= max0);
  CHECK(split.threshold < min1);

  // Empirical gain of every candidate the observer could offer: none beats the chosen one.
  auto empirical_gain = [&](double t) {
    std::vector<double> pre(2, 0.0);
    std::vector<std::vector<double>> post(2, std::vector<double>(2, 0.0));
    for (const auto& d : data) {
      pre[d.class_index] += 1;
      post[d.values[0] <= t ? 0 : 1][d.class_index] += 1;
    }
    double h = brute_entropy(pre);
    for (const auto& b : post) {
      const double n = b[0] + b[1];
      if (n > 0) h -= n / 1000.0 * brute_entropy(b);
    }
    return h;
  };
  const double chosen = empirical_gain(split.threshold);
  CHECK(chosen == doctest::Approx(empirical_gain(0.5)));  // a perfect split removes all entropy
  for (int k = 1; k <= 200; ++k) CHECK(empirical_gain(lo + (hi - lo) * k / 201.0) <= chosen + 1e-12);

  for (const auto& d : data) {
    const auto s = tree.predict(d);
    CHECK(std::max_element(s.begin(), s.end()) - s.begin() == d.class_index);
  }
}

TEST_CASE("single-class data never splits") {
  auto schema = test::numeric_schema(3, 2);
  TreeConfig cfg = all_attributes(3);
  cfg.grace_period = 20;
  HoeffdingTree tree(schema, cfg, Rng(2));
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    tree.train(Instance{{uniform01(rng), uniform01(rng), uniform01(rng)}, 1, 1.0});
  }
  CHECK(tree.num_leaves() == 1);
  const SplitOutcome out = tree.attempt_split(0);
  CHECK_FALSE(out.split);
  CHECK(out.best_merit <= 0.0);
}

TEST_CASE("nominal attributes split multiway") {
  auto schema = std::make_shared<const Schema>(
      std::vector<AttributeSpec>{AttributeSpec::nominal("n", {"a", "b", "c"}),
                                 AttributeSpec::numeric("x")},
      std::vector<std::string>{"p", "q", "r"});
  TreeConfig cfg = all_attributes(2);
  HoeffdingTree tree(schema, cfg, Rng(4));
  Rng rng(5);
  for (int i = 0; i < 600; ++i) {
    const int v = static_cast<int>(rng() % 3);
    tree.train(Instance{{double(v), uniform01(rng)}, v, 1.0});
  }
  REQUIRE_FALSE(tree.nodes()[0].is_leaf());
  CHECK(tree.nodes()[0].split.kind == SplitTest::Kind::Nominal);
  CHECK(tree.nodes()[0].split.attribute == 0);
  CHECK(tree.nodes()[0].children.size() == 3);
}

TEST_CASE("count conservation, subspace discipline and depth bound on a drifting stream") {
  AgrawalGenerator gen(AgrawalParams{.function = 4}, 8);
  auto schema = std::make_shared<const Schema>(gen.schema());
  TreeConfig cfg;
  cfg.max_depth = 4;
  HoeffdingTree tree(schema, cfg, Rng(12));
  const std::size_t m = cfg.resolved_subspace_size(schema->num_attributes());
  for (int i = 1; i <= 30000; ++i) {
    tree.train(gen.synth_next());
    if (i % 1000 != 0) continue;
    for (const auto& node : tree.nodes()) {
      REQUIRE(node.subspace.size() == m);
      REQUIRE(std::is_sorted(node.subspace.begin(), node.subspace.end()));
      REQUIRE(node.depth <= 4);
      if (node.is_leaf()) {
        double sum = 0.0;
        for (double c : node.leaf->class_counts) {
          REQUIRE(c >= 0.0);
          sum += c;
        }
        REQUIRE(sum == doctest::Approx(node.leaf->weight_seen()).epsilon(1e-12));
      } else {
        const auto& s = node.subspace;
        REQUIRE(std::find(s.begin(), s.end(), node.split.attribute) != s.end());
      }
    }
  }
  CHECK(tree.num_leaves() > 1);
  CHECK(tree.depth() <= 4);
}

TEST_CASE("larger confidence never blocks a split the smaller one allows") {
  auto schema = test::numeric_schema(3, 2);
  Rng data_rng(21);
  int agreements = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double d1 = std::pow(10.0, -1.0 - 6.0 * uniform01(data_rng));
    const double d2 = d1 * (1.0 + 50.0 * uniform01(data_rng));
    TreeConfig c1 = all_attributes(3);
    c1.tie_threshold = 0.0;
    c1.grace_period = 1000000;
    c1.split_confidence = d1;
    TreeConfig c2 = c1;
    c2.split_confidence = std::min(d2, 0.999);
    HoeffdingTree t1(schema, c1, Rng(trial));
    HoeffdingTree t2(schema, c2, Rng(trial));
    const int n = 20 + static_cast<int>(data_rng() % 200);
    const double signal = uniform01(data_rng);
    for (int i = 0; i < n; ++i) {
      const int y = static_cast<int>(data_rng() % 2);
      const Instance x{{y * signal + uniform01(data_rng), uniform01(data_rng), uniform01(data_rng)}, y, 1.0};
      t1.train(x);
      t2.train(x);
    }
    const bool s1 = t1.attempt_split(0).split;
    const bool s2 = t2.attempt_split(0).split;
    if (s1) CHECK(s2);
    agreements += s1 == s2;
  }
  CHECK(agreements > 0);
}

TEST_CASE("determinism") {
  SeaGenerator gen(SeaParams{}, 3);
  auto schema = std::make_shared<const Schema>(gen.schema());
  HoeffdingTree a(schema, TreeConfig{}, Rng(42));
  HoeffdingTree b(schema, TreeConfig{}, Rng(42));
  for (int i = 0; i < 5000; ++i) {
    const auto x = gen.synth_next();
    REQUIRE(a.predict(x) == b.predict(x));
    a.train(x);
    b.train(x);
  }
  CHECK(a.dump() == b.dump());
}

TEST_CASE("reset") {
  SeaGenerator gen(SeaParams{}, 3);
  auto schema = std::make_shared<const Schema>(gen.schema());
  TreeConfig cfg;
  cfg.subspace_size = 2;
  HoeffdingTree tree(schema, cfg, Rng(8));
  std::vector<Instance> data;
  for (int i = 0; i < 100; ++i) data.push_back(gen.synth_next());
  for (const auto& x : data) tree.train(x);

  const Rng before_reset = tree.rng();
  tree.reset();
  CHECK(tree.num_leaves() == 1);
  CHECK(tree.instances_seen() == 0.0);
  CHECK(tree.predict(data[0]) == std::vector<double>(2, 0.0));
  const std::string once = tree.dump();

  HoeffdingTree fresh(schema, cfg, before_reset);
  for (const auto& x : data) {
    tree.train(x);
    fresh.train(x);
  }
  for (const auto& x : data) CHECK(tree.predict(x) == fresh.predict(x));
  CHECK(tree.dump() == fresh.dump());

  HoeffdingTree twice(schema, cfg, Rng(8));
  twice.reset();
  twice.reset();
  CHECK(twice.num_leaves() == 1);
  CHECK(twice.nodes().size() == 1);
  CHECK(once.find("leaf") != std::string::npos);
  CHECK(!(twice.rng() == Rng(8)));
}
