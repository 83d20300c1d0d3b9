#include "esrf/streams/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace esrf {

namespace {

int uniform_int(Rng& rng, int n) {
  return std::min(n - 1, static_cast<int>(uniform01(rng) * n));
}

std::vector<std::string> numbered(const std::string& prefix, int first, int count) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(prefix + std::to_string(first + i));
  return out;
}

std::vector<std::string> class_names(int n) { return numbered("class", 1, n); }

double perturb(double value, double lo, double hi, double fraction, Rng& rng) {
  value += (hi - lo) * fraction * (2.0 * uniform01(rng) - 1.0);
  return std::clamp(value, lo, hi);
}

bool between(double lo, double v, double hi) { return lo <= v && v <= hi; }

Schema sea_schema() {
  return Schema({AttributeSpec::numeric("attrib1"), AttributeSpec::numeric("attrib2"),
                 AttributeSpec::numeric("attrib3")},
                {"groupA", "groupB"});
}

Schema agrawal_schema() {
  return Schema({AttributeSpec::numeric("salary"), AttributeSpec::numeric("commission"),
                 AttributeSpec::numeric("age"),
                 AttributeSpec::nominal("elevel", numbered("level", 0, 5)),
                 AttributeSpec::nominal("car", numbered("car", 1, 20)),
                 AttributeSpec::nominal("zipcode", numbered("zipcode", 1, 9)),
                 AttributeSpec::numeric("hvalue"), AttributeSpec::numeric("hyears"),
                 AttributeSpec::numeric("loan")},
                {"groupA", "groupB"});
}

Schema led_schema() {
  std::vector<AttributeSpec> attrs;
  for (int i = 0; i < LedGenerator::kAttributes; ++i) {
    attrs.push_back(AttributeSpec::nominal("att" + std::to_string(i + 1), {"0", "1"}));
  }
  return Schema(std::move(attrs), numbered("", 0, 10));
}

Schema rtg_schema(const RtgParams& p) {
  std::vector<AttributeSpec> attrs;
  for (int i = 0; i < p.num_nominal; ++i) {
    attrs.push_back(
        AttributeSpec::nominal("nominal" + std::to_string(i + 1), numbered("value", 1, p.values_per_nominal)));
  }
  for (int i = 0; i < p.num_numeric; ++i) {
    attrs.push_back(AttributeSpec::numeric("numeric" + std::to_string(i + 1)));
  }
  return Schema(std::move(attrs), class_names(p.num_classes));
}

Schema numeric_schema(int attributes, int classes) {
  std::vector<AttributeSpec> attrs;
  for (int i = 0; i < attributes; ++i) {
    attrs.push_back(AttributeSpec::numeric("att" + std::to_string(i + 1)));
  }
  return Schema(std::move(attrs), class_names(classes));
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Sea: return "sea";
    case GeneratorKind::Agrawal: return "agrawal";
    case GeneratorKind::Led: return "led";
    case GeneratorKind::Rtg: return "rtg";
    case GeneratorKind::Rbf: return "rbf";
    case GeneratorKind::Hyperplane: return "hyperplane";
  }
  return "unknown";
}

GeneratorKind generator_kind_from_string(const std::string& name) {
  for (auto k : {GeneratorKind::Sea, GeneratorKind::Agrawal, GeneratorKind::Led,
                 GeneratorKind::Rtg, GeneratorKind::Rbf, GeneratorKind::Hyperplane}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown generator '" + name + "'");
}

Instance Generator::synth_next() {
  Instance inst = generate();
  ++counter_;
  return inst;
}

// SEA

SeaGenerator::SeaGenerator(SeaParams params, std::uint64_t seed)
    : Generator(sea_schema(), seed), params_(params) {
  require(params_.function >= 1 && params_.function <= 4, "SEA function must be in 1..4");
  require(params_.noise >= 0.0 && params_.noise <= 1.0, "SEA noise must be in [0,1]");
}

double SeaGenerator::threshold() const noexcept {
  constexpr double thresholds[] = {8.0, 9.0, 7.0, 9.5};
  return thresholds[params_.function - 1];
}

Instance SeaGenerator::generate() {
  Instance inst;
  inst.values = {10.0 * uniform01(rng_), 10.0 * uniform01(rng_), 10.0 * uniform01(rng_)};
  int label = classify(threshold(), inst.values[0], inst.values[1]);
  if (uniform01(rng_) < params_.noise) label = 1 - label;
  inst.class_index = label;
  return inst;
}

// Agrawal

AgrawalGenerator::AgrawalGenerator(AgrawalParams params, std::uint64_t seed)
    : Generator(agrawal_schema(), seed), params_(params) {
  require(params_.function >= 1 && params_.function <= 10, "Agrawal function must be in 1..10");
  require(params_.perturbation >= 0.0 && params_.perturbation <= 1.0,
          "Agrawal perturbation must be in [0,1]");
}

int AgrawalGenerator::classify(int function, const AgrawalRecord& r) {
  const double salary = r.salary;
  const double age = r.age;
  const int elevel = r.elevel;
  const double loan = r.loan;
  const double income = salary + r.commission;
  switch (function) {
    case 1:
      return (age < 40 || 60 <= age) ? 0 : 1;
    case 2:
      if (age < 40) return between(50000, salary, 100000) ? 0 : 1;
      if (age < 60) return between(75000, salary, 125000) ? 0 : 1;
      return between(25000, salary, 75000) ? 0 : 1;
    case 3:
      if (age < 40) return (elevel == 0 || elevel == 1) ? 0 : 1;
      if (age < 60) return (elevel >= 1 && elevel <= 3) ? 0 : 1;
      return (elevel >= 2 && elevel <= 4) ? 0 : 1;
    case 4:
      if (age < 40) {
        return (elevel == 0 || elevel == 1) ? (between(25000, salary, 75000) ? 0 : 1)
                                            : (between(50000, salary, 100000) ? 0 : 1);
      }
      if (age < 60) {
        return (elevel >= 1 && elevel <= 3) ? (between(50000, salary, 100000) ? 0 : 1)
                                            : (between(75000, salary, 125000) ? 0 : 1);
      }
      return (elevel >= 2 && elevel <= 4) ? (between(50000, salary, 100000) ? 0 : 1)
                                          : (between(25000, salary, 75000) ? 0 : 1);
    case 5:
      if (age < 40) {
        return between(50000, salary, 100000) ? (between(100000, loan, 300000) ? 0 : 1)
                                              : (between(200000, loan, 400000) ? 0 : 1);
      }
      if (age < 60) {
        return between(75000, salary, 125000) ? (between(200000, loan, 400000) ? 0 : 1)
                                              : (between(300000, loan, 500000) ? 0 : 1);
      }
      return between(25000, salary, 75000) ? (between(300000, loan, 500000) ? 0 : 1)
                                            : (between(100000, loan, 300000) ? 0 : 1);
    case 6:
      if (age < 40) return between(50000, income, 100000) ? 0 : 1;
      if (age < 60) return between(75000, income, 125000) ? 0 : 1;
      return between(25000, income, 75000) ? 0 : 1;
    case 7:
      return (2.0 * income / 3.0 - loan / 5.0 - 20000.0) > 0 ? 0 : 1;
    case 8:
      return (2.0 * income / 3.0 - 5000.0 * elevel - 20000.0) > 0 ? 0 : 1;
    case 9:
      return (2.0 * income / 3.0 - 5000.0 * elevel - loan / 5.0 - 10000.0) > 0 ? 0 : 1;
    case 10: {
      double equity = 0.0;
      if (r.hyears >= 20) equity = r.hvalue * (r.hyears - 20.0) / 10.0;
      return (2.0 * income / 3.0 - 5000.0 * elevel + equity / 5.0 - 10000.0) > 0 ? 0 : 1;
    }
    default:
      throw std::invalid_argument("Agrawal function must be in 1..10");
  }
}

Instance AgrawalGenerator::generate() {
  AgrawalRecord r{};
  r.salary = 20000.0 + 130000.0 * uniform01(rng_);
  r.commission = r.salary >= 75000.0 ? 0.0 : 10000.0 + 65000.0 * uniform01(rng_);
  r.age = 20 + uniform_int(rng_, 61);
  r.elevel = uniform_int(rng_, 5);
  r.car = uniform_int(rng_, 20);
  r.zipcode = uniform_int(rng_, 9);
  r.hvalue = (9.0 - r.zipcode) * 100000.0 * (0.5 + uniform01(rng_));
  r.hyears = 1 + uniform_int(rng_, 30);
  r.loan = 500000.0 * uniform01(rng_);
  const int label = classify(params_.function, r);

  const double p = params_.perturbation;
  if (p > 0.0) {
    r.salary = perturb(r.salary, 20000.0, 150000.0, p, rng_);
    if (r.commission > 0.0) r.commission = perturb(r.commission, 10000.0, 75000.0, p, rng_);
    r.age = std::round(perturb(r.age, 20.0, 80.0, p, rng_));
    r.hvalue = perturb(r.hvalue, 0.0, (9.0 - r.zipcode) * 150000.0, p, rng_);
    r.hyears = std::round(perturb(r.hyears, 1.0, 30.0, p, rng_));
    r.loan = perturb(r.loan, 0.0, 500000.0, p, rng_);
  }

  Instance inst;
  inst.values = {r.salary, r.commission, r.age, static_cast<double>(r.elevel),
                 static_cast<double>(r.car), static_cast<double>(r.zipcode),
                 r.hvalue, r.hyears, r.loan};
  inst.class_index = label;
  return inst;
}

// LED

const std::array<std::array<int, LedGenerator::kRelevant>, 10>& LedGenerator::segments() {
  static const std::array<std::array<int, kRelevant>, 10> table = {{
      {1, 1, 1, 0, 1, 1, 1},
      {0, 0, 1, 0, 0, 1, 0},
      {1, 0, 1, 1, 1, 0, 1},
      {1, 0, 1, 1, 0, 1, 1},
      {0, 1, 1, 1, 0, 1, 0},
      {1, 1, 0, 1, 0, 1, 1},
      {1, 1, 0, 1, 1, 1, 1},
      {1, 0, 1, 0, 0, 1, 0},
      {1, 1, 1, 1, 1, 1, 1},
      {1, 1, 1, 1, 0, 1, 1},
  }};
  return table;
}

LedGenerator::LedGenerator(LedParams params, std::uint64_t seed)
    : Generator(led_schema(), seed), params_(params) {
  require(params_.noise >= 0.0 && params_.noise <= 1.0, "LED noise must be in [0,1]");
  require(params_.drift_attributes >= 0 && params_.drift_attributes <= kRelevant,
          "LED drift attributes must be in 0..7");
  for (int i = 0; i < kAttributes; ++i) map_[i] = i;
  for (int i = 0; i < params_.drift_attributes; ++i) {
    std::swap(map_[i], map_[i + kRelevant]);
  }
}

Instance LedGenerator::generate() {
  const int digit = uniform_int(rng_, 10);
  std::array<int, kAttributes> raw{};
  for (int i = 0; i < kRelevant; ++i) {
    raw[i] = segments()[digit][i];
    if (uniform01(rng_) < params_.noise) raw[i] ^= 1;
  }
  for (int i = kRelevant; i < kAttributes; ++i) raw[i] = uniform01(rng_) < 0.5 ? 1 : 0;

  Instance inst;
  inst.values.resize(kAttributes);
  for (int i = 0; i < kAttributes; ++i) inst.values[i] = raw[map_[i]];
  inst.class_index = digit;
  return inst;
}

// Random tree

RtgGenerator::RtgGenerator(RtgParams params, std::uint64_t seed)
    : Generator(rtg_schema(params), seed), params_(params) {
  require(params_.num_classes >= 2, "RTG needs at least two classes");
  require(params_.max_depth >= 0 && params_.first_leaf_level >= 0, "RTG depths must be >= 0");
  require(params_.values_per_nominal >= 2, "RTG nominal attributes need >= 2 values");
  Rng model_rng(derive_seed(seed, 0x7265ULL));
  std::vector<int> candidates(params_.num_nominal);
  for (int i = 0; i < params_.num_nominal; ++i) candidates[i] = i;
  build(0, candidates, std::vector<double>(params_.num_numeric, 0.0),
        std::vector<double>(params_.num_numeric, 1.0), model_rng);
}

int RtgGenerator::build(int depth, std::vector<int> nominal_candidates, std::vector<double> lo,
                        std::vector<double> hi, Rng& model_rng) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  const int choices = static_cast<int>(nominal_candidates.size()) + params_.num_numeric;
  if (depth >= params_.max_depth || choices == 0 ||
      (depth >= params_.first_leaf_level &&
       params_.leaf_fraction >= 1.0 - uniform01(model_rng))) {
    nodes_[id].label = uniform_int(model_rng, params_.num_classes);
    return id;
  }
  const int chosen = uniform_int(model_rng, choices);
  if (chosen < static_cast<int>(nominal_candidates.size())) {
    const int attr = nominal_candidates[chosen];
    nodes_[id].attribute = attr;
    std::vector<int> remaining = nominal_candidates;
    remaining.erase(remaining.begin() + chosen);
    std::vector<int> children;
    for (int v = 0; v < params_.values_per_nominal; ++v) {
      children.push_back(build(depth + 1, remaining, lo, hi, model_rng));
    }
    nodes_[id].children = std::move(children);
  } else {
    const int numeric = chosen - static_cast<int>(nominal_candidates.size());
    const double split = lo[numeric] + (hi[numeric] - lo[numeric]) * uniform01(model_rng);
    nodes_[id].attribute = params_.num_nominal + numeric;
    nodes_[id].split_value = split;
    auto left_hi = hi;
    left_hi[numeric] = split;
    auto right_lo = lo;
    right_lo[numeric] = split;
    const int left = build(depth + 1, nominal_candidates, lo, left_hi, model_rng);
    const int right = build(depth + 1, nominal_candidates, right_lo, hi, model_rng);
    nodes_[id].children = {left, right};
  }
  return id;
}

int RtgGenerator::classify(const std::vector<double>& values) const {
  int node = 0;
  while (nodes_[node].attribute >= 0) {
    const Node& n = nodes_[node];
    if (n.attribute < params_.num_nominal) {
      node = n.children[static_cast<std::size_t>(values[n.attribute])];
    } else {
      node = values[n.attribute] < n.split_value ? n.children[0] : n.children[1];
    }
  }
  return nodes_[node].label;
}

Instance RtgGenerator::generate() {
  Instance inst;
  inst.values.resize(params_.num_nominal + params_.num_numeric);
  for (int i = 0; i < params_.num_nominal; ++i) {
    inst.values[i] = uniform_int(rng_, params_.values_per_nominal);
  }
  for (int i = 0; i < params_.num_numeric; ++i) {
    inst.values[params_.num_nominal + i] = uniform01(rng_);
  }
  inst.class_index = classify(inst.values);
  return inst;
}

// Radial basis function

RbfGenerator::RbfGenerator(RbfParams params, std::uint64_t seed)
    : Generator(numeric_schema(params.num_attributes, params.num_classes), seed),
      params_(params) {
  require(params_.num_centroids >= 1, "RBF needs at least one centroid");
  require(params_.num_drift_centroids >= 0 && params_.num_drift_centroids <= params_.num_centroids,
          "RBF drift centroids must be in 0..centroids");
  require(params_.speed >= 0.0, "RBF speed must be >= 0");
  Rng model_rng(derive_seed(seed, 0x726266ULL));
  double total = 0.0;
  for (int c = 0; c < params_.num_centroids; ++c) {
    Centroid centroid;
    centroid.centre.resize(params_.num_attributes);
    for (auto& x : centroid.centre) x = uniform01(model_rng);
    centroid.label = uniform_int(model_rng, params_.num_classes);
    centroid.stdev = uniform01(model_rng);
    total += uniform01(model_rng);
    cumulative_weights_.push_back(total);
    centroids_.push_back(std::move(centroid));
  }
  for (int c = 0; c < params_.num_drift_centroids; ++c) {
    auto& v = centroids_[c].velocity;
    v.resize(params_.num_attributes);
    double norm = 0.0;
    for (auto& x : v) {
      x = 2.0 * uniform01(model_rng) - 1.0;
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (auto& x : v) x = norm > 0.0 ? x / norm * params_.speed : 0.0;
  }
}

Instance RbfGenerator::generate() {
  if (params_.speed > 0.0) {
    for (int c = 0; c < params_.num_drift_centroids; ++c) {
      auto& centroid = centroids_[c];
      for (int j = 0; j < params_.num_attributes; ++j) {
        double& x = centroid.centre[j];
        x += centroid.velocity[j];
        if (x > 1.0 || x < 0.0) {
          x = x > 1.0 ? 1.0 : 0.0;
          centroid.velocity[j] = -centroid.velocity[j];
        }
      }
    }
  }
  const double pick = uniform01(rng_) * cumulative_weights_.back();
  const auto it = std::upper_bound(cumulative_weights_.begin(), cumulative_weights_.end(), pick);
  const auto index = std::min<std::size_t>(it - cumulative_weights_.begin(), centroids_.size() - 1);
  const Centroid& centroid = centroids_[index];

  std::vector<double> direction(params_.num_attributes);
  double norm = 0.0;
  for (auto& x : direction) {
    x = 2.0 * uniform01(rng_) - 1.0;
    norm += x * x;
  }
  norm = std::sqrt(norm);
  std::normal_distribution<double> gauss;
  const double magnitude = gauss(rng_) * centroid.stdev;
  const double scale = norm > 0.0 ? magnitude / norm : 0.0;

  Instance inst;
  inst.values.resize(params_.num_attributes);
  for (int j = 0; j < params_.num_attributes; ++j) {
    inst.values[j] = centroid.centre[j] + direction[j] * scale;
  }
  inst.class_index = centroid.label;
  return inst;
}

// Rotating hyperplane

HyperplaneGenerator::HyperplaneGenerator(HyperplaneParams params, std::uint64_t seed)
    : Generator(numeric_schema(params.num_attributes, 2), seed), params_(params) {
  require(params_.num_drift_attributes >= 0 &&
              params_.num_drift_attributes <= params_.num_attributes,
          "hyperplane drift attributes must be in 0..attributes");
  require(params_.noise >= 0.0 && params_.noise <= 1.0, "hyperplane noise must be in [0,1]");
  require(params_.sigma >= 0.0 && params_.sigma <= 1.0, "hyperplane sigma must be in [0,1]");
  Rng model_rng(derive_seed(seed, 0x6879ULL));
  weights_.resize(params_.num_attributes);
  directions_.assign(params_.num_attributes, 0.0);
  for (int i = 0; i < params_.num_attributes; ++i) {
    weights_[i] = uniform01(model_rng);
    if (i < params_.num_drift_attributes) directions_[i] = 1.0;
  }
}

int HyperplaneGenerator::classify(const std::vector<double>& weights,
                                  const std::vector<double>& x) {
  double sum = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    sum += weights[i] * x[i];
    total += weights[i];
  }
  return sum > 0.5 * total ? 1 : 0;
}

Instance HyperplaneGenerator::generate() {
  Instance inst;
  inst.values.resize(params_.num_attributes);
  for (auto& x : inst.values) x = uniform01(rng_);
  int label = classify(weights_, inst.values);
  if (uniform01(rng_) < params_.noise) label = 1 - label;
  inst.class_index = label;

  for (int i = 0; i < params_.num_drift_attributes; ++i) {
    weights_[i] += directions_[i] * params_.magnitude;
    if (params_.sigma > 0.0 && uniform01(rng_) < params_.sigma) directions_[i] = -directions_[i];
  }
  return inst;
}

}  // namespace esrf
