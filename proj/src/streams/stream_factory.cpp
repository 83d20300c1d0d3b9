#include "esrf/streams/stream_factory.hpp"

#include <charconv>
#include <set>
#include <stdexcept>

#include "esrf/streams/drift_stream.hpp"

namespace esrf {

namespace {

struct Preset {
  const char* name;
  const char* base;
  const char* target;  // nullptr: no drift
  bool gradual;
};

constexpr Preset kPresets[] = {
    {"AGR_a", "agrawal:function=1", "agrawal:function=2", false},
    {"AGR_g", "agrawal:function=1", "agrawal:function=2", true},
    {"HYPER", "hyperplane:magnitude=0.001", nullptr, false},
    {"LED_a", "led:drift_attributes=0", "led:drift_attributes=3", false},
    {"LED_g", "led:drift_attributes=0", "led:drift_attributes=3", true},
    {"RBF_m", "rbf:speed=0.0001", nullptr, false},
    {"RBF_f", "rbf:speed=0.001", nullptr, false},
    {"RTG", "rtg", nullptr, false},
    {"SEA_a", "sea:function=1", "sea:function=3", false},
    {"SEA_g", "sea:function=1", "sea:function=3", true},
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto t = trim(text);
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw std::invalid_argument("stream parameter '" + key + "': not a number: '" + text + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != static_cast<int>(v)) {
    throw std::invalid_argument("stream parameter '" + key + "': not an integer: '" + text + "'");
  }
  return static_cast<int>(v);
}

ConceptSpec parse_concept(const std::string& text) {
  ConceptSpec spec;
  const std::string t = trim(text);
  const auto colon = t.find(':');
  spec.kind = generator_kind_from_string(trim(t.substr(0, colon)));
  if (colon == std::string::npos) return spec;
  std::string rest = t.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const std::string item = trim(rest.substr(start, comma - start));
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("stream parameter '" + item + "' needs key=value");
      }
      spec.params[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return spec;
}

// Applies `params` onto fields, rejecting unknown keys.
class ParamReader {
 public:
  explicit ParamReader(const ConceptSpec& spec) : spec_(spec) {}

  void read(const char* key, double& field) {
    if (auto it = spec_.params.find(key); it != spec_.params.end()) {
      field = to_double(key, it->second);
      used_.insert(key);
    }
  }
  void read(const char* key, int& field) {
    if (auto it = spec_.params.find(key); it != spec_.params.end()) {
      field = to_int(key, it->second);
      used_.insert(key);
    }
  }
  void finish() const {
    for (const auto& [key, value] : spec_.params) {
      if (!used_.count(key)) {
        throw std::invalid_argument("unknown parameter '" + key + "' for generator " +
                                    to_string(spec_.kind));
      }
    }
  }

 private:
  const ConceptSpec& spec_;
  std::set<std::string> used_;
};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : kPresets) names.emplace_back(p.name);
  return names;
}

bool is_preset(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return true;
  }
  return false;
}

std::string expand_preset(const std::string& name, std::uint64_t length) {
  for (const auto& p : kPresets) {
    if (name != p.name) continue;
    if (!p.target) return p.base;
    const std::uint64_t width = p.gradual ? std::max<std::uint64_t>(1, length / 10) : 1;
    return std::string(p.base) + " -> " + p.target + " @ " + std::to_string(length / 2) + "," +
           std::to_string(width);
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

SyntheticSpec parse_synthetic_spec(const std::string& text) {
  SyntheticSpec spec;
  const auto arrow = text.find("->");
  if (arrow == std::string::npos) {
    if (text.find('@') != std::string::npos) {
      throw std::invalid_argument("drift position given without a target concept");
    }
    spec.base = parse_concept(text);
    make_generator(spec.base, 0);  // rejects unknown or malformed parameters
    return spec;
  }
  spec.base = parse_concept(text.substr(0, arrow));
  std::string rest = text.substr(arrow + 2);
  if (rest.find("->") != std::string::npos) {
    throw std::invalid_argument("only one drift join per stream is supported");
  }
  const auto at = rest.find('@');
  spec.target = parse_concept(rest.substr(0, at));
  if (at != std::string::npos) {
    const std::string where = rest.substr(at + 1);
    const auto comma = where.find(',');
    spec.position = to_double("position", where.substr(0, comma));
    if (comma != std::string::npos) spec.width = to_double("width", where.substr(comma + 1));
  }
  if (spec.target->kind != spec.base.kind) {
    throw std::invalid_argument("drift concepts must use the same generator");
  }
  make_generator(spec.base, 0);
  make_generator(*spec.target, 0);
  return spec;
}

std::unique_ptr<Generator> make_generator(const ConceptSpec& spec, std::uint64_t seed) {
  ParamReader r(spec);
  std::unique_ptr<Generator> out;
  switch (spec.kind) {
    case GeneratorKind::Sea: {
      SeaParams p;
      r.read("function", p.function);
      r.read("noise", p.noise);
      r.finish();
      out = std::make_unique<SeaGenerator>(p, seed);
      break;
    }
    case GeneratorKind::Agrawal: {
      AgrawalParams p;
      r.read("function", p.function);
      r.read("perturbation", p.perturbation);
      r.finish();
      out = std::make_unique<AgrawalGenerator>(p, seed);
      break;
    }
    case GeneratorKind::Led: {
      LedParams p;
      r.read("noise", p.noise);
      r.read("drift_attributes", p.drift_attributes);
      r.finish();
      out = std::make_unique<LedGenerator>(p, seed);
      break;
    }
    case GeneratorKind::Rtg: {
      RtgParams p;
      r.read("nominal", p.num_nominal);
      r.read("numeric", p.num_numeric);
      r.read("values", p.values_per_nominal);
      r.read("classes", p.num_classes);
      r.read("max_depth", p.max_depth);
      r.read("first_leaf_level", p.first_leaf_level);
      r.read("leaf_fraction", p.leaf_fraction);
      r.finish();
      out = std::make_unique<RtgGenerator>(p, seed);
      break;
    }
    case GeneratorKind::Rbf: {
      RbfParams p;
      r.read("centroids", p.num_centroids);
      r.read("drift_centroids", p.num_drift_centroids);
      r.read("attributes", p.num_attributes);
      r.read("classes", p.num_classes);
      r.read("speed", p.speed);
      r.finish();
      out = std::make_unique<RbfGenerator>(p, seed);
      break;
    }
    case GeneratorKind::Hyperplane: {
      HyperplaneParams p;
      r.read("attributes", p.num_attributes);
      r.read("drift_attributes", p.num_drift_attributes);
      r.read("magnitude", p.magnitude);
      r.read("noise", p.noise);
      r.read("sigma", p.sigma);
      r.finish();
      out = std::make_unique<HyperplaneGenerator>(p, seed);
      break;
    }
  }
  return out;
}

std::unique_ptr<InstanceStream> make_synthetic_stream(const std::string& spec_text,
                                                      std::uint64_t length, std::uint64_t seed) {
  const std::string text = is_preset(spec_text) ? expand_preset(spec_text, length) : spec_text;
  const SyntheticSpec spec = parse_synthetic_spec(text);
  std::unique_ptr<InstanceStream> stream = make_generator(spec.base, derive_seed(seed, 1));
  if (spec.target) {
    stream = std::make_unique<DriftStream>(
        std::move(stream), make_generator(*spec.target, derive_seed(seed, 2)),
        spec.position.value_or(static_cast<double>(length / 2)), spec.width.value_or(1.0),
        derive_seed(seed, 3));
  }
  return std::make_unique<BoundedStream>(std::move(stream), length);
}

}  // namespace esrf
