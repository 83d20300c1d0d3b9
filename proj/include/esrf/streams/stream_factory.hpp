#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "esrf/streams/generators.hpp"

namespace esrf {

// One synthetic concept, e.g. "sea:function=3,noise=0.1".
struct ConceptSpec {
  GeneratorKind kind = GeneratorKind::Sea;
  std::map<std::string, std::string> params;
};

// A synthetic stream: one concept, or a sigmoid join of two.
//   concept
//   concept -> concept [@ position [, width]]
// position defaults to half the stream length, width to 1 (abrupt).
// Named presets (SEA_a, AGR_g, LED_a, RBF_m, HYPER, RTG, ...) expand to such specs.
struct SyntheticSpec {
  ConceptSpec base;
  std::optional<ConceptSpec> target;
  std::optional<double> position;
  std::optional<double> width;
};

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
// Expands a preset for a stream of `length` instances (gradual joins use width length/10).
std::string expand_preset(const std::string& name, std::uint64_t length);

SyntheticSpec parse_synthetic_spec(const std::string& text);
std::unique_ptr<Generator> make_generator(const ConceptSpec& spec, std::uint64_t seed);
// Accepts a preset name or a spec string.
std::unique_ptr<InstanceStream> make_synthetic_stream(const std::string& spec,
                                                      std::uint64_t length, std::uint64_t seed);

}  // namespace esrf
