#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "soblab/config.hpp"
#include "soblab/exponents.hpp"
#include "soblab/function_model.hpp"

namespace soblab {

// Everything needed to rebuild one corpus sample deterministically.
struct SampleSpec {
  int id = 0;
  BubbleParams base;
  PerturbationDirection dir;
  double eps = 0.0;
};

// Deterministic in (config.seed, config): all draws happen serially in a
// fixed order before any sample is processed.
std::vector<SampleSpec> generate_corpus(const RunConfig& config,
                                        const Exponents& e);

TestFunction build_sample(const SampleSpec& s, const Exponents& e);

nlohmann::json sample_to_json(const SampleSpec& s);
SampleSpec sample_from_json(const nlohmann::json& j, int n);

// Inline function description used by the asymmetry subcommand:
//   {"bubble": {"c":1, "scale":1, "center":[0,0]},
//    "perturbations": [{"kind":"gaussian","eps":0.1,"center":[0.5,0],
//                       "width":1,"amplitude":1}, ...]}
TestFunction function_from_spec_json(const nlohmann::json& j, const Exponents& e,
                                     BubbleParams* base_out = nullptr);

}  // namespace soblab
