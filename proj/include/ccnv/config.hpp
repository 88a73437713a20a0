#pragma once

#include <cstdint>
#include <string>

#include "ccnv/diagnostics.hpp"
#include "ccnv/solver.hpp"

namespace ccnv {

// Full description of one trajectory run. Serialized as flat "section.key =
// value" text; parse(serialize(c)) == c.
struct RunConfig {
  GridSpec grid;
  Params params;

  std::string init_family = "random-bandlimited";  // | taylor-green | buoyant-blob | zero
  double init_amplitude = 1.0;
  std::uint64_t seed = 1;

  double t_end = 1.0;
  StepperConfig stepper;

  int output_every = 10;       // diagnostics cadence, in steps
  int checkpoint_every = 0;    // checkpoints every k outputs; 0 = final only
  std::string out_dir = "out";

  DiagParams diag;

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& c);

// Apply a single "key=value" override; throws with the offending key on error.
void apply_override(RunConfig& c, const std::string& key, const std::string& value);

// Schema with defaults, printed by --help-config.
std::string config_schema();

}  // namespace ccnv
