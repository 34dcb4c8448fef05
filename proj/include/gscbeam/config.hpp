#ifndef GSCBEAM_CONFIG_HPP
#define GSCBEAM_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gscbeam/forgetting.hpp"

namespace gscbeam {

// Nonstationary event: extra interferers entering at a snapshot index.
// DOAs left empty are drawn from the scenario stream at resolve time.
struct EventConfig {
  int snapshot = 0;
  std::vector<double> add_doas_deg;
};

struct CalibrationConfig {
  int runs = 50;
  int snapshots = 2000;
  double window_fraction = 0.1;
};

// Fully resolved experiment description. Everything that defines the
// experiment semantically (including the drawn DOAs) is covered by the
// fingerprint; execution details such as worker count are not part of it.
struct ExperimentConfig {
  int sensors = 16;
  int users = 5;
  double snr_db = 15.0;
  double spacing_ratio = 0.5;
  double min_doa_separation_deg = 2.0;
  std::string doa_mode = "fixed";  // "fixed" or "redraw-per-run"
  std::vector<double> doas_deg;    // resolved; drawn from seed when absent

  std::vector<std::string> algorithms = {"cmv", "ccm-fixed", "ccm-gvff", "ccm-tavff"};
  double v = 1.0;
  std::string lambda_timing = "current";  // or "previous"
  double fixed_lambda = 0.965;
  double cmv_lambda = 0.99;
  TavffParams tavff;
  GvffParams gvff;

  int snapshots = 1000;
  int runs = 200;
  std::uint64_t seed = 12;
  std::vector<double> snr_sweep_db = {0.0, 5.0, 10.0, 15.0, 20.0};
  std::vector<EventConfig> events;
  CalibrationConfig calibration;
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  bool full = false;  // restore the 1000-run protocol
};

// Strict parse of a JSON experiment config: unknown keys are rejected by
// name, defaults fill everything else, and the DOA draw is resolved so the
// returned value is self-contained.
ExperimentConfig parse_config(const std::string& json_text, const ConfigOverrides& overrides = {});

ExperimentConfig default_config(const ConfigOverrides& overrides = {});

// Canonical serialization of a resolved config (sorted keys, full float
// round-trip); two configs compare equal iff these strings match.
std::string canonical_json(const ExperimentConfig& config);

// FNV-1a 64 hash of the canonical serialization, as fixed-width hex.
std::string config_fingerprint(const ExperimentConfig& config);

const std::vector<std::string>& known_algorithms();

}  // namespace gscbeam

#endif
