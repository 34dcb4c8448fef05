#include "gscbeam/config.hpp"

#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gscbeam/array_model.hpp"
#include "gscbeam/rng.hpp"

namespace gscbeam {

using nlohmann::json;

const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> kAlgorithms = {
      "cmv", "ccm-fixed", "ccm-gvff", "ccm-tavff", "dfb-fixed", "dfb-tavff"};
  return kAlgorithms;
}

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& scope) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (known.count(it.key()) == 0)
      throw std::invalid_argument("config: unknown key \"" +
                                  (scope.empty() ? it.key() : scope + "." + it.key()) + "\"");
  }
}

template <typename T>
void read_field(const json& obj, const char* key, T& out, const std::string& scope) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("config: field \"" + (scope.empty() ? key : scope + "." + key) +
                                "\" has the wrong type");
  }
}

void validate_config(const ExperimentConfig& c) {
  if (c.sensors < 2) throw std::invalid_argument("config: scenario.sensors must be >= 2");
  if (c.users < 1) throw std::invalid_argument("config: scenario.users must be >= 1");
  if (!(c.spacing_ratio > 0.0))
    throw std::invalid_argument("config: scenario.spacing_ratio must be positive");
  if (c.doa_mode != "fixed" && c.doa_mode != "redraw-per-run")
    throw std::invalid_argument("config: scenario.doa_mode must be \"fixed\" or \"redraw-per-run\"");
  if (c.algorithms.empty())
    throw std::invalid_argument("config: field \"algorithms\" must name at least one algorithm");
  for (const auto& a : c.algorithms) {
    bool ok = false;
    for (const auto& k : known_algorithms()) ok = ok || k == a;
    if (!ok) throw std::invalid_argument("config: unknown algorithm \"" + a + "\"");
  }
  if (c.lambda_timing != "current" && c.lambda_timing != "previous")
    throw std::invalid_argument("config: beamformer.lambda_timing must be \"current\" or \"previous\"");
  if (!(c.fixed_lambda > 0.0 && c.fixed_lambda < 1.0))
    throw std::invalid_argument("config: fixed.lambda must lie in (0, 1)");
  if (!(c.cmv_lambda > 0.0 && c.cmv_lambda < 1.0))
    throw std::invalid_argument("config: cmv.lambda must lie in (0, 1)");
  if (!(c.tavff.alpha > 0.0 && c.tavff.alpha < 1.0))
    throw std::invalid_argument("config: tavff.alpha must lie in (0, 1)");
  if (!(c.tavff.beta > 0.0)) throw std::invalid_argument("config: tavff.beta must be positive");
  if (!(c.tavff.lambda_min > 0.0 && c.tavff.lambda_min <= c.tavff.lambda_max &&
        c.tavff.lambda_max < 1.0))
    throw std::invalid_argument("config: tavff lambda bounds must satisfy 0 < min <= max < 1");
  if (!(c.gvff.lambda_min > 0.0 && c.gvff.lambda_min <= c.gvff.lambda_max &&
        c.gvff.lambda_max < 1.0))
    throw std::invalid_argument("config: gvff lambda bounds must satisfy 0 < min <= max < 1");
  if (c.snapshots < 1) throw std::invalid_argument("config: snapshots must be >= 1");
  if (c.runs < 1) throw std::invalid_argument("config: runs must be >= 1");
  if (c.calibration.runs < 1 || c.calibration.snapshots < 10)
    throw std::invalid_argument("config: calibration needs at least 1 run and 10 snapshots");
  if (!(c.calibration.window_fraction > 0.0 && c.calibration.window_fraction <= 1.0))
    throw std::invalid_argument("config: calibration.window_fraction must lie in (0, 1]");
  for (const auto& ev : c.events) {
    if (ev.snapshot < 1 || ev.snapshot >= c.snapshots)
      throw std::invalid_argument("config: event snapshot outside (0, snapshots)");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text, const ConfigOverrides& overrides) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config: top level must be an object");

  ExperimentConfig c;
  reject_unknown_keys(root,
                      {"scenario", "algorithms", "beamformer", "fixed", "cmv", "tavff", "gvff",
                       "snapshots", "runs", "seed", "snr_sweep_db", "events", "calibration"},
                      "");

  if (root.contains("scenario")) {
    const json& s = root.at("scenario");
    if (!s.is_object()) throw std::invalid_argument("config: \"scenario\" must be an object");
    reject_unknown_keys(s,
                        {"sensors", "users", "snr_db", "spacing_ratio",
                         "min_doa_separation_deg", "doa_mode", "doas_deg"},
                        "scenario");
    read_field(s, "sensors", c.sensors, "scenario");
    read_field(s, "users", c.users, "scenario");
    read_field(s, "snr_db", c.snr_db, "scenario");
    read_field(s, "spacing_ratio", c.spacing_ratio, "scenario");
    read_field(s, "min_doa_separation_deg", c.min_doa_separation_deg, "scenario");
    read_field(s, "doa_mode", c.doa_mode, "scenario");
    read_field(s, "doas_deg", c.doas_deg, "scenario");
  }
  read_field(root, "algorithms", c.algorithms, "");
  if (root.contains("beamformer")) {
    const json& b = root.at("beamformer");
    if (!b.is_object()) throw std::invalid_argument("config: \"beamformer\" must be an object");
    reject_unknown_keys(b, {"v", "lambda_timing"}, "beamformer");
    read_field(b, "v", c.v, "beamformer");
    read_field(b, "lambda_timing", c.lambda_timing, "beamformer");
  }
  if (root.contains("fixed")) {
    const json& f = root.at("fixed");
    if (!f.is_object()) throw std::invalid_argument("config: \"fixed\" must be an object");
    reject_unknown_keys(f, {"lambda"}, "fixed");
    read_field(f, "lambda", c.fixed_lambda, "fixed");
  }
  if (root.contains("cmv")) {
    const json& f = root.at("cmv");
    if (!f.is_object()) throw std::invalid_argument("config: \"cmv\" must be an object");
    reject_unknown_keys(f, {"lambda"}, "cmv");
    read_field(f, "lambda", c.cmv_lambda, "cmv");
  }
  if (root.contains("tavff")) {
    const json& t = root.at("tavff");
    if (!t.is_object()) throw std::invalid_argument("config: \"tavff\" must be an object");
    reject_unknown_keys(t, {"alpha", "beta", "lambda_min", "lambda_max"}, "tavff");
    read_field(t, "alpha", c.tavff.alpha, "tavff");
    read_field(t, "beta", c.tavff.beta, "tavff");
    read_field(t, "lambda_min", c.tavff.lambda_min, "tavff");
    read_field(t, "lambda_max", c.tavff.lambda_max, "tavff");
  }
  if (root.contains("gvff")) {
    const json& g = root.at("gvff");
    if (!g.is_object()) throw std::invalid_argument("config: \"gvff\" must be an object");
    reject_unknown_keys(g, {"step", "lambda_init", "lambda_min", "lambda_max"}, "gvff");
    read_field(g, "step", c.gvff.step, "gvff");
    read_field(g, "lambda_init", c.gvff.lambda_init, "gvff");
    read_field(g, "lambda_min", c.gvff.lambda_min, "gvff");
    read_field(g, "lambda_max", c.gvff.lambda_max, "gvff");
  }
  read_field(root, "snapshots", c.snapshots, "");
  read_field(root, "runs", c.runs, "");
  read_field(root, "seed", c.seed, "");
  read_field(root, "snr_sweep_db", c.snr_sweep_db, "");
  if (root.contains("events")) {
    const json& evs = root.at("events");
    if (!evs.is_array()) throw std::invalid_argument("config: \"events\" must be an array");
    for (const auto& ev : evs) {
      if (!ev.is_object()) throw std::invalid_argument("config: each event must be an object");
      reject_unknown_keys(ev, {"snapshot", "add_doas_deg", "add_users"}, "events[]");
      EventConfig e;
      read_field(ev, "snapshot", e.snapshot, "events[]");
      read_field(ev, "add_doas_deg", e.add_doas_deg, "events[]");
      int add_users = static_cast<int>(e.add_doas_deg.size());
      read_field(ev, "add_users", add_users, "events[]");
      if (e.add_doas_deg.empty() && add_users > 0)
        e.add_doas_deg.assign(static_cast<std::size_t>(add_users), 0.0);  // drawn at resolve
      c.events.push_back(e);
    }
  }
  if (root.contains("calibration")) {
    const json& cal = root.at("calibration");
    if (!cal.is_object()) throw std::invalid_argument("config: \"calibration\" must be an object");
    reject_unknown_keys(cal, {"runs", "snapshots", "window_fraction"}, "calibration");
    read_field(cal, "runs", c.calibration.runs, "calibration");
    read_field(cal, "snapshots", c.calibration.snapshots, "calibration");
    read_field(cal, "window_fraction", c.calibration.window_fraction, "calibration");
  }

  if (overrides.seed) c.seed = *overrides.seed;
  if (overrides.runs) c.runs = *overrides.runs;
  if (overrides.full) c.runs = 1000;

  // resolve the DOA draw so the config is self-contained
  Rng scenario_rng(derive_seed(c.seed, {seed_tags::kScenario}));
  if (c.doas_deg.empty()) {
    if (c.doa_mode == "fixed") c.doas_deg = draw_doas(c.users, c.min_doa_separation_deg, scenario_rng);
  } else {
    if (static_cast<int>(c.doas_deg.size()) != c.users)
      throw std::invalid_argument("config: scenario.doas_deg length must equal scenario.users");
  }
  std::vector<double> doa_base = c.doas_deg;
  for (auto& ev : c.events) {
    bool needs_draw = ev.add_doas_deg.empty();
    for (double d : ev.add_doas_deg) needs_draw = needs_draw || d == 0.0;
    if (needs_draw) {
      const int count = ev.add_doas_deg.empty() ? 2 : static_cast<int>(ev.add_doas_deg.size());
      ev.add_doas_deg =
          draw_additional_doas(doa_base, count, c.min_doa_separation_deg, scenario_rng);
    }
    doa_base.insert(doa_base.end(), ev.add_doas_deg.begin(), ev.add_doas_deg.end());
  }
  if (!c.doas_deg.empty()) {
    Scenario probe{{c.sensors, c.spacing_ratio}, c.doas_deg, noise_variance_from_snr(c.snr_db)};
    validate(probe, c.min_doa_separation_deg);
  }

  validate_config(c);
  return c;
}

ExperimentConfig default_config(const ConfigOverrides& overrides) {
  return parse_config("{}", overrides);
}

std::string canonical_json(const ExperimentConfig& c) {
  json root;
  root["scenario"]["sensors"] = c.sensors;
  root["scenario"]["users"] = c.users;
  root["scenario"]["snr_db"] = c.snr_db;
  root["scenario"]["spacing_ratio"] = c.spacing_ratio;
  root["scenario"]["min_doa_separation_deg"] = c.min_doa_separation_deg;
  root["scenario"]["doa_mode"] = c.doa_mode;
  root["scenario"]["doas_deg"] = c.doas_deg;
  root["algorithms"] = c.algorithms;
  root["beamformer"]["v"] = c.v;
  root["beamformer"]["lambda_timing"] = c.lambda_timing;
  root["fixed"]["lambda"] = c.fixed_lambda;
  root["cmv"]["lambda"] = c.cmv_lambda;
  root["tavff"]["alpha"] = c.tavff.alpha;
  root["tavff"]["beta"] = c.tavff.beta;
  root["tavff"]["lambda_min"] = c.tavff.lambda_min;
  root["tavff"]["lambda_max"] = c.tavff.lambda_max;
  root["gvff"]["step"] = c.gvff.step;
  root["gvff"]["lambda_init"] = c.gvff.lambda_init;
  root["gvff"]["lambda_min"] = c.gvff.lambda_min;
  root["gvff"]["lambda_max"] = c.gvff.lambda_max;
  root["snapshots"] = c.snapshots;
  root["runs"] = c.runs;
  root["seed"] = c.seed;
  root["snr_sweep_db"] = c.snr_sweep_db;
  root["events"] = json::array();
  for (const auto& ev : c.events) {
    json e;
    e["snapshot"] = ev.snapshot;
    e["add_doas_deg"] = ev.add_doas_deg;
    root["events"].push_back(e);
  }
  root["calibration"]["runs"] = c.calibration.runs;
  root["calibration"]["snapshots"] = c.calibration.snapshots;
  root["calibration"]["window_fraction"] = c.calibration.window_fraction;
  return root.dump();
}

std::string config_fingerprint(const ExperimentConfig& c) {
  const std::string text = canonical_json(c);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace gscbeam
