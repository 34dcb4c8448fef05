#include "gscbeam/array_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gscbeam {

void validate(const ArrayGeometry& geometry) {
  if (geometry.num_sensors < 2)
    throw std::invalid_argument("ArrayGeometry: need at least 2 sensors");
  if (!(geometry.spacing_ratio > 0.0))
    throw std::invalid_argument("ArrayGeometry: spacing_ratio must be positive");
}

void validate(const Scenario& scenario, double min_separation_deg) {
  validate(scenario.geometry);
  if (scenario.doas_deg.empty())
    throw std::invalid_argument("Scenario: at least one user is required");
  if (!(scenario.noise_variance >= 0.0))
    throw std::invalid_argument("Scenario: noise variance must be non-negative");
  for (double d : scenario.doas_deg) {
    if (!(d > 0.0 && d < 180.0))
      throw std::invalid_argument("Scenario: DOA " + std::to_string(d) +
                                  " outside (0, 180) degrees");
  }
  if (min_separation_deg > 0.0) {
    const auto& doas = scenario.doas_deg;
    for (std::size_t i = 0; i < doas.size(); ++i)
      for (std::size_t j = i + 1; j < doas.size(); ++j)
        if (std::abs(doas[i] - doas[j]) < min_separation_deg)
          throw std::invalid_argument("Scenario: DOAs closer than the minimum separation");
  }
}

CVec steering_vector(const ArrayGeometry& geometry, double theta_deg) {
  validate(geometry);
  if (!(theta_deg > 0.0 && theta_deg < 180.0))
    throw std::domain_error("steering_vector: theta must lie strictly inside (0, 180) degrees");
  const int m = geometry.num_sensors;
  const double phase_step =
      -2.0 * kPi * geometry.spacing_ratio * std::cos(theta_deg * kPi / 180.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  CVec a(m);
  for (int i = 0; i < m; ++i) a(i) = std::polar(scale, phase_step * i);
  return a;
}

CMat steering_matrix(const ArrayGeometry& geometry, const std::vector<double>& doas_deg) {
  validate(geometry);
  CMat a(geometry.num_sensors, static_cast<Eigen::Index>(doas_deg.size()));
  for (std::size_t k = 0; k < doas_deg.size(); ++k)
    a.col(static_cast<Eigen::Index>(k)) = steering_vector(geometry, doas_deg[k]);
  return a;
}

double noise_variance_from_snr(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

CMat analytic_covariance(const CMat& steering, double noise_variance, int num_sensors) {
  CMat r = noise_variance * CMat::Identity(num_sensors, num_sensors);
  if (steering.cols() > 0) r += steering * steering.adjoint();
  return r;
}

CMat analytic_covariance(const Scenario& scenario) {
  validate(scenario);
  const CMat a = steering_matrix(scenario.geometry, scenario.doas_deg);
  return analytic_covariance(a, scenario.noise_variance, scenario.geometry.num_sensors);
}

Snapshot generate_snapshot(const Scenario& scenario, const CMat& steering, Rng& rng) {
  const int m = scenario.geometry.num_sensors;
  const int k = static_cast<int>(scenario.doas_deg.size());
  Snapshot snap;
  snap.symbols = RVec(k);
  for (int j = 0; j < k; ++j) snap.symbols(j) = rng.rademacher();
  snap.noise = CVec(m);
  for (int i = 0; i < m; ++i) snap.noise(i) = rng.circular_gaussian(scenario.noise_variance);
  snap.received = snap.noise;
  for (int j = 0; j < k; ++j) {
    if (snap.symbols(j) > 0.0)
      snap.received += steering.col(j);
    else
      snap.received -= steering.col(j);
  }
  return snap;
}

Snapshot generate_snapshot(const Scenario& scenario, Rng& rng) {
  validate(scenario);
  const CMat a = steering_matrix(scenario.geometry, scenario.doas_deg);
  return generate_snapshot(scenario, a, rng);
}

namespace {

bool separated(const std::vector<double>& doas, double min_sep) {
  for (std::size_t i = 0; i < doas.size(); ++i)
    for (std::size_t j = i + 1; j < doas.size(); ++j)
      if (std::abs(doas[i] - doas[j]) < min_sep) return false;
  return true;
}

}  // namespace

std::vector<double> draw_doas(int count, double min_separation_deg, Rng& rng) {
  if (count < 1) throw std::invalid_argument("draw_doas: count must be positive");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<double> doas(static_cast<std::size_t>(count));
    for (auto& d : doas) d = rng.uniform(0.0, 180.0);
    bool in_range = true;
    for (double d : doas) in_range = in_range && d > 0.0 && d < 180.0;
    if (in_range && separated(doas, min_separation_deg)) return doas;
  }
  throw std::runtime_error("draw_doas: could not satisfy the separation constraint");
}

std::vector<double> draw_additional_doas(const std::vector<double>& existing, int count,
                                         double min_separation_deg, Rng& rng) {
  if (count < 1) throw std::invalid_argument("draw_additional_doas: count must be positive");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<double> all = existing;
    for (int i = 0; i < count; ++i) all.push_back(rng.uniform(0.0, 180.0));
    bool in_range = true;
    for (double d : all) in_range = in_range && d > 0.0 && d < 180.0;
    if (in_range && separated(all, min_separation_deg))
      return {all.end() - count, all.end()};
  }
  throw std::runtime_error("draw_additional_doas: could not satisfy the separation constraint");
}

}  // namespace gscbeam
