#ifndef GSCBEAM_ARRAY_MODEL_HPP
#define GSCBEAM_ARRAY_MODEL_HPP

#include <vector>

#include "gscbeam/rng.hpp"
#include "gscbeam/types.hpp"

namespace gscbeam {

struct ArrayGeometry {
  int num_sensors = 16;
  double spacing_ratio = 0.5;  // element spacing over carrier wavelength
};

// Ground truth a run is generated from and scored against. Index 0 of
// doas_deg is the desired user; source powers are unity.
struct Scenario {
  ArrayGeometry geometry;
  std::vector<double> doas_deg;
  double noise_variance = 0.0;  // total per-sensor variance
};

struct Snapshot {
  CVec received;  // steering * symbols + noise, exact by construction
  RVec symbols;   // BPSK, each entry +1 or -1
  CVec noise;
};

void validate(const ArrayGeometry& geometry);
void validate(const Scenario& scenario, double min_separation_deg = 0.0);

// Unit-norm array response for a plane wave from theta (degrees, exclusive
// (0, 180)); entry m is exp(-j*2*pi*spacing*cos(theta)*m)/sqrt(M).
CVec steering_vector(const ArrayGeometry& geometry, double theta_deg);

// One steering column per DOA.
CMat steering_matrix(const ArrayGeometry& geometry, const std::vector<double>& doas_deg);

// Unit source power convention: sigma^2 = 10^(-snr_db/10).
double noise_variance_from_snr(double snr_db);

// R = A A^H + sigma^2 I (unit-power i.i.d. symbols)
CMat analytic_covariance(const CMat& steering, double noise_variance, int num_sensors);
CMat analytic_covariance(const Scenario& scenario);

Snapshot generate_snapshot(const Scenario& scenario, const CMat& steering, Rng& rng);
Snapshot generate_snapshot(const Scenario& scenario, Rng& rng);

// Uniform DOAs on (0, 180), redrawn until every pair is at least
// min_separation_deg apart.
std::vector<double> draw_doas(int count, double min_separation_deg, Rng& rng);

// Extra DOAs appended to an existing set, keeping the separation rule
// against both old and new entries.
std::vector<double> draw_additional_doas(const std::vector<double>& existing, int count,
                                         double min_separation_deg, Rng& rng);

}  // namespace gscbeam

#endif
