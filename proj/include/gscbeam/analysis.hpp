#ifndef GSCBEAM_ANALYSIS_HPP
#define GSCBEAM_ANALYSIS_HPP

#include <vector>

#include "gscbeam/types.hpp"

namespace gscbeam {

// Split of the expected constant-modulus cost into a noise-free part and a
// noise-coupled part: total = noise_free + sigma2 * noise_term.
struct CostDecomposition {
  double noise_free = 0.0;
  double noise_term = 0.0;
  double sigma2 = 0.0;
  double total = 0.0;
};

// (|w_eff^H r|^2 - 1)^2 for a single snapshot
double instantaneous_cm_cost(const CVec& w_eff, const CVec& r);

// Expected noise-free cost E[(|u^H b|^2 - 1)^2] over i.i.d. +-1 symbols,
// u = A^H w_eff. Closed form of the fourth-moment expansion:
//   2 (u^H u)^2 + |sum_k u_k^2|^2 - 2 sum_k |u_k|^4 - 2 u^H u + 1.
// The pseudo-moment term |sum u_k^2|^2 is kept because real symbols carry a
// nonzero E[b^2]; it vanishes only under circular symbol constellations.
double cm_cost_noise_free(const CVec& u);

// Noise multiplier for circular complex noise with per-sensor variance
// sigma2: (4 u^H u - 2 + 2 sigma2 ||w||^2) ||w||^2. The quartic noise
// moment of a circular Gaussian gives the factor 2 on the sigma2 term.
double cm_cost_noise_term(const CVec& w_eff, const CVec& u, double sigma2);

CostDecomposition cm_cost_decomposition(const CVec& w_eff, const CMat& steering, double sigma2);

// Mixed complex Hessian d^2 J / (dw* dw^T) of the expected cost with the
// desired-user response held at v (so only the interferer responses
// ubar = Abar^H w vary). Hermitian by construction; positive semidefinite
// for v^2 >= 1/2 in the noise-free case.
CMat cm_cost_hessian(const CVec& w_eff, const CMat& interferer_steering, double v, double sigma2);

// Steady-state moments of the time-averaged forgetting factor driven by a
// deviation process with mean j1_opt.
struct FfMoments {
  double e_phi = 0.0;
  double e_phi2 = 0.0;
  double e_lambda = 1.0;
  double e_lambda2 = 1.0;
};

// Second-order (small beta*j1) expansions. Throws std::domain_error when
// the expansion leaves its regime: a moment outside (0, 1], or a spread
// e_lambda2 - e_lambda^2 more negative than the E[phi]^2 scale of the
// dropped terms.
FfMoments predict_ff_moments(double alpha, double beta, double j1_opt);

struct MsePrediction {
  double constant_term = 0.0;  // 1 - 2v
  double optimal_term = 0.0;   // w_opt^H R w_opt
  double excess_term = 0.0;    // tr(R Theta_inf)
  double total = 0.0;
};

// Steady-state mean squared error of the adaptive beamformer:
//   (1 - 2v) + w_opt^H R w_opt + tr(R * Theta_inf),
//   Theta_inf = sigma2_opt (1-E[lambda])^2 / ((1-E[lambda^2]) E|y_opt|^2)
//               * B (B^H R B)^{-1} B^H.
// E[lambda] is clamped into [lambda_min, lambda_max] before use.
MsePrediction predict_steady_state_mse(double v, const CVec& w_eff_opt, const CMat& covariance,
                                       const CMat& blocking, double sigma2_opt,
                                       const FfMoments& moments, double e_y_opt_sq,
                                       double lambda_min, double lambda_max);

// Tail-window statistics of one converged run.
struct WindowStats {
  CVec w_eff_mean;       // time-averaged effective weight over the window
  double err_sq_mean = 0.0;  // mean |e(i)|^2 over the window
  bool diverged = false;
};

struct OptimalEstimate {
  CVec w_eff_opt;
  double sigma2_opt = 0.0;
  double e_y_opt_sq = 0.0;
  double j1_opt = 0.0;
};

// Empirical stand-in for the optimal beamformer: ensemble average of the
// per-run window statistics, with E|y_opt|^2 and the noise-free cost then
// evaluated against the analytic covariance and steering matrix. Diverged
// runs are excluded; throws if none remain.
OptimalEstimate estimate_optimal_quantities(const CMat& steering, const CMat& covariance,
                                            const std::vector<WindowStats>& runs);

}  // namespace gscbeam

#endif
