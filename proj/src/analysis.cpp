#include "gscbeam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gscbeam {

double instantaneous_cm_cost(const CVec& w_eff, const CVec& r) {
  if (w_eff.size() != r.size())
    throw std::invalid_argument("instantaneous_cm_cost: dimension mismatch");
  const double dev = std::norm(w_eff.dot(r)) - 1.0;
  return dev * dev;
}

double cm_cost_noise_free(const CVec& u) {
  const double s2 = u.squaredNorm();           // u^H u
  cplx pseudo = 0.0;                           // sum u_k^2
  double quart = 0.0;                          // sum |u_k|^4
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    pseudo += u(k) * u(k);
    quart += std::norm(u(k)) * std::norm(u(k));
  }
  return 2.0 * s2 * s2 + std::norm(pseudo) - 2.0 * quart - 2.0 * s2 + 1.0;
}

double cm_cost_noise_term(const CVec& w_eff, const CVec& u, double sigma2) {
  const double h = w_eff.squaredNorm();
  const double s2 = u.squaredNorm();
  return (4.0 * s2 - 2.0 + 2.0 * sigma2 * h) * h;
}

CostDecomposition cm_cost_decomposition(const CVec& w_eff, const CMat& steering, double sigma2) {
  const CVec u = steering.adjoint() * w_eff;
  CostDecomposition d;
  d.noise_free = cm_cost_noise_free(u);
  d.noise_term = cm_cost_noise_term(w_eff, u, sigma2);
  d.sigma2 = sigma2;
  d.total = d.noise_free + sigma2 * d.noise_term;
  return d;
}

CMat cm_cost_hessian(const CVec& w_eff, const CMat& interferer_steering, double v,
                     double sigma2) {
  const Eigen::Index m = w_eff.size();
  const CMat& abar = interferer_steering;
  if (abar.rows() != m) throw std::invalid_argument("cm_cost_hessian: dimension mismatch");
  const CVec ubar = abar.adjoint() * w_eff;
  const double d0 = v * v;
  const double gbar = ubar.squaredNorm();
  const double h = w_eff.squaredNorm();

  // noise-free part: 4 Abar [ ubar ubar^H + (D + g - 1/2) I - 2 diag|u_k|^2 ] Abar^H
  //                  + 4 (Abar conj(ubar)) (Abar conj(ubar))^H
  // The last outer product is the curvature of the pseudo-moment term of
  // the noise-free cost; the cross terms of the noise part appear as
  // X + X^H so the sum stays Hermitian.
  CMat inner = ubar * ubar.adjoint();
  inner += (d0 + gbar - 0.5) * CMat::Identity(ubar.size(), ubar.size());
  for (Eigen::Index k = 0; k < ubar.size(); ++k) inner(k, k) -= 2.0 * std::norm(ubar(k));
  CMat hess = 4.0 * (abar * inner * abar.adjoint());
  const CVec pseudo_dir = abar * ubar.conjugate();
  hess += 4.0 * (pseudo_dir * pseudo_dir.adjoint());

  // noise part
  CMat h2 = (4.0 * d0 - 2.0) * CMat::Identity(m, m);
  h2 += 4.0 * gbar * CMat::Identity(m, m);
  h2 += 4.0 * h * (abar * abar.adjoint());
  const CVec au = abar * ubar;
  const CMat cross = au * w_eff.adjoint();
  h2 += 4.0 * (cross + cross.adjoint());
  h2 += 4.0 * sigma2 * (h * CMat::Identity(m, m) + w_eff * w_eff.adjoint());

  hess += sigma2 * h2;
  hess = (0.5 * (hess + hess.adjoint())).eval();
  return hess;
}

FfMoments predict_ff_moments(double alpha, double beta, double j1_opt) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("predict_ff_moments: alpha must lie in (0, 1)");
  if (!(beta > 0.0)) throw std::invalid_argument("predict_ff_moments: beta must be positive");
  if (!(j1_opt >= 0.0))
    throw std::invalid_argument("predict_ff_moments: noise-free cost must be non-negative");

  FfMoments m;
  const double bj = beta * j1_opt;
  m.e_phi = bj / (1.0 - alpha);
  m.e_phi2 = 2.0 * alpha * beta * m.e_phi * j1_opt / (1.0 - alpha * alpha);
  const double denom = (1.0 - alpha) * (1.0 - alpha * alpha);
  m.e_lambda = 1.0 - ((1.0 - alpha * alpha) * bj - 2.0 * alpha * bj * bj) / denom;
  m.e_lambda2 = 1.0 - (2.0 * (1.0 - alpha * alpha) * bj - 6.0 * alpha * bj * bj) / denom;

  if (!(m.e_lambda > 0.0 && m.e_lambda <= 1.0) || !(m.e_lambda2 > 0.0 && m.e_lambda2 <= 1.0))
    throw std::domain_error("predict_ff_moments: expansion left (0, 1], beta too large");
  const double spread = m.e_lambda2 - m.e_lambda * m.e_lambda;
  const double budget = m.e_phi * m.e_phi + 1e-12;
  if (spread < -budget)
    throw std::domain_error("predict_ff_moments: moment spread inconsistent, beta too large");
  return m;
}

MsePrediction predict_steady_state_mse(double v, const CVec& w_eff_opt, const CMat& covariance,
                                       const CMat& blocking, double sigma2_opt,
                                       const FfMoments& moments, double e_y_opt_sq,
                                       double lambda_min, double lambda_max) {
  if (!(e_y_opt_sq > 0.0))
    throw std::invalid_argument("predict_steady_state_mse: E|y_opt|^2 must be positive");
  if (!(sigma2_opt >= 0.0))
    throw std::invalid_argument("predict_steady_state_mse: sigma2_opt must be non-negative");
  // Mirror the policy's truncation: when the predicted mean sits outside the
  // admissible range the factor rides its bound, so both moments collapse to
  // the bound consistently. A clamped mean next to an unclamped second
  // moment misstates the spread by orders of magnitude.
  double el = moments.e_lambda;
  double el2 = moments.e_lambda2;
  if (el < lambda_min) {
    el = lambda_min;
    el2 = lambda_min * lambda_min;
  } else if (el > lambda_max) {
    el = lambda_max;
    el2 = lambda_max * lambda_max;
  }
  if (!(1.0 - el2 > 0.0))
    throw std::domain_error("predict_steady_state_mse: 1 - E[lambda^2] must be positive");

  const Eigen::Index n = blocking.cols();
  const CMat reduced = blocking.adjoint() * covariance * blocking;
  Eigen::FullPivLU<CMat> lu(reduced);
  if (!lu.isInvertible())
    throw std::domain_error("predict_steady_state_mse: singular reduced covariance");
  const CMat reduced_inv = lu.solve(CMat::Identity(n, n));

  const double scale =
      sigma2_opt * (1.0 - el) * (1.0 - el) / ((1.0 - el2) * e_y_opt_sq);
  const CMat theta = scale * (blocking * reduced_inv * blocking.adjoint());

  MsePrediction p;
  p.constant_term = 1.0 - 2.0 * v;
  p.optimal_term = std::real(w_eff_opt.dot(covariance * w_eff_opt));
  p.excess_term = std::real((covariance * theta).trace());
  p.total = p.constant_term + p.optimal_term + p.excess_term;
  return p;
}

OptimalEstimate estimate_optimal_quantities(const CMat& steering, const CMat& covariance,
                                            const std::vector<WindowStats>& runs) {
  if (runs.empty()) throw std::invalid_argument("estimate_optimal_quantities: no runs");
  CVec w_sum;
  double err_sum = 0.0;
  int used = 0;
  for (const auto& run : runs) {
    if (run.diverged) continue;
    if (used == 0)
      w_sum = run.w_eff_mean;
    else
      w_sum += run.w_eff_mean;
    err_sum += run.err_sq_mean;
    ++used;
  }
  if (used == 0)
    throw std::domain_error("estimate_optimal_quantities: every run diverged");

  OptimalEstimate est;
  est.w_eff_opt = w_sum / static_cast<double>(used);
  est.sigma2_opt = err_sum / static_cast<double>(used);
  est.e_y_opt_sq = std::real(est.w_eff_opt.dot(covariance * est.w_eff_opt));
  est.j1_opt = cm_cost_noise_free(steering.adjoint() * est.w_eff_opt);
  return est;
}

}  // namespace gscbeam
