#include "gscbeam/forgetting.hpp"

#include <algorithm>
#include <stdexcept>

namespace gscbeam {

ForgettingPolicy ForgettingPolicy::fixed(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("ForgettingPolicy: fixed lambda must lie in (0, 1)");
  ForgettingPolicy p;
  p.kind_ = Kind::kFixed;
  p.lambda_ = p.lambda_min_ = p.lambda_max_ = lambda;
  return p;
}

ForgettingPolicy ForgettingPolicy::tavff(const TavffParams& params) {
  if (!(params.alpha > 0.0 && params.alpha < 1.0))
    throw std::invalid_argument("ForgettingPolicy: tavff alpha must lie in (0, 1)");
  if (!(params.beta > 0.0)) throw std::invalid_argument("ForgettingPolicy: tavff beta must be positive");
  if (!(params.lambda_min > 0.0 && params.lambda_min <= params.lambda_max &&
        params.lambda_max < 1.0))
    throw std::invalid_argument("ForgettingPolicy: bad tavff lambda bounds");
  ForgettingPolicy p;
  p.kind_ = Kind::kTavff;
  p.alpha_ = params.alpha;
  p.beta_ = params.beta;
  p.lambda_min_ = params.lambda_min;
  p.lambda_max_ = params.lambda_max;
  p.phi_ = 0.0;
  p.lambda_ = std::clamp(1.0, params.lambda_min, params.lambda_max);  // phi(0) = 0
  return p;
}

ForgettingPolicy ForgettingPolicy::gvff(const GvffParams& params, int dim) {
  if (dim < 1) throw std::invalid_argument("ForgettingPolicy: gvff dimension must be positive");
  if (!(params.lambda_min > 0.0 && params.lambda_min <= params.lambda_max &&
        params.lambda_max < 1.0))
    throw std::invalid_argument("ForgettingPolicy: bad gvff lambda bounds");
  ForgettingPolicy p;
  p.kind_ = Kind::kGvff;
  p.step_ = params.step;
  p.lambda_min_ = params.lambda_min;
  p.lambda_max_ = params.lambda_max;
  p.lambda_ = std::clamp(params.lambda_init, params.lambda_min, params.lambda_max);
  p.sens_ = CMat::Zero(dim, dim);
  p.psi_ = CVec::Zero(dim);
  return p;
}

double ForgettingPolicy::update(cplx y, const CVec& x, cplx e, OpCounts* counter) {
  switch (kind_) {
    case Kind::kFixed:
      return lambda_;
    case Kind::kTavff: {
      const double y2 = std::norm(y);           // 2 mul, 1 add
      const double dev = y2 - 1.0;              // 1 add
      phi_ = alpha_ * phi_ + beta_ * dev * dev; // 3 mul, 1 add
      if (counter) {
        counter->multiplications += 5;
        counter->additions += 3;
      }
      lambda_ = std::clamp(1.0 / (1.0 + phi_), lambda_min_, lambda_max_);
      return lambda_;
    }
    case Kind::kGvff: {
      // descend the squared-error gradient: d(|e|^2/2)/dlambda = -Re{e* psi^H x}
      const cplx xpsi = psi_.dot(x);  // psi^H x
      const double grad = -std::real(std::conj(e) * xpsi);
      lambda_ = std::clamp(lambda_ - step_ * grad, lambda_min_, lambda_max_);
      if (counter) {
        const long long n = psi_.size();
        counter->multiplications += 4 * n + 4 + 1;         // psi^H x, e* * (.), step*grad
        counter->additions += 2 * (n - 1) + 2 * n + 2 + 1; // dot adds, cmul adds, update
      }
      return lambda_;
    }
  }
  return lambda_;
}

void ForgettingPolicy::propagate(const CVec& x, cplx e, const CVec& gain, const CVec& pi,
                                 double denom, double lambda, const CMat& qinv_new,
                                 OpCounts* counter) {
  if (kind_ != Kind::kGvff) return;
  const Eigen::Index n = x.size();
  // u = S x; dk = (u - k (1 + x^H u)) / denom
  const CVec u = sens_ * x;
  const cplx xu = x.dot(u);
  const CVec dk = (u - gain * (1.0 + xu)) / denom;
  // S <- (S - dk pi^H - k u^H - Qinv_new) / lambda, re-symmetrized
  sens_ -= dk * pi.adjoint();
  sens_ -= gain * u.adjoint();
  sens_ -= qinv_new;
  sens_ /= lambda;
  sens_ = (0.5 * (sens_ + sens_.adjoint())).eval();
  // psi <- psi - k (x^H psi) + dk e*
  const cplx xpsi = x.dot(psi_);
  psi_ += dk * std::conj(e) - gain * xpsi;
  if (counter) {
    const long long m = n;
    counter->multiplications += 4 * m * m    // S x
                                + 4          // x^H u scalar combine
                                + 4 * m      // k (1 + x^H u)
                                + 2 * m      // / denom (real divisor)
                                + 8 * m * m  // two rank-1 outer products
                                + 2 * m * m  // / lambda
                                + 4 * m      // dk e*, k (x^H psi) vector scales (x2)
                                + 4 * m + 4; // x^H psi
    counter->additions += 2 * m * (m - 1) + 2 * (m - 1) * 2  // dots
                          + 2 * m * m * 3                    // matrix subtractions
                          + 4 * m * m                        // outer product cmul adds
                          + 4 * m;                           // psi update
  }
}

OpCounts operation_counts(ForgettingPolicy::Kind kind, int num_sensors) {
  if (num_sensors < 2) throw std::invalid_argument("operation_counts: need at least 2 sensors");
  const long long m = num_sensors;
  switch (kind) {
    case ForgettingPolicy::Kind::kFixed:
      return {0, 0};
    case ForgettingPolicy::Kind::kTavff:
      return {5, 3};
    case ForgettingPolicy::Kind::kGvff:
      return {12 * m * m - 12 * m + 3, 5 * m * m - 8 * m + 5};
  }
  return {0, 0};
}

}  // namespace gscbeam
