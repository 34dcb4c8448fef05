#include "gscbeam/engines.hpp"

#include <cmath>
#include <stdexcept>

namespace gscbeam {

namespace {

constexpr double kWeightNormLimit2 = 1e12;  // ||w||^2 for the 1e6 norm cap

void resymmetrize(CMat& h) { h = (0.5 * (h + h.adjoint())).eval(); }

CVec random_effective_direction(Eigen::Index m, Rng& rng) {
  CVec g(m);
  for (Eigen::Index i = 0; i < m; ++i)
    g(i) = rng.circular_gaussian(1.0 / static_cast<double>(m));
  return g;
}

}  // namespace

double loading_delta_for_snr(double snr_db) {
  if (snr_db < 2.5) return 10.0;
  if (snr_db < 17.5) return 1.0;
  return 0.1;
}

GscCcmRlsEngine::GscCcmRlsEngine(const CVec& a0, const CMat& blocking, double v,
                                 double loading_delta, ForgettingPolicy ff, Rng& init_rng,
                                 LambdaTiming timing)
    : a0_(a0),
      quiescent_(v * a0),
      blocking_(blocking),
      v_(v),
      timing_(timing),
      ff_(std::move(ff)),
      lambda_prev_(ff_.current_lambda()) {
  const Eigen::Index m = a0.size();
  if (blocking_.rows() != m || blocking_.cols() != m - 1)
    throw std::invalid_argument("GscCcmRlsEngine: blocking matrix shape mismatch");
  if (!(loading_delta > 0.0))
    throw std::invalid_argument("GscCcmRlsEngine: loading delta must be positive");
  // The random start is drawn in effective-weight space and mapped through
  // B^H, so the initial effective weight does not depend on the basis choice.
  w_ = blocking_.adjoint() * random_effective_direction(m, init_rng);
  qinv_ = CMat::Identity(m - 1, m - 1) / loading_delta;
  w_eff_ = quiescent_ - blocking_ * w_;
}

StepOutput GscCcmRlsEngine::step(const CVec& r) {
  if (diverged_) return {0.0, 0.0, 0.0, lambda_prev_};
  const cplx y = w_eff_.dot(r);
  rtil_ = std::conj(y) * r;
  x_.noalias() = blocking_.adjoint() * rtil_;
  const cplx d = v_ * a0_.dot(rtil_) - 1.0;
  const cplx e = d - w_.dot(x_);

  const double lambda_now = ff_.update(y, x_, e);
  const double lambda = timing_ == LambdaTiming::kCurrent ? lambda_now : lambda_prev_;
  lambda_prev_ = lambda_now;

  pi_.noalias() = qinv_ * x_;
  const double denom = lambda + std::real(x_.dot(pi_));
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    diverged_ = true;
    return {y, d, e, lambda};
  }
  k_ = pi_ / denom;
  qinv_ -= k_ * pi_.adjoint();
  qinv_ /= lambda;
  resymmetrize(qinv_);
  ff_.propagate(x_, e, k_, pi_, denom, lambda, qinv_);

  w_ += k_ * std::conj(e);
  if (!(w_.squaredNorm() < kWeightNormLimit2)) diverged_ = true;
  w_eff_ = quiescent_ - blocking_ * w_;
  return {y, d, e, lambda};
}

DfbCcmRlsEngine::DfbCcmRlsEngine(const CVec& a0, double v, double loading_delta,
                                 ForgettingPolicy ff, Rng& init_rng, LambdaTiming timing)
    : a0_(a0),
      v_(v),
      timing_(timing),
      ff_(std::move(ff)),
      lambda_prev_(ff_.current_lambda()) {
  const Eigen::Index m = a0.size();
  if (!(loading_delta > 0.0))
    throw std::invalid_argument("DfbCcmRlsEngine: loading delta must be positive");
  w_eff_ = random_effective_direction(m, init_rng);
  w_eff_ += a0_ * (v_ - a0_.dot(w_eff_));
  qinv_ = CMat::Identity(m, m) / loading_delta;
}

StepOutput DfbCcmRlsEngine::step(const CVec& r) {
  if (diverged_) return {0.0, 0.0, 0.0, lambda_prev_};
  const cplx y = w_eff_.dot(r);
  rtil_ = std::conj(y) * r;
  const cplx d = 1.0;  // target modulus of |y|^2
  const cplx e = d - w_eff_.dot(rtil_);

  const double lambda_now = ff_.update(y, rtil_, e);
  const double lambda = timing_ == LambdaTiming::kCurrent ? lambda_now : lambda_prev_;
  lambda_prev_ = lambda_now;

  pi_.noalias() = qinv_ * rtil_;
  const double denom = lambda + std::real(rtil_.dot(pi_));
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    diverged_ = true;
    return {y, d, e, lambda};
  }
  k_ = pi_ / denom;
  qinv_ -= k_ * pi_.adjoint();
  qinv_ /= lambda;
  resymmetrize(qinv_);
  ff_.propagate(rtil_, e, k_, pi_, denom, lambda, qinv_);

  w_eff_ += k_ * std::conj(e);
  w_eff_ += a0_ * (v_ - a0_.dot(w_eff_));  // re-impose the response constraint
  if (!(w_eff_.squaredNorm() < kWeightNormLimit2)) diverged_ = true;
  return {y, d, e, lambda};
}

CmvRlsEngine::CmvRlsEngine(const CVec& a0, double loading_delta, double lambda)
    : a0_(a0), lambda_(lambda) {
  const Eigen::Index m = a0.size();
  if (!(loading_delta > 0.0))
    throw std::invalid_argument("CmvRlsEngine: loading delta must be positive");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("CmvRlsEngine: lambda must lie in (0, 1)");
  qinv_ = CMat::Identity(m, m) / loading_delta;
  const double s = std::real(a0_.dot(qinv_ * a0_));
  w_eff_ = (qinv_ * a0_) / s;
}

StepOutput CmvRlsEngine::step(const CVec& r) {
  if (diverged_) return {0.0, 0.0, 0.0, lambda_};
  const cplx y = w_eff_.dot(r);
  pi_.noalias() = qinv_ * r;
  const double denom = lambda_ + std::real(r.dot(pi_));
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    diverged_ = true;
    return {y, 0.0, y, lambda_};
  }
  k_ = pi_ / denom;
  qinv_ -= k_ * pi_.adjoint();
  qinv_ /= lambda_;
  resymmetrize(qinv_);
  const CVec qa = qinv_ * a0_;
  const double s = std::real(a0_.dot(qa));
  if (!(s > 1e-300) || !std::isfinite(s)) {
    diverged_ = true;
    return {y, 0.0, y, lambda_};
  }
  w_eff_ = qa / s;
  if (!(w_eff_.squaredNorm() < kWeightNormLimit2)) diverged_ = true;
  return {y, 0.0, y, lambda_};
}

StepOutput engine_step(Engine& engine, const CVec& r) {
  return std::visit([&r](auto& e) { return e.step(r); }, engine);
}

const CVec& engine_effective_weight(const Engine& engine) {
  return std::visit([](const auto& e) -> const CVec& { return e.effective_weight(); }, engine);
}

bool engine_diverged(const Engine& engine) {
  return std::visit([](const auto& e) { return e.diverged(); }, engine);
}

CVec batch_ccm_solution(const std::vector<CVec>& xs, const std::vector<cplx>& ds, double lambda,
                        double init_delta, const CVec* w0) {
  if (xs.empty() || xs.size() != ds.size())
    throw std::invalid_argument("batch_ccm_solution: empty or mismatched streams");
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("batch_ccm_solution: lambda must lie in (0, 1]");
  const Eigen::Index n = xs.front().size();
  CMat q = CMat::Zero(n, n);
  CVec p = CVec::Zero(n);
  const std::size_t count = xs.size();
  double weight = std::pow(lambda, static_cast<double>(count));
  if (init_delta > 0.0) {
    q += weight * init_delta * CMat::Identity(n, n);
    if (w0 != nullptr) p += weight * init_delta * (*w0);
  }
  for (std::size_t i = 0; i < count; ++i) {
    weight = std::pow(lambda, static_cast<double>(count - 1 - i));
    q.noalias() += weight * (xs[i] * xs[i].adjoint());
    p.noalias() += weight * xs[i] * std::conj(ds[i]);
  }
  Eigen::FullPivLU<CMat> lu(q);
  if (!lu.isInvertible())
    throw std::domain_error("batch_ccm_solution: singular accumulated correlation matrix");
  return lu.solve(p);
}

}  // namespace gscbeam
