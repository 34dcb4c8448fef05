#ifndef GSCBEAM_ENGINES_HPP
#define GSCBEAM_ENGINES_HPP

#include <variant>
#include <vector>

#include "gscbeam/array_model.hpp"
#include "gscbeam/forgetting.hpp"
#include "gscbeam/gsc.hpp"
#include "gscbeam/rng.hpp"
#include "gscbeam/types.hpp"

namespace gscbeam {

struct StepOutput {
  cplx y;       // beamformer output for this snapshot
  cplx d;       // desired response used by the recursion
  cplx e;       // a-priori error d - w^H x
  double lambda_used;
};

// Which lambda enters the gain and inverse update of step i: the value
// produced from this step's policy update, or the previous step's.
enum class LambdaTiming { kCurrent, kPrevious };

// Diagonal loading delta for the initial inverse Qinv(0) = I/delta, chosen
// by input SNR (10 below 2.5 dB, 0.1 above 17.5 dB, 1 in between).
double loading_delta_for_snr(double snr_db);

// Constant-modulus RLS in the sidelobe-canceler decomposition. Each step
// runs, in order: effective weight and output, modulated data vector and
// desired response, policy lambda, gain, inverse update, error and weight
// update. A non-positive gain denominator or a weight norm above 1e6 marks
// the run as diverged; further steps become no-ops.
class GscCcmRlsEngine {
 public:
  GscCcmRlsEngine(const CVec& a0, const CMat& blocking, double v, double loading_delta,
                  ForgettingPolicy ff, Rng& init_rng,
                  LambdaTiming timing = LambdaTiming::kCurrent);

  StepOutput step(const CVec& r);

  const CVec& effective_weight() const { return w_eff_; }
  const CVec& adaptive_weight() const { return w_; }
  const CMat& qinv() const { return qinv_; }
  const ForgettingPolicy& policy() const { return ff_; }
  double v() const { return v_; }
  bool diverged() const { return diverged_; }

 private:
  CVec a0_, quiescent_;
  CMat blocking_;
  double v_;
  LambdaTiming timing_;
  ForgettingPolicy ff_;
  double lambda_prev_;

  CVec w_, w_eff_;
  CMat qinv_;
  CVec rtil_, x_, pi_, k_;
  bool diverged_ = false;
};

// Full-length constant-modulus RLS; the unit response toward the desired
// user is re-imposed by projection after every weight update.
class DfbCcmRlsEngine {
 public:
  DfbCcmRlsEngine(const CVec& a0, double v, double loading_delta, ForgettingPolicy ff,
                  Rng& init_rng, LambdaTiming timing = LambdaTiming::kCurrent);

  StepOutput step(const CVec& r);

  const CVec& effective_weight() const { return w_eff_; }
  const CMat& qinv() const { return qinv_; }
  const ForgettingPolicy& policy() const { return ff_; }
  bool diverged() const { return diverged_; }

 private:
  CVec a0_;
  double v_;
  LambdaTiming timing_;
  ForgettingPolicy ff_;
  double lambda_prev_;

  CVec w_eff_;
  CMat qinv_;
  CVec rtil_, pi_, k_;
  bool diverged_ = false;
};

// Minimum output power subject to unit response toward the desired user,
// with the data covariance inverse tracked recursively.
class CmvRlsEngine {
 public:
  CmvRlsEngine(const CVec& a0, double loading_delta, double lambda);

  StepOutput step(const CVec& r);

  const CVec& effective_weight() const { return w_eff_; }
  const CMat& qinv() const { return qinv_; }
  bool diverged() const { return diverged_; }

 private:
  CVec a0_;
  double lambda_;
  CVec w_eff_;
  CMat qinv_;
  CVec pi_, k_;
  bool diverged_ = false;
};

using Engine = std::variant<GscCcmRlsEngine, DfbCcmRlsEngine, CmvRlsEngine>;

StepOutput engine_step(Engine& engine, const CVec& r);
const CVec& engine_effective_weight(const Engine& engine);
bool engine_diverged(const Engine& engine);

// Direct exponentially-weighted least-squares solve over recorded streams:
// Q = lambda^N delta I + sum lambda^{N-n} x x^H,
// p = lambda^N delta w0 + sum lambda^{N-n} x d*,
// returns Q^{-1} p. delta/w0 model the recursion's initial condition; with
// delta = 0 this is the plain weighted sum (throws if Q is singular).
CVec batch_ccm_solution(const std::vector<CVec>& xs, const std::vector<cplx>& ds, double lambda,
                        double init_delta = 0.0, const CVec* w0 = nullptr);

}  // namespace gscbeam

#endif
