#ifndef GSCBEAM_FORGETTING_HPP
#define GSCBEAM_FORGETTING_HPP

#include "gscbeam/types.hpp"

namespace gscbeam {

// Tally of real multiply/add operations, used by the complexity bench.
// Complex arithmetic is expanded (one complex*complex product counts as
// 4 multiplications and 2 additions).
struct OpCounts {
  long long multiplications = 0;
  long long additions = 0;
};

struct TavffParams {
  double alpha = 0.9;
  double beta = 0.01;
  double lambda_min = 0.96;
  double lambda_max = 0.984;
};

struct GvffParams {
  double step = 8e-5;
  double lambda_init = 0.95;
  double lambda_min = 0.94;
  double lambda_max = 0.98;
};

// Pluggable forgetting-factor rule: a fixed value, the time-averaged rule
// (a leaky integrator of the instantaneous constant-modulus deviation,
// mapped through 1/(1+phi) and clamped), or a gradient-adaptive rule that
// follows the squared-error gradient via recursive sensitivity propagation.
//
// Every emitted lambda lies in [lambda_min, lambda_max]; the fixed rule
// degenerates to lambda_min = lambda_max = lambda.
class ForgettingPolicy {
 public:
  enum class Kind { kFixed, kTavff, kGvff };

  static ForgettingPolicy fixed(double lambda);
  static ForgettingPolicy tavff(const TavffParams& params);
  // dim is the length of the adaptive weight the policy rides along with
  static ForgettingPolicy gvff(const GvffParams& params, int dim);

  Kind kind() const { return kind_; }
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }

  // lambda before any data has been seen
  double current_lambda() const { return lambda_; }
  double phi() const { return phi_; }

  // Produces lambda(i) for the step being processed. y is the beamformer
  // output, x the regression vector and e the a-priori error of the step;
  // the time-averaged rule only reads y, the gradient rule reads x and e.
  double update(cplx y, const CVec& x, cplx e, OpCounts* counter = nullptr);

  // Post-step sensitivity propagation for the gradient rule (no-op for the
  // others). Arguments are this step's RLS internals: gain k, pi = Qinv*x
  // computed with the pre-update inverse, the gain denominator, the lambda
  // actually applied, and the post-update inverse.
  void propagate(const CVec& x, cplx e, const CVec& gain, const CVec& pi, double denom,
                 double lambda, const CMat& qinv_new, OpCounts* counter = nullptr);

 private:
  ForgettingPolicy() = default;

  Kind kind_ = Kind::kFixed;
  double lambda_ = 0.998;
  double lambda_min_ = 0.998;
  double lambda_max_ = 0.998;

  // time-averaged rule state
  double alpha_ = 0.0;
  double beta_ = 0.0;
  double phi_ = 0.0;

  // gradient rule state
  double step_ = 0.0;
  CMat sens_;  // d(Qinv)/d(lambda)
  CVec psi_;   // d(w)/d(lambda)
};

// Per-iteration cost model of each mechanism (multiplications, additions)
// as a function of the number of sensors.
OpCounts operation_counts(ForgettingPolicy::Kind kind, int num_sensors);

}  // namespace gscbeam

#endif
