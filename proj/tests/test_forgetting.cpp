#include <doctest.h>

#include <cmath>

#include "gscbeam/analysis.hpp"
#include "gscbeam/forgetting.hpp"
#include "gscbeam/rng.hpp"

using namespace gscbeam;

namespace {
const CVec kNoVec = CVec::Zero(1);
}

TEST_CASE("time-averaged rule saturates high at zero deviation") {
  TavffParams p;
  p.lambda_min = 0.9;
  p.lambda_max = 0.997;
  ForgettingPolicy policy = ForgettingPolicy::tavff(p);
  // |y| = 1 keeps phi at zero, so 1/(1+phi) = 1 clamps to the upper bound
  const double lam = policy.update(cplx(1.0, 0.0), kNoVec, 0.0);
  CHECK(lam == doctest::Approx(p.lambda_max));
  CHECK(policy.phi() == doctest::Approx(0.0));
}

TEST_CASE("time-averaged rule arithmetic on one step") {
  TavffParams p;
  p.alpha = 0.9;
  p.beta = 0.1;
  p.lambda_min = 0.6;
  p.lambda_max = 0.99;
  ForgettingPolicy policy = ForgettingPolicy::tavff(p);
  // drive phi to exactly 1: alpha*phi + beta*dev^2 with phi preloaded via a
  // first step of dev^2 = 10 -> phi = 1.0
  policy.update(cplx(std::sqrt(1.0 + std::sqrt(10.0)), 0.0), kNoVec, 0.0);
  CHECK(policy.phi() == doctest::Approx(1.0).epsilon(1e-12));
  // now |y|^2 = 2: phi' = 0.9 + 0.1 = 1.0, lambda = clamp(0.5) = 0.6
  const double lam = policy.update(cplx(std::sqrt(2.0), 0.0), kNoVec, 0.0);
  CHECK(policy.phi() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lam == doctest::Approx(0.6));
}

TEST_CASE("larger deviation gives a smaller pre-clamp lambda") {
  // monotonicity at a frozen integrator state
  TavffParams p;
  p.lambda_min = 0.01;
  p.lambda_max = 0.999999;
  Rng rng(13);
  double prev_dev = 0.0;
  for (double dev2 : {0.0, 0.1, 0.5, 1.0, 4.0, 20.0}) {
    ForgettingPolicy a = ForgettingPolicy::tavff(p);
    ForgettingPolicy b = ForgettingPolicy::tavff(p);
    const double lam_small = a.update(cplx(std::sqrt(1.0 + std::sqrt(prev_dev)), 0.0), kNoVec, 0.0);
    const double lam_large = b.update(cplx(std::sqrt(1.0 + std::sqrt(dev2)), 0.0), kNoVec, 0.0);
    if (dev2 > prev_dev) CHECK(lam_large < lam_small);
    prev_dev = dev2;
  }
}

TEST_CASE("time-averaged steady state matches the first-moment prediction") {
  TavffParams p;
  p.alpha = 0.9;
  p.beta = 0.01;
  p.lambda_min = 0.5;
  p.lambda_max = 0.9999;
  ForgettingPolicy policy = ForgettingPolicy::tavff(p);
  const double j1_syn = 0.5;
  Rng rng(61);
  double phi_sum = 0.0, lam_sum = 0.0;
  const int burn = 5000, n = 200000;
  for (int i = 0; i < burn + n; ++i) {
    const double expo = -std::log(1.0 - rng.uniform01());  // Exp(1), mean 1, var 1
    const double y2 = 1.0 + std::sqrt(j1_syn) * (expo - 1.0);
    const double lam = policy.update(cplx(std::sqrt(y2), 0.0), kNoVec, 0.0);
    if (i >= burn) {
      phi_sum += policy.phi();
      lam_sum += lam;
    }
  }
  const FfMoments m = predict_ff_moments(p.alpha, p.beta, j1_syn);
  CHECK(std::abs(phi_sum / n - m.e_phi) / m.e_phi < 0.05);
  CHECK(std::abs(lam_sum / n - m.e_lambda) < 0.01);
}

TEST_CASE("gradient rule") {
  GvffParams p;
  p.lambda_init = 0.97;
  p.lambda_min = 0.94;
  p.lambda_max = 0.99;
  Rng rng(17);

  SUBCASE("zero step keeps lambda at its initial value") {
    GvffParams frozen = p;
    frozen.step = 0.0;
    ForgettingPolicy policy = ForgettingPolicy::gvff(frozen, 6);
    CVec x(6), k(6), pi(6);
    for (int t = 0; t < 50; ++t) {
      for (int i = 0; i < 6; ++i) {
        x(i) = rng.circular_gaussian(1.0);
        pi(i) = x(i);
        k(i) = x(i) / 2.0;
      }
      const cplx e = rng.circular_gaussian(1.0);
      CHECK(policy.update(0.0, x, e) == doctest::Approx(0.97));
      policy.propagate(x, e, k, pi, 2.0, 0.97, CMat::Identity(6, 6));
    }
  }
  SUBCASE("a huge gradient step clamps to the violated bound") {
    GvffParams wild = p;
    wild.step = 1e9;
    ForgettingPolicy policy = ForgettingPolicy::gvff(wild, 3);
    // build nonzero sensitivity first so the gradient is nonzero
    CVec x(3);
    x << cplx(1, 0), cplx(0, 1), cplx(1, 1);
    const CVec k = x / 3.0, pi = x;
    policy.propagate(x, cplx(1.0, 0.0), k, pi, 3.0, 0.97, 0.5 * CMat::Identity(3, 3));
    const double lam = policy.update(0.0, x, cplx(1.0, 0.0));
    CHECK((lam == doctest::Approx(wild.lambda_min) || lam == doctest::Approx(wild.lambda_max)));
  }
}

TEST_CASE("every policy keeps lambda inside its bounds") {
  Rng rng(23);
  TavffParams tp;
  GvffParams gp;
  ForgettingPolicy tavff = ForgettingPolicy::tavff(tp);
  ForgettingPolicy gvff = ForgettingPolicy::gvff(gp, 4);
  ForgettingPolicy fixed = ForgettingPolicy::fixed(0.97);
  CVec x(4), k(4), pi(4);
  for (int t = 0; t < 5000; ++t) {
    const cplx y = rng.circular_gaussian(4.0);
    for (int i = 0; i < 4; ++i) {
      x(i) = rng.circular_gaussian(2.0);
      pi(i) = x(i) * 1.5;
      k(i) = x(i) / 4.0;
    }
    const cplx e = rng.circular_gaussian(2.0);
    const double lt = tavff.update(y, x, e);
    const double lg = gvff.update(y, x, e);
    gvff.propagate(x, e, k, pi, 2.5, lg, CMat::Identity(4, 4));
    const double lf = fixed.update(y, x, e);
    CHECK(lt >= tp.lambda_min);
    CHECK(lt <= tp.lambda_max);
    CHECK(lg >= gp.lambda_min);
    CHECK(lg <= gp.lambda_max);
    CHECK(lf == 0.97);
  }
}

TEST_CASE("operation count model") {
  CHECK(operation_counts(ForgettingPolicy::Kind::kFixed, 16).multiplications == 0);
  CHECK(operation_counts(ForgettingPolicy::Kind::kFixed, 16).additions == 0);
  for (int m : {4, 8, 16}) {
    const OpCounts t = operation_counts(ForgettingPolicy::Kind::kTavff, m);
    CHECK(t.multiplications == 5);
    CHECK(t.additions == 3);
    const OpCounts g = operation_counts(ForgettingPolicy::Kind::kGvff, m);
    CHECK(g.multiplications == 12LL * m * m - 12 * m + 3);
    CHECK(g.additions == 5LL * m * m - 8 * m + 5);
  }
  CHECK(operation_counts(ForgettingPolicy::Kind::kGvff, 16).multiplications == 2883);
  CHECK(operation_counts(ForgettingPolicy::Kind::kGvff, 16).additions == 1157);
  CHECK_THROWS_AS(operation_counts(ForgettingPolicy::Kind::kTavff, 1), std::invalid_argument);
}

TEST_CASE("instrumented time-averaged update costs exactly the model") {
  ForgettingPolicy policy = ForgettingPolicy::tavff(TavffParams{});
  Rng rng(7);
  OpCounts measured;
  const int iters = 257;
  for (int i = 0; i < iters; ++i)
    policy.update(rng.circular_gaussian(1.0), kNoVec, 0.0, &measured);
  CHECK(measured.multiplications == 5 * iters);
  CHECK(measured.additions == 3 * iters);
}

TEST_CASE("policy constructors validate their parameters") {
  CHECK_THROWS_AS(ForgettingPolicy::fixed(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ForgettingPolicy::fixed(1.0), std::invalid_argument);
  TavffParams bad;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(ForgettingPolicy::tavff(bad), std::invalid_argument);
  TavffParams swapped;
  swapped.lambda_min = 0.99;
  swapped.lambda_max = 0.95;
  CHECK_THROWS_AS(ForgettingPolicy::tavff(swapped), std::invalid_argument);
  CHECK_THROWS_AS(ForgettingPolicy::gvff(GvffParams{}, 0), std::invalid_argument);
}
