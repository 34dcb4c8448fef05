#include "gscbeam/selfcheck.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "gscbeam/analysis.hpp"
#include "gscbeam/experiment.hpp"
#include "gscbeam/gsc.hpp"

namespace gscbeam {

namespace {

bool report(std::ostream& out, const char* name, bool ok, const std::string& detail) {
  out << (ok ? "[PASS] " : "[FAIL] ") << name;
  if (!detail.empty()) out << " (" << detail << ")";
  out << "\n";
  return ok;
}

CVec random_cvec(Eigen::Index n, Rng& rng, double scale = 1.0) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.circular_gaussian(scale * scale);
  return v;
}

bool check_array_model(std::ostream& out) {
  Rng rng(11);
  bool ok = true;
  double worst_norm = 0.0;
  const ArrayGeometry geometry{16, 0.5};
  for (int t = 0; t < 50; ++t) {
    const double theta = rng.uniform(1.0, 179.0);
    worst_norm = std::max(worst_norm, std::abs(steering_vector(geometry, theta).norm() - 1.0));
  }
  ok = ok && worst_norm < 1e-12;

  Scenario scn{geometry, {70.0, 20.0, 40.0, 110.0, 150.0}, 0.1};
  const CMat r = analytic_covariance(scn);
  const double herm = (r - r.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<CMat> eig(r);
  const double min_eig = eig.eigenvalues().minCoeff();
  ok = ok && herm < 1e-12 && min_eig >= scn.noise_variance - 1e-9;

  std::ostringstream detail;
  detail << "max norm err " << worst_norm << ", min eig " << min_eig;
  return report(out, "array model: steering norms and covariance", ok, detail.str());
}

bool check_blocking(std::ostream& out) {
  Rng rng(12);
  bool ok = true;
  double worst = 0.0;
  const ArrayGeometry geometry{16, 0.5};
  for (int t = 0; t < 20; ++t) {
    const CVec a0 = steering_vector(geometry, rng.uniform(1.0, 179.0));
    const CMat b = blocking_matrix(a0);
    worst = std::max(worst, (b.adjoint() * a0).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (b.adjoint() * b - CMat::Identity(15, 15)).cwiseAbs().maxCoeff());
  }
  ok = worst < 1e-12;
  std::ostringstream detail;
  detail << "max residual " << worst;
  return report(out, "blocking matrix: orthogonality invariants", ok, detail.str());
}

bool check_recursive_vs_batch(std::ostream& out) {
  const ArrayGeometry geometry{16, 0.5};
  Scenario scn{geometry, {80.0, 30.0, 55.0, 120.0, 160.0}, noise_variance_from_snr(15.0)};
  const CMat a = steering_matrix(geometry, scn.doas_deg);
  const CVec a0 = a.col(0);
  const CMat b = blocking_matrix(a0);
  const double lambda = 0.97;
  const double delta = 1.0;
  Rng init_rng(21), data_rng(22);
  GscCcmRlsEngine engine(a0, b, 1.0, delta, ForgettingPolicy::fixed(lambda), init_rng);
  const CVec w0 = engine.adaptive_weight();
  std::vector<CVec> xs;
  std::vector<cplx> ds;
  for (int i = 0; i < 50; ++i) {
    const Snapshot snap = generate_snapshot(scn, a, data_rng);
    const StepOutput outp = engine.step(snap.received);
    xs.push_back(b.adjoint() * (std::conj(outp.y) * snap.received));
    ds.push_back(outp.d);
  }
  const CVec batch = batch_ccm_solution(xs, ds, lambda, delta, &w0);
  const double rel = (batch - engine.adaptive_weight()).norm() / engine.adaptive_weight().norm();

  // one-step inverse against a direct solve of lambda I + x x^H
  Rng rng2(23);
  const CVec x = random_cvec(15, rng2);
  const CMat qinv0 = CMat::Identity(15, 15);
  const CVec pi = qinv0 * x;
  const double den = lambda + std::real(x.dot(pi));
  CMat qinv1 = (qinv0 - (pi / den) * pi.adjoint()) / lambda;
  const CMat direct = (lambda * CMat::Identity(15, 15) + x * x.adjoint()).inverse();
  const double lemma_rel = (qinv1 - direct).norm() / direct.norm();

  const bool ok = rel < 1e-6 && lemma_rel < 1e-10;
  std::ostringstream detail;
  detail << "batch rel " << rel << ", lemma rel " << lemma_rel;
  return report(out, "recursive equals batch least squares", ok, detail.str());
}

bool check_constraint(std::ostream& out) {
  const ExperimentConfig cfg = default_config();
  const auto stages = build_stages(cfg, {75.0, 25.0, 50.0, 115.0, 155.0});
  const CMat blocking = blocking_matrix(stages.front().steering.col(0));
  const CVec a0 = stages.front().steering.col(0);
  double worst = 0.0;
  for (const auto& alg : known_algorithms()) {
    Rng data_rng(31), init_rng(32);
    Engine engine = make_engine(alg, cfg, a0, blocking, init_rng);
    for (int i = 0; i < 2000; ++i) {
      const Snapshot snap = generate_snapshot(stages.front().scenario,
                                              stages.front().steering, data_rng);
      engine_step(engine, snap.received);
      if (engine_diverged(engine)) break;
      const double v = alg == "cmv" ? 1.0 : cfg.v;
      worst = std::max(worst,
                       std::abs(engine_effective_weight(engine).dot(a0) - cplx(v, 0.0)));
    }
  }
  const bool ok = worst < 1e-10;
  std::ostringstream detail;
  detail << "max |w^H a0 - v| = " << worst;
  return report(out, "constraint preserved by every engine", ok, detail.str());
}

bool check_decomposition(std::ostream& out) {
  const ArrayGeometry geometry{16, 0.5};
  Scenario scn{geometry, {85.0, 35.0, 60.0, 125.0, 165.0}, 0.1};
  const CMat a = steering_matrix(geometry, scn.doas_deg);
  Rng rng(41);
  CVec w = random_cvec(16, rng, 0.3);
  w += a.col(0);
  const CostDecomposition dec = cm_cost_decomposition(w, a, scn.noise_variance);
  double acc = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const Snapshot snap = generate_snapshot(scn, a, rng);
    acc += instantaneous_cm_cost(w, snap.received);
  }
  acc /= n;
  const double rel = std::abs(acc - dec.total) / dec.total;
  const bool ok = rel < 0.03;
  std::ostringstream detail;
  detail << "monte carlo " << acc << " vs closed form " << dec.total << ", rel " << rel;
  return report(out, "cost decomposition matches simulation", ok, detail.str());
}

CMat fd_hessian(const CVec& w, const CMat& abar, double v, double sigma2, double h) {
  const Eigen::Index m = w.size();
  const auto cost = [&](const CVec& p) {
    CVec u(abar.cols() + 1);
    u(0) = v;
    u.tail(abar.cols()) = abar.adjoint() * p;
    return cm_cost_noise_free(u) + sigma2 * cm_cost_noise_term(p, u, sigma2);
  };
  const auto perturb = [&](Eigen::Index i, bool imag, double amount) {
    CVec p = w;
    p(i) += imag ? cplx(0.0, amount) : cplx(amount, 0.0);
    return p;
  };
  // second partials over the real coordinates
  const auto second = [&](Eigen::Index i, bool imag_i, Eigen::Index j, bool imag_j) {
    if (i == j && imag_i == imag_j) {
      return (cost(perturb(i, imag_i, h)) - 2.0 * cost(w) + cost(perturb(i, imag_i, -h))) /
             (h * h);
    }
    CVec pp = perturb(i, imag_i, h), pm = perturb(i, imag_i, h);
    CVec mp = perturb(i, imag_i, -h), mm = perturb(i, imag_i, -h);
    pp(j) += imag_j ? cplx(0.0, h) : cplx(h, 0.0);
    pm(j) -= imag_j ? cplx(0.0, h) : cplx(h, 0.0);
    mp(j) += imag_j ? cplx(0.0, h) : cplx(h, 0.0);
    mm(j) -= imag_j ? cplx(0.0, h) : cplx(h, 0.0);
    return (cost(pp) - cost(pm) - cost(mp) + cost(mm)) / (4.0 * h * h);
  };
  CMat hess(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) {
      const double re = second(r, false, c, false) + second(r, true, c, true);
      const double im = second(r, true, c, false) - second(r, false, c, true);
      hess(r, c) = 0.25 * cplx(re, im);
    }
  }
  return hess;
}

bool check_hessian(std::ostream& out) {
  const ArrayGeometry geometry{8, 0.5};
  const std::vector<double> doas = {90.0, 40.0, 140.0};
  const CMat a = steering_matrix(geometry, doas);
  const CMat abar = a.rightCols(2);
  Rng rng(51);
  const double v = std::sqrt(0.6), sigma2 = 1e-4;
  double worst_rel = 0.0;
  for (int t = 0; t < 3; ++t) {
    const CVec w = random_cvec(8, rng, 0.4);
    const CMat analytic = cm_cost_hessian(w, abar, v, sigma2);
    const CMat fd = fd_hessian(w, abar, v, sigma2, 2e-3);
    worst_rel = std::max(worst_rel,
                         (analytic - fd).cwiseAbs().maxCoeff() / analytic.cwiseAbs().maxCoeff());
  }
  const bool ok = worst_rel < 1e-4;
  std::ostringstream detail;
  detail << "max relative entry error " << worst_rel;
  return report(out, "hessian matches finite differences", ok, detail.str());
}

bool check_tavff_moments(std::ostream& out) {
  TavffParams params;
  params.alpha = 0.9;
  params.beta = 0.01;
  params.lambda_min = 0.5;
  params.lambda_max = 0.9999;
  ForgettingPolicy policy = ForgettingPolicy::tavff(params);
  const double j1_syn = 0.5;
  Rng rng(61);
  const CVec dummy(1);
  double phi_sum = 0.0, lam_sum = 0.0;
  const int burn = 5000, n = 200000;
  for (int i = 0; i < burn + n; ++i) {
    const double expo = -std::log(1.0 - rng.uniform01());
    const double y2 = 1.0 + std::sqrt(j1_syn) * (expo - 1.0);
    const double lam = policy.update(cplx(std::sqrt(y2), 0.0), dummy, 0.0);
    if (i >= burn) {
      phi_sum += policy.phi();
      lam_sum += lam;
    }
  }
  const double phi_mean = phi_sum / n, lam_mean = lam_sum / n;
  const FfMoments m = predict_ff_moments(params.alpha, params.beta, j1_syn);
  const double phi_rel = std::abs(phi_mean - m.e_phi) / m.e_phi;
  const double lam_err = std::abs(lam_mean - m.e_lambda);
  const bool ok = phi_rel < 0.05 && lam_err < 0.01;
  std::ostringstream detail;
  detail << "phi rel " << phi_rel << ", lambda err " << lam_err;
  return report(out, "forgetting-factor moments match prediction", ok, detail.str());
}

bool check_lambda_bounds(std::ostream& out) {
  ExperimentConfig cfg = default_config();
  cfg.runs = 4;
  cfg.snapshots = 1500;
  EnsembleResult result = run_ensemble(cfg, 1);
  bool ok = true;
  for (const auto& alg : result.algorithms) {
    double lo = 1.0, hi = 0.0;
    if (alg.algorithm == "ccm-fixed" || alg.algorithm == "cmv")
      lo = hi = cfg.fixed_lambda;
    else if (alg.algorithm == "ccm-tavff") {
      lo = cfg.tavff.lambda_min;
      hi = cfg.tavff.lambda_max;
    } else {
      lo = cfg.gvff.lambda_min;
      hi = cfg.gvff.lambda_max;
    }
    for (const auto& run : alg.runs) {
      if (run.diverged) continue;
      for (double l : run.lambda) ok = ok && l >= lo - 1e-15 && l <= hi + 1e-15;
    }
  }
  return report(out, "every emitted lambda stays inside its bounds", ok, "");
}

bool check_determinism(std::ostream& out) {
  ExperimentConfig cfg = default_config();
  cfg.runs = 6;
  cfg.snapshots = 120;
  cfg.algorithms = known_algorithms();
  const std::string first = series_table("check", cfg, run_ensemble(cfg, 1)).to_string();
  const std::string second = series_table("check", cfg, run_ensemble(cfg, 4)).to_string();
  const bool ok = first == second;
  return report(out, "ensembles are byte-identical across worker counts", ok, "");
}

}  // namespace

int run_selfcheck(std::ostream& out) {
  int failures = 0;
  failures += !check_array_model(out);
  failures += !check_blocking(out);
  failures += !check_recursive_vs_batch(out);
  failures += !check_constraint(out);
  failures += !check_decomposition(out);
  failures += !check_hessian(out);
  failures += !check_tavff_moments(out);
  failures += !check_lambda_bounds(out);
  failures += !check_determinism(out);
  out << (failures == 0 ? "all checks passed" : "some checks FAILED") << "\n";
  return failures;
}

void run_bench(std::ostream& out) {
  out << "mechanism,sensors,model_mults,model_adds,measured_mults,measured_adds\n";
  for (int m : {4, 8, 16}) {
    {
      const OpCounts model = operation_counts(ForgettingPolicy::Kind::kTavff, m);
      ForgettingPolicy policy = ForgettingPolicy::tavff(TavffParams{});
      OpCounts measured;
      Rng rng(7);
      const CVec dummy(1);
      const int iters = 1000;
      for (int i = 0; i < iters; ++i)
        policy.update(rng.circular_gaussian(1.0), dummy, 0.0, &measured);
      out << "tavff," << m << "," << model.multiplications << "," << model.additions << ","
          << measured.multiplications / iters << "," << measured.additions / iters << "\n";
    }
    {
      const OpCounts model = operation_counts(ForgettingPolicy::Kind::kGvff, m);
      ForgettingPolicy policy = ForgettingPolicy::gvff(GvffParams{}, m);
      OpCounts measured;
      Rng rng(8);
      const int iters = 200;
      const CMat qinv = CMat::Identity(m, m);
      for (int i = 0; i < iters; ++i) {
        const CVec x = random_cvec(m, rng);
        const cplx e = rng.circular_gaussian(1.0);
        const CVec pi = qinv * x;
        const double den = 0.97 + std::real(x.dot(pi));
        const CVec k = pi / den;
        policy.update(0.0, x, e, &measured);
        policy.propagate(x, e, k, pi, den, 0.97, qinv, &measured);
      }
      out << "gvff," << m << "," << model.multiplications << "," << model.additions << ","
          << measured.multiplications / iters << "," << measured.additions / iters << "\n";
    }
    {
      const OpCounts model = operation_counts(ForgettingPolicy::Kind::kFixed, m);
      out << "fixed," << m << "," << model.multiplications << "," << model.additions << ",0,0\n";
    }
  }
}

}  // namespace gscbeam
