#include "gscbeam/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace gscbeam {

double output_sinr_db(const CVec& w_eff, const CMat& steering, double sigma2) {
  if (steering.rows() != w_eff.size())
    throw std::invalid_argument("output_sinr_db: dimension mismatch");
  const double signal = std::norm(w_eff.dot(steering.col(0)));
  double denom = sigma2 * w_eff.squaredNorm();
  for (Eigen::Index k = 1; k < steering.cols(); ++k)
    denom += std::norm(w_eff.dot(steering.col(k)));
  if (!(signal > 0.0)) return kSinrFloorDb;
  if (!(denom > 0.0)) return -kSinrFloorDb;  // noiseless single user: unbounded above
  const double value = to_db(signal / denom);
  if (!std::isfinite(value)) return value > 0.0 ? -kSinrFloorDb : kSinrFloorDb;
  return std::max(value, kSinrFloorDb);
}

double instantaneous_mse(const CVec& w_eff, const Snapshot& snapshot) {
  if (w_eff.size() != snapshot.received.size())
    throw std::invalid_argument("instantaneous_mse: dimension mismatch");
  return std::norm(cplx(snapshot.symbols(0), 0.0) - w_eff.dot(snapshot.received));
}

EnsembleSummary summarize(const std::vector<RunSeries>& runs) {
  if (runs.empty()) throw std::invalid_argument("summarize: no runs");
  const std::size_t n = runs.front().sinr_db.size();
  for (const auto& r : runs)
    if (r.sinr_db.size() != n || r.mse.size() != n || r.lambda.size() != n)
      throw std::invalid_argument("summarize: ragged run series");

  EnsembleSummary s;
  s.mean_sinr_db.assign(n, 0.0);
  s.std_sinr_db.assign(n, 0.0);
  s.mean_mse.assign(n, 0.0);
  s.mean_lambda.assign(n, 0.0);
  for (const auto& r : runs) {
    if (r.diverged) {
      ++s.n_excluded;
      continue;
    }
    ++s.n_runs;
    for (std::size_t i = 0; i < n; ++i) {
      s.mean_sinr_db[i] += r.sinr_db[i];
      s.mean_mse[i] += r.mse[i];
      s.mean_lambda[i] += r.lambda[i];
    }
  }
  if (s.n_runs == 0) return s;
  for (std::size_t i = 0; i < n; ++i) {
    s.mean_sinr_db[i] /= s.n_runs;
    s.mean_mse[i] /= s.n_runs;
    s.mean_lambda[i] /= s.n_runs;
  }
  if (s.n_runs >= 2) {
    for (const auto& r : runs) {
      if (r.diverged) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = r.sinr_db[i] - s.mean_sinr_db[i];
        s.std_sinr_db[i] += d * d;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      s.std_sinr_db[i] = std::sqrt(s.std_sinr_db[i] / (s.n_runs - 1));
  }
  return s;
}

double convergence_rate_db_per_iter(const std::vector<double>& mean_sinr_db, int snapshot,
                                    int window) {
  if (window < 1) throw std::invalid_argument("convergence_rate: window must be positive");
  if (snapshot < 0 || snapshot + window >= static_cast<int>(mean_sinr_db.size()))
    throw std::out_of_range("convergence_rate: snapshot + window outside the series");
  return (mean_sinr_db[snapshot + window] - mean_sinr_db[snapshot]) / window;
}

double ensemble_std_db(const std::vector<RunSeries>& runs, int snapshot) {
  double mean = 0.0;
  int count = 0;
  for (const auto& r : runs) {
    if (r.diverged) continue;
    if (snapshot < 0 || snapshot >= static_cast<int>(r.sinr_db.size()))
      throw std::out_of_range("ensemble_std_db: snapshot outside the series");
    mean += r.sinr_db[snapshot];
    ++count;
  }
  if (count < 2) throw std::invalid_argument("ensemble_std_db: need at least 2 runs");
  mean /= count;
  double ss = 0.0;
  for (const auto& r : runs) {
    if (r.diverged) continue;
    const double d = r.sinr_db[snapshot] - mean;
    ss += d * d;
  }
  return std::sqrt(ss / (count - 1));
}

}  // namespace gscbeam
