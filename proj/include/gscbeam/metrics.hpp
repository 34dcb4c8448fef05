#ifndef GSCBEAM_METRICS_HPP
#define GSCBEAM_METRICS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gscbeam/array_model.hpp"
#include "gscbeam/types.hpp"

namespace gscbeam {

// 10 log10( |w^H a0|^2 / (sum_k>=1 |w^H a_k|^2 + sigma2 ||w||^2) ) with unit
// source powers; degenerate ratios return the -300 dB floor.
double output_sinr_db(const CVec& w_eff, const CMat& steering, double sigma2);

// |b0 - w^H r|^2 for one snapshot
double instantaneous_mse(const CVec& w_eff, const Snapshot& snapshot);

// Per-snapshot traces of one run.
struct RunSeries {
  std::vector<double> sinr_db;
  std::vector<double> mse;
  std::vector<double> lambda;
  std::uint64_t seed = 0;
  std::string algorithm;
  bool diverged = false;
};

// Snapshot-wise mean/std across the non-diverged runs of an ensemble.
struct EnsembleSummary {
  std::vector<double> mean_sinr_db;
  std::vector<double> std_sinr_db;
  std::vector<double> mean_mse;
  std::vector<double> mean_lambda;
  int n_runs = 0;
  int n_excluded = 0;
};

EnsembleSummary summarize(const std::vector<RunSeries>& runs);

// (curve[n+window] - curve[n]) / window on an ensemble-mean SINR curve
double convergence_rate_db_per_iter(const std::vector<double>& mean_sinr_db, int snapshot,
                                    int window = 40);

// sample standard deviation across runs of the per-run SINR at one snapshot
double ensemble_std_db(const std::vector<RunSeries>& runs, int snapshot);

}  // namespace gscbeam

#endif
