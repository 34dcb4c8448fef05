#ifndef GSCBEAM_EXPERIMENT_HPP
#define GSCBEAM_EXPERIMENT_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "gscbeam/analysis.hpp"
#include "gscbeam/config.hpp"
#include "gscbeam/csv.hpp"
#include "gscbeam/engines.hpp"
#include "gscbeam/metrics.hpp"

namespace gscbeam {

// Raised when an ensemble loses every run to divergence.
class AllRunsDivergentError : public std::runtime_error {
 public:
  explicit AllRunsDivergentError(const std::string& what) : std::runtime_error(what) {}
};

struct AlgorithmResult {
  std::string algorithm;
  EnsembleSummary summary;
  std::vector<RunSeries> runs;
};

struct EnsembleResult {
  std::vector<AlgorithmResult> algorithms;
  std::string fingerprint;
};

// Runs every configured algorithm over the ensemble. Per-run data streams
// are derived from the master seed by run index, so each algorithm sees the
// identical snapshot sequence in run r and results do not depend on worker
// scheduling. Diverged runs are excluded from summaries and counted.
EnsembleResult run_ensemble(const ExperimentConfig& config, int workers = 1);

// Prediction pipeline: a fixed-lambda calibration ensemble estimates the
// converged beamformer, then the moment and steady-state formulas evaluate
// the expected mean squared error for the time-averaged policy.
struct MseTheory {
  OptimalEstimate optimal;
  FfMoments moments;
  MsePrediction prediction;
};
MseTheory predict_mse_for_config(const ExperimentConfig& config, int workers = 1);

// Per-snapshot series table in the fixed column contract.
CsvTable series_table(const std::string& experiment_id, const ExperimentConfig& config,
                      const EnsembleResult& result);

// Figure pipelines; each writes its tables plus a manifest under out_dir and
// returns the file paths. The config is used exactly as given.
std::vector<std::string> run_fig2a(const ExperimentConfig& config, const std::string& out_dir,
                                   int workers = 1);
std::vector<std::string> run_fig2b(const ExperimentConfig& config, const std::string& out_dir,
                                   int workers = 1);
std::vector<std::string> run_fig3(const ExperimentConfig& config, const std::string& out_dir,
                                  int workers = 1);
std::vector<std::string> run_fig4(const ExperimentConfig& config, const std::string& out_dir,
                                  int workers = 1);
std::vector<std::string> run_fig5(const ExperimentConfig& config, const std::string& out_dir,
                                  int workers = 1);

// Built-in configs reproducing the stock experiments when no --config file
// is given.
ExperimentConfig default_config_for(const std::string& experiment_id,
                                    const ConfigOverrides& overrides = {});

// Internals reused by tests and the validation command.
struct ScenarioStage {
  int start_snapshot = 0;
  Scenario scenario;
  CMat steering;
};
std::vector<ScenarioStage> build_stages(const ExperimentConfig& config,
                                        const std::vector<double>& doas);
Engine make_engine(const std::string& algorithm, const ExperimentConfig& config, const CVec& a0,
                   const CMat& blocking, Rng& init_rng);
RunSeries simulate_run(const std::string& algorithm, const ExperimentConfig& config,
                       const std::vector<ScenarioStage>& stages, const CMat& blocking,
                       std::uint64_t run_index);
WindowStats run_calibration(const ExperimentConfig& config, const ScenarioStage& stage,
                            const CMat& blocking, double lambda_fixed, int snapshots,
                            double window_fraction, std::uint64_t run_index);

}  // namespace gscbeam

#endif
