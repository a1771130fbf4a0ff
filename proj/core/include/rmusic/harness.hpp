#pragma once

#include <string>
#include <vector>

#include "rmusic/config.hpp"

namespace rmusic {

struct TimingRecord {
  Method method;
  int m = 0;
  int k = 0;
  int n = 0;
  double elapsed_s = 0.0;  // median over reps
  int reps = 0;
  std::uint64_t seed = 0;
  bool skipped = false;
  std::string skip_reason;
};

struct RmseRecord {
  Method method;
  double snr_db = 0.0;
  int trials = 0;
  double rmse_deg = 0.0;
  int shortfall_count = 0;
};

struct BoundRecord {
  std::uint64_t seed = 0;
  double err_norm_sq = 0.0;   // ||R - R_K||_F^2
  double lra_residual = 0.0;  // ||C Xhat - R||_F^2
  double ratio = 0.0;         // lra_residual / err_norm_sq; 0 when exact
  bool exact = false;         // err_norm_sq below the zero-residual floor
};

// Pseudo-spectra for every configured estimator on one drawn scene, plus a
// peak table with per-target absolute errors. A failing estimator is
// recorded in the peak table and skipped, not fatal. Files written under
// cfg.out_dir: spectrum_<method>.csv, peaks.csv, meta.txt.
void run_spectrum_demo(const ExperimentConfig& cfg);

// Times the factorization stage only: covariance is built once per sweep
// point and excluded; sketch generation happens inside the timed call.
// Median over timing.reps runs after timing.warmup warm-ups. A method
// whose first run exceeds timing.budget_s is skipped with a reason.
// Writes timing.csv and meta.txt.
std::vector<TimingRecord> run_timing_sweep(const ExperimentConfig& cfg);

// Monte Carlo RMSE over rmse.snr_grid_db. Each trial draws a fresh scene
// from the template with a seed derived from cfg.seed, shared across
// methods. Trials failing to produce K peaks count toward shortfall and
// enter the aggregate with missing angles penalized at 90 degrees.
// Trials may run on cfg.threads threads; results are identical for any
// thread count. Writes rmse.csv and meta.txt.
std::vector<RmseRecord> run_rmse_sweep(const ExperimentConfig& cfg);

// Low-rank approximation bound check: per seed, R = R_K + E with
// ||E||_F = bound.residual_scale * ||R_K||_F, runs the randomized
// factorization and records the residual ratio. Writes bound.csv (plus
// quantile summary in meta.txt).
std::vector<BoundRecord> run_bound_check(const ExperimentConfig& cfg);

// Snapshot matrix dump for external tooling: draws one scene, writes
// snapshots.csv (M rows; columns re_0, im_0, ..., re_{N-1}, im_{N-1})
// and meta.txt.
void run_simulate(const ExperimentConfig& cfg);

// Entry point behind the command-line tool. Subcommands: demo, bench,
// rmse, bound, simulate. Returns 0 on success, 1 on configuration
// errors, 2 on runtime failures.
int cli_main(int argc, char** argv);

// Assignment cost used by the RMSE sweep when an estimator under-detects:
// estimated angles are matched to a same-length subset of the truth in
// order, unmatched truths cost penalty_deg each. Returns the mean squared
// error over all true targets.
double matched_mse(const std::vector<double>& estimated_deg,
                   const std::vector<double>& true_deg, double penalty_deg = 90.0);

}  // namespace rmusic
