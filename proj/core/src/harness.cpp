#include "rmusic/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "rmusic/array_sim.hpp"
#include "rmusic/rng.hpp"
#include "rmusic/sketch.hpp"
#include "rmusic/spectrum.hpp"
#include "rmusic/subspace.hpp"

namespace rmusic {

namespace {

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& cfg) {
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string host_description() {
  std::string s = "compiler ";
#if defined(__VERSION__)
  s += __VERSION__;
#else
  s += "unknown";
#endif
  s += ", Eigen " + std::to_string(EIGEN_WORLD_VERSION) + "." +
       std::to_string(EIGEN_MAJOR_VERSION) + "." + std::to_string(EIGEN_MINOR_VERSION);
  s += ", " + std::to_string(sizeof(void*) * 8) + "-bit";
  return s;
}

void write_meta(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                const std::vector<std::pair<std::string, std::string>>& extra) {
  std::string meta;
  meta += "artifact = rmusic 1.0.0\n";
  meta += "host = " + host_description() + "\n";
  for (const auto& [key, value] : cfg.echo()) meta += key + " = " + value + "\n";
  for (const auto& [key, value] : extra) meta += key + " = " + value + "\n";
  write_file(dir / "meta.txt", meta);
}

Scene scene_from_template(const SceneTemplate& t, std::uint64_t seed) {
  if (t.angles_deg.empty())
    return make_random_scene(t.elements, t.targets, t.effective_snapshots(), t.snr_db,
                             t.band_lo_deg, t.band_hi_deg, t.min_sep_deg, seed);
  Scene scene;
  scene.array.num_elements = t.elements;
  scene.snr_db = t.snr_db;
  scene.num_snapshots = t.effective_snapshots();
  Engine eng(derive_seed(seed, 1));  // same phase stream as the drawn path
  for (double theta : t.angles_deg) {
    const double phase = eng.uniform(0.0, 2.0 * kPi);
    scene.targets.push_back(
        Target{theta, Complex{std::cos(phase), std::sin(phase)}, std::nullopt});
  }
  scene.validate();
  return scene;
}

std::vector<double> scene_angles(const Scene& scene) {
  std::vector<double> out;
  out.reserve(scene.targets.size());
  for (const Target& t : scene.targets) out.push_back(t.doa_deg);
  std::sort(out.begin(), out.end());
  return out;
}

struct EstimatorRun {
  bool failed = false;
  std::string error;
  double elapsed = 0.0;
  PseudoSpectrum spectrum;
  DoaEstimate peaks;
};

EstimatorRun run_estimator(Method method, const CovarianceMatrix& cov, int k,
                           const AngularGrid& grid, const ArrayGeometry& geom,
                           const SketchConfig& scfg) {
  EstimatorRun out;
  try {
    switch (method) {
      case Method::kRMusic: {
        const SubspaceEstimate est = rmusic_subspace(cov, k, scfg);
        out.elapsed = est.elapsed_seconds;
        out.spectrum = spectrum_from_signal_basis(est.basis, grid, geom, method);
        break;
      }
      case Method::kMusicFull: {
        const ExactMusicResult est = exact_music_subspace(cov, k);
        out.elapsed = est.signal.elapsed_seconds;
        out.spectrum = spectrum_from_noise_basis(est.noise_basis, grid, geom, method);
        break;
      }
      case Method::kExactKsvd: {
        const SubspaceEstimate est = exact_ksvd_subspace(cov, k);
        out.elapsed = est.elapsed_seconds;
        out.spectrum = spectrum_from_signal_basis(est.basis, grid, geom, method);
        break;
      }
      case Method::kPropagator: {
        const PropagatorResult est = propagator_subspace(cov, k);
        out.elapsed = est.signal.elapsed_seconds;
        out.spectrum = spectrum_from_signal_basis(est.signal.basis, grid, geom, method);
        break;
      }
      case Method::kInverse: {
        const InverseWeights est = inverse_spectrum_weights(cov);
        out.elapsed = est.elapsed_seconds;
        out.spectrum = spectrum_from_inverse_weights(est.w, grid, geom);
        break;
      }
    }
    out.peaks = find_peaks(out.spectrum, k);
  } catch (const std::exception& e) {
    out.failed = true;
    out.error = e.what();
  }
  return out;
}

// Factorization time only, for the timing sweeps.
double time_factorization(Method method, const CovarianceMatrix& cov, int k,
                          const SketchConfig& scfg) {
  switch (method) {
    case Method::kRMusic: return rmusic_subspace(cov, k, scfg).elapsed_seconds;
    case Method::kMusicFull: return exact_music_subspace(cov, k).signal.elapsed_seconds;
    case Method::kExactKsvd: return exact_ksvd_subspace(cov, k).elapsed_seconds;
    case Method::kPropagator: return propagator_subspace(cov, k).signal.elapsed_seconds;
    case Method::kInverse: return inverse_spectrum_weights(cov).elapsed_seconds;
  }
  throw DomainError("unknown method");
}

// Order-preserving assignment of estimated angles to true angles; every
// estimate must be used, unmatched truths cost penalty each. Returns, per
// true angle, the index of its estimate or -1.
std::vector<int> align_angles(const std::vector<double>& est,
                              const std::vector<double>& truth, double penalty) {
  const std::size_t ne = est.size(), nt = truth.size();
  if (ne > nt) throw DimensionError("more estimates than true angles");
  const double pen2 = penalty * penalty;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<std::vector<double>> dp(ne + 1, std::vector<double>(nt + 1, inf));
  for (std::size_t j = 0; j <= nt; ++j) dp[0][j] = static_cast<double>(j) * pen2;
  for (std::size_t i = 1; i <= ne; ++i)
    for (std::size_t j = i; j <= nt; ++j) {
      const double d = est[i - 1] - truth[j - 1];
      dp[i][j] = std::min(dp[i - 1][j - 1] + d * d,
                          j > i ? dp[i][j - 1] + pen2 : inf);
    }

  std::vector<int> match(nt, -1);
  std::size_t i = ne, j = nt;
  while (j > 0) {
    if (i > 0 && j >= i) {
      const double d = est[i - 1] - truth[j - 1];
      if (dp[i][j] == dp[i - 1][j - 1] + d * d) {
        match[j - 1] = static_cast<int>(i - 1);
        --i;
        --j;
        continue;
      }
    }
    --j;
  }
  return match;
}

std::string skip_reason_budget(double budget_s) {
  return "exceeded " + fmt_double(budget_s) + " s budget";
}

}  // namespace

double matched_mse(const std::vector<double>& estimated_deg,
                   const std::vector<double>& true_deg, double penalty_deg) {
  if (true_deg.empty()) throw DimensionError("true angle set must be non-empty");
  std::vector<double> est = estimated_deg;
  std::vector<double> truth = true_deg;
  std::sort(est.begin(), est.end());
  std::sort(truth.begin(), truth.end());
  const std::vector<int> match = align_angles(est, truth, penalty_deg);
  double acc = 0.0;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    if (match[j] >= 0) {
      const double d = est[static_cast<std::size_t>(match[j])] - truth[j];
      acc += d * d;
    } else {
      acc += penalty_deg * penalty_deg;
    }
  }
  return acc / static_cast<double>(truth.size());
}

void run_spectrum_demo(const ExperimentConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const Scene scene = scene_from_template(cfg.scene, derive_seed(cfg.seed, 0));
  const Mat y = generate_snapshots(scene, derive_seed(cfg.seed, 1));
  const CovarianceMatrix cov = sample_covariance(y);
  const int k = scene.num_targets();
  const SketchConfig scfg = cfg.sketch_for(k, derive_seed(cfg.seed, 2));
  const std::vector<double> truth = scene_angles(scene);

  std::string peaks_csv = "method,target,true_deg,est_deg,abs_err_deg,shortfall,error\n";
  for (Method method : cfg.estimators) {
    const EstimatorRun run =
        run_estimator(method, cov, k, cfg.grid, scene.array, scfg);
    if (run.failed) {
      peaks_csv += std::string(method_name(method)) + ",,,,,," + run.error + "\n";
      continue;
    }
    std::string csv = "theta_deg,value\n";
    for (Eigen::Index i = 0; i < run.spectrum.values.size(); ++i)
      csv += fmt_double(run.spectrum.grid.angle(static_cast<int>(i))) + "," +
             fmt_double(run.spectrum.values(i)) + "\n";
    write_file(dir / (std::string("spectrum_") + method_name(method) + ".csv"), csv);

    const std::vector<int> match = align_angles(run.peaks.angles_deg, truth, 90.0);
    for (std::size_t j = 0; j < truth.size(); ++j) {
      peaks_csv += std::string(method_name(method)) + "," + std::to_string(j) + "," +
                   fmt_double(truth[j]) + ",";
      if (match[j] >= 0) {
        const double est = run.peaks.angles_deg[static_cast<std::size_t>(match[j])];
        peaks_csv += fmt_double(est) + "," + fmt_double(std::abs(est - truth[j]));
      } else {
        peaks_csv += ",";
      }
      peaks_csv += run.peaks.shortfall ? ",1," : ",0,";
      peaks_csv += "\n";
    }
  }
  write_file(dir / "peaks.csv", peaks_csv);

  std::vector<std::pair<std::string, std::string>> extra;
  std::string drawn;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (i) drawn += ", ";
    drawn += fmt_double(truth[i]);
  }
  extra.emplace_back("scene.drawn_angles", drawn);
  write_meta(dir, cfg, extra);
}

std::vector<TimingRecord> run_timing_sweep(const ExperimentConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const bool vs_m = cfg.kind != ExperimentKind::kTimingVsK;

  struct Point {
    int m, k;
  };
  std::vector<Point> points;
  if (vs_m)
    for (int m : cfg.timing.m_sweep) points.push_back({m, cfg.timing.fixed_k});
  else
    for (int k : cfg.timing.k_sweep) points.push_back({cfg.timing.fixed_m, k});

  std::vector<TimingRecord> records;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const auto [m, k] = points[pi];
    const std::uint64_t point_seed = derive_seed(cfg.seed, pi);
    const Scene scene =
        make_random_scene(m, k, m, cfg.scene.snr_db, cfg.scene.band_lo_deg,
                          cfg.scene.band_hi_deg, cfg.scene.min_sep_deg, point_seed);
    const Mat y = generate_snapshots(scene, derive_seed(point_seed, 7));
    const CovarianceMatrix cov = sample_covariance(y);
    const SketchConfig scfg = cfg.sketch_for(k, derive_seed(point_seed, 8));

    for (Method method : cfg.estimators) {
      TimingRecord rec;
      rec.method = method;
      rec.m = m;
      rec.k = k;
      rec.n = scene.num_snapshots;
      rec.reps = cfg.timing.reps;
      rec.seed = point_seed;
      try {
        bool over_budget = false;
        for (int w = 0; w < std::max(1, cfg.timing.warmup); ++w)
          if (time_factorization(method, cov, k, scfg) > cfg.timing.budget_s) {
            over_budget = true;
            break;
          }
        if (over_budget) {
          rec.skipped = true;
          rec.skip_reason = skip_reason_budget(cfg.timing.budget_s);
        } else {
          std::vector<double> times;
          times.reserve(static_cast<std::size_t>(cfg.timing.reps));
          for (int rep = 0; rep < cfg.timing.reps; ++rep)
            times.push_back(time_factorization(method, cov, k, scfg));
          std::sort(times.begin(), times.end());
          rec.elapsed_s = times[(times.size() - 1) / 2];
        }
      } catch (const std::exception& e) {
        rec.skipped = true;
        rec.skip_reason = e.what();
      }
      records.push_back(std::move(rec));
    }
  }

  std::string csv = "method,m,k,n,elapsed_s,reps,seed,skipped,skip_reason\n";
  for (const TimingRecord& r : records)
    csv += std::string(method_name(r.method)) + "," + std::to_string(r.m) + "," +
           std::to_string(r.k) + "," + std::to_string(r.n) + "," +
           fmt_double(r.elapsed_s) + "," + std::to_string(r.reps) + "," +
           std::to_string(r.seed) + "," + (r.skipped ? "1" : "0") + "," +
           r.skip_reason + "\n";
  write_file(dir / "timing.csv", csv);
  write_meta(dir, cfg, {});
  return records;
}

std::vector<RmseRecord> run_rmse_sweep(const ExperimentConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const int k = cfg.scene.targets;
  const std::size_t n_methods = cfg.estimators.size();
  const std::size_t n_snr = cfg.rmse.snr_grid_db.size();
  const std::size_t trials = static_cast<std::size_t>(cfg.trials);

  // mse[snr][trial][method], filled independently per trial so any thread
  // count reduces to identical results.
  std::vector<std::vector<std::vector<double>>> mse(
      n_snr, std::vector<std::vector<double>>(trials, std::vector<double>(n_methods, 0.0)));
  auto shortfall = mse;  // same shape, 0/1 entries

  for (std::size_t si = 0; si < n_snr; ++si) {
    const double snr_db = cfg.rmse.snr_grid_db[si];
    const std::uint64_t snr_seed = derive_seed(cfg.seed, si);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> hard_fail{false};
    std::string hard_error;
    std::mutex hard_mutex;

    auto worker = [&]() {
      for (std::size_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
        if (hard_fail.load()) return;
        try {
          const std::uint64_t trial_seed = derive_seed(snr_seed, t);
          SceneTemplate tmpl = cfg.scene;
          tmpl.snr_db = snr_db;
          const Scene scene = scene_from_template(tmpl, derive_seed(trial_seed, 0));
          const Mat y = generate_snapshots(scene, derive_seed(trial_seed, 1));
          const CovarianceMatrix cov = sample_covariance(y);
          const SketchConfig scfg = cfg.sketch_for(k, derive_seed(trial_seed, 2));
          const std::vector<double> truth = scene_angles(scene);

          for (std::size_t mi = 0; mi < n_methods; ++mi) {
            const EstimatorRun run = run_estimator(cfg.estimators[mi], cov, k,
                                                   cfg.grid, scene.array, scfg);
            if (run.failed) {
              mse[si][t][mi] = matched_mse({}, truth);
              shortfall[si][t][mi] = 1.0;
            } else {
              mse[si][t][mi] = matched_mse(run.peaks.angles_deg, truth);
              shortfall[si][t][mi] = run.peaks.shortfall ? 1.0 : 0.0;
            }
          }
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(hard_mutex);
          hard_fail.store(true);
          if (hard_error.empty()) hard_error = e.what();
        }
      }
    };

    const int n_threads = std::max(1, cfg.threads);
    if (n_threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(n_threads));
      for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
      for (std::thread& th : pool) th.join();
    }
    if (hard_fail.load()) throw std::runtime_error("rmse trial failed: " + hard_error);
  }

  std::vector<RmseRecord> records;
  std::string csv = "method,snr_db,trials,rmse_deg,shortfall_count\n";
  for (std::size_t mi = 0; mi < n_methods; ++mi)
    for (std::size_t si = 0; si < n_snr; ++si) {
      RmseRecord rec;
      rec.method = cfg.estimators[mi];
      rec.snr_db = cfg.rmse.snr_grid_db[si];
      rec.trials = cfg.trials;
      double acc = 0.0;
      int falls = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        acc += mse[si][t][mi];
        falls += shortfall[si][t][mi] > 0.5 ? 1 : 0;
      }
      rec.rmse_deg = std::sqrt(acc / static_cast<double>(trials));
      rec.shortfall_count = falls;
      records.push_back(rec);
      csv += std::string(method_name(rec.method)) + "," + fmt_double(rec.snr_db) + "," +
             std::to_string(rec.trials) + "," + fmt_double(rec.rmse_deg) + "," +
             std::to_string(rec.shortfall_count) + "\n";
    }
  write_file(dir / "rmse.csv", csv);
  write_meta(dir, cfg, {});
  return records;
}

std::vector<BoundRecord> run_bound_check(const ExperimentConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const int m = cfg.scene.elements;
  const int k = cfg.scene.targets;

  std::vector<BoundRecord> records;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(trial));

    // R_K = G G^H, a random rank-K Hermitian PSD core.
    Engine eng(derive_seed(trial_seed, 0));
    const double rt = 1.0 / std::sqrt(2.0);
    Mat g(m, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < m; ++i)
        g(i, j) = Complex{rt * eng.normal(), rt * eng.normal()};
    Mat r = g * g.adjoint();
    const double rk_norm = r.norm();

    double err_norm_sq = 0.0;
    if (cfg.bound.residual_scale > 0.0) {
      // Perturbation with decaying spectrum, rotated by a random unitary.
      Engine eng2(derive_seed(trial_seed, 1));
      Mat raw(m, m);
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i)
          raw(i, j) = Complex{rt * eng2.normal(), rt * eng2.normal()};
      const Mat q = qr_thin(raw).Q;
      RealVec d(m);
      for (int i = 0; i < m; ++i) d(i) = 1.0 / ((i + 1.0) * (i + 1.0));
      Mat e = q * d.asDiagonal().toDenseMatrix().cast<Complex>() * q.adjoint();
      e *= cfg.bound.residual_scale * rk_norm / e.norm();
      err_norm_sq = e.squaredNorm();
      r += e;
    }

    const CovarianceMatrix cov(std::move(r));
    const SketchConfig scfg = cfg.bound.theorem_scale
                                  ? SketchConfig::theorem_scale_for(k, trial_seed)
                                  : cfg.sketch_for(k, trial_seed);
    const RankKSvdResult svd = rank_k_svd_via_sketch(cov, k, scfg);

    BoundRecord rec;
    rec.seed = trial_seed;
    rec.err_norm_sq = err_norm_sq;
    rec.lra_residual = svd.lra_residual;
    rec.exact = err_norm_sq <= 1e-10 * cov.mat().squaredNorm();
    rec.ratio = rec.exact ? 0.0 : svd.lra_residual / err_norm_sq;
    records.push_back(rec);
  }

  std::string csv = "seed,err_norm_sq,lra_residual,ratio,exact\n";
  for (const BoundRecord& r : records)
    csv += std::to_string(r.seed) + "," + fmt_double(r.err_norm_sq) + "," +
           fmt_double(r.lra_residual) + "," +
           (r.exact ? std::string("exact") : fmt_double(r.ratio)) + "," +
           (r.exact ? "1" : "0") + "\n";
  write_file(dir / "bound.csv", csv);

  std::vector<double> ratios;
  for (const BoundRecord& r : records)
    if (!r.exact) ratios.push_back(r.ratio);
  std::sort(ratios.begin(), ratios.end());
  std::vector<std::pair<std::string, std::string>> extra;
  extra.emplace_back("summary.exact_rows",
                     std::to_string(records.size() - ratios.size()));
  if (!ratios.empty()) {
    auto quantile = [&](double p) {
      const std::size_t idx = static_cast<std::size_t>(
          std::ceil(p * static_cast<double>(ratios.size()))) - 1;
      return ratios[std::min(idx, ratios.size() - 1)];
    };
    extra.emplace_back("summary.ratio_p50", fmt_double(quantile(0.50)));
    extra.emplace_back("summary.ratio_p95", fmt_double(quantile(0.95)));
  }
  write_meta(dir, cfg, extra);
  return records;
}

void run_simulate(const ExperimentConfig& cfg) {
  const auto dir = prepare_out_dir(cfg);
  const Scene scene = scene_from_template(cfg.scene, derive_seed(cfg.seed, 0));
  const Mat y = generate_snapshots(scene, derive_seed(cfg.seed, 1));

  std::string csv;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    if (j) csv += ",";
    csv += "re_" + std::to_string(j) + ",im_" + std::to_string(j);
  }
  csv += "\n";
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      if (j) csv += ",";
      csv += fmt_double(y(i, j).real()) + "," + fmt_double(y(i, j).imag());
    }
    csv += "\n";
  }
  write_file(dir / "snapshots.csv", csv);

  std::vector<std::pair<std::string, std::string>> extra;
  std::string drawn;
  const std::vector<double> truth = scene_angles(scene);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (i) drawn += ", ";
    drawn += fmt_double(truth[i]);
  }
  extra.emplace_back("scene.drawn_angles", drawn);
  write_meta(dir, cfg, extra);
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Randomized-sketch DoA estimation benchmarks"};
  app.fallthrough(true);
  app.require_subcommand(1);
  app.footer(config_schema_text());

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  int threads = 0;
  app.add_option("--config", config_path, "config file (see schema below)");
  app.add_option("--seed", seed, "master seed override");
  app.add_option("--out", out_dir, "output directory override");
  app.add_option("--threads", threads, "worker threads for Monte Carlo trials");

  CLI::App* demo = app.add_subcommand("demo", "pseudo-spectra and peak table for one scene");
  CLI::App* bench = app.add_subcommand("bench", "factorization timing sweep");
  CLI::App* rmse = app.add_subcommand("rmse", "Monte Carlo RMSE over an SNR grid");
  CLI::App* bound = app.add_subcommand("bound", "low-rank approximation residual check");
  CLI::App* simulate = app.add_subcommand("simulate", "dump one snapshot matrix");

  std::string sweep = "m";
  bench->add_option("--sweep", sweep, "sweep variable: m or k")
      ->check(CLI::IsMember({"m", "k"}));
  bool edge = false;
  demo->add_flag("--edge", edge, "use the edge-region DoA band [70, 88]");
  rmse->add_flag("--edge", edge, "use the edge-region DoA band [70, 88]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);

    if (demo->parsed()) cfg.kind = ExperimentKind::kSpectrumDemo;
    else if (rmse->parsed()) cfg.kind = ExperimentKind::kRmseVsSnr;
    else if (bound->parsed()) cfg.kind = ExperimentKind::kBoundCheck;
    else if (bench->parsed()) {
      if (bench->count("--sweep") > 0)
        cfg.kind = sweep == "k" ? ExperimentKind::kTimingVsK : ExperimentKind::kTimingVsM;
      else if (cfg.kind != ExperimentKind::kTimingVsK)
        cfg.kind = ExperimentKind::kTimingVsM;
    }

    if (app.count("--seed") > 0) cfg.seed = seed;
    if (app.count("--out") > 0) cfg.out_dir = out_dir;
    if (app.count("--threads") > 0) cfg.threads = threads;
    if (edge) {
      cfg.scene.edge_preset = true;
      cfg.scene.band_lo_deg = 70.0;
      cfg.scene.band_hi_deg = 88.0;
    }
    cfg.validate();
  } catch (const ConfigError& e) {
    std::string prefix;
    if (e.line > 0) prefix = config_path + ":" + std::to_string(e.line) + ": ";
    std::fprintf(stderr, "%s%s\n", prefix.c_str(), e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  }

  try {
    if (demo->parsed()) run_spectrum_demo(cfg);
    else if (bench->parsed()) run_timing_sweep(cfg);
    else if (rmse->parsed()) run_rmse_sweep(cfg);
    else if (bound->parsed()) run_bound_check(cfg);
    else if (simulate->parsed()) run_simulate(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

}  // namespace rmusic
