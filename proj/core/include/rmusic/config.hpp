#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rmusic/errors.hpp"
#include "rmusic/spectrum.hpp"

namespace rmusic {

enum class ExperimentKind {
  kSpectrumDemo,
  kTimingVsM,
  kTimingVsK,
  kRmseVsSnr,
  kBoundCheck,
};

const char* kind_name(ExperimentKind k);

// Scene template; concrete per-trial scenes are drawn from it.
struct SceneTemplate {
  int elements = 300;    // M
  int targets = 9;       // K
  int snapshots = 300;   // N (0 means: match elements)
  double snr_db = -5.0;
  double band_lo_deg = -60.0;
  double band_hi_deg = 60.0;
  double min_sep_deg = 3.0;
  std::vector<double> angles_deg;  // explicit DoAs; empty = draw from band
  bool edge_preset = false;        // shorthand for band [70, 88]

  int effective_snapshots() const { return snapshots > 0 ? snapshots : elements; }
};

struct TimingPlan {
  std::vector<int> m_sweep{100, 200, 400, 700, 1000};
  std::vector<int> k_sweep{5, 10, 15, 20, 25, 30};
  int fixed_m = 700;  // for timing-vs-k
  int fixed_k = 9;    // for timing-vs-m
  int reps = 5;
  int warmup = 1;
  double budget_s = 60.0;
};

struct RmsePlan {
  std::vector<double> snr_grid_db{-10, -5, 0, 5, 10, 15, 20};
};

struct BoundPlan {
  double residual_scale = 0.1;  // ||E||_F = scale * ||R_K||_F
  bool theorem_scale = true;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSpectrumDemo;
  std::uint64_t seed = 1;
  int trials = 100;
  int threads = 1;
  std::string out_dir = "./out";

  SceneTemplate scene;
  std::vector<Method> estimators{Method::kRMusic, Method::kMusicFull,
                                 Method::kPropagator};
  // Sketch widths; non-positive fields fall back to the defaults for the
  // scene's target count.
  int sketch_s = 0;
  int sketch_s0 = 0;
  int sketch_s1 = 0;
  double sketch_eta = 0.5;
  bool theorem_scale = false;

  AngularGrid grid;
  TimingPlan timing;
  RmsePlan rmse;
  BoundPlan bound;

  SketchConfig sketch_for(int k, std::uint64_t sketch_seed) const;
  void validate() const;  // throws DomainError

  // Every field in schema order, as (dotted key, value) pairs; the echo
  // written to meta.txt and compared by the round-trip tests.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

// Parse a key-value config file with [section] headers, '#'/';' comment
// lines, and comma-separated lists. Unknown sections or keys, duplicate
// keys, type errors, and empty values all throw ConfigError carrying the
// offending line number. Fields not mentioned keep the defaults above.
ExperimentConfig load_config(const std::string& path);

// Same parser over an in-memory string (line numbers count from 1).
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin = "<string>");

// The full schema, one line per field: "section.key  default  description".
// Backs --help and the docs.
std::string config_schema_text();

}  // namespace rmusic
