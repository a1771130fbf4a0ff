#include "rmusic/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace rmusic {

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kSpectrumDemo: return "spectrum-demo";
    case ExperimentKind::kTimingVsM: return "timing-vs-m";
    case ExperimentKind::kTimingVsK: return "timing-vs-k";
    case ExperimentKind::kRmseVsSnr: return "rmse-vs-snr";
    case ExperimentKind::kBoundCheck: return "bound-check";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& msg, int line) { throw ConfigError(msg, line); }

long long to_int(const std::string& field, const std::string& v, int line) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (errno != 0 || end != v.c_str() + v.size() || v.empty())
    fail("field " + field + " expects an integer, got '" + v + "'", line);
  return x;
}

std::uint64_t to_u64(const std::string& field, const std::string& v, int line) {
  if (!v.empty() && v[0] == '-')
    fail("field " + field + " expects a non-negative integer, got '" + v + "'", line);
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (errno != 0 || end != v.c_str() + v.size() || v.empty())
    fail("field " + field + " expects a non-negative integer, got '" + v + "'", line);
  return x;
}

double to_double(const std::string& field, const std::string& v, int line) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (errno != 0 || end != v.c_str() + v.size() || v.empty())
    fail("field " + field + " expects a number, got '" + v + "'", line);
  return x;
}

bool to_bool(const std::string& field, const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail("field " + field + " expects true/false, got '" + v + "'", line);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> to_double_list(const std::string& field, const std::string& v, int line) {
  std::vector<double> out;
  for (const std::string& item : split_list(v)) out.push_back(to_double(field, item, line));
  return out;
}

std::vector<int> to_int_list(const std::string& field, const std::string& v, int line) {
  std::vector<int> out;
  for (const std::string& item : split_list(v))
    out.push_back(static_cast<int>(to_int(field, item, line)));
  return out;
}

ExperimentKind to_kind(const std::string& v, int line) {
  for (ExperimentKind k : {ExperimentKind::kSpectrumDemo, ExperimentKind::kTimingVsM,
                           ExperimentKind::kTimingVsK, ExperimentKind::kRmseVsSnr,
                           ExperimentKind::kBoundCheck})
    if (v == kind_name(k)) return k;
  fail("field experiment.kind expects one of spectrum-demo, timing-vs-m, timing-vs-k, "
       "rmse-vs-snr, bound-check; got '" + v + "'",
       line);
}

Method to_method(const std::string& v, int line) {
  for (Method m : {Method::kRMusic, Method::kMusicFull, Method::kExactKsvd,
                   Method::kPropagator, Method::kInverse})
    if (v == method_name(m)) return m;
  fail("field estimators.methods expects names among rmusic, music, ksvd, propagator, "
       "inverse; got '" + v + "'",
       line);
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt_double(xs[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

SketchConfig ExperimentConfig::sketch_for(int k, std::uint64_t sketch_seed) const {
  if (theorem_scale) return SketchConfig::theorem_scale_for(k, sketch_seed);
  SketchConfig cfg = SketchConfig::defaults_for(k, sketch_seed, sketch_eta);
  if (sketch_s > 0) cfg.s = sketch_s;
  if (sketch_s0 > 0) cfg.s0 = sketch_s0;
  if (sketch_s1 > 0) cfg.s1 = sketch_s1;
  return cfg;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw DomainError("experiment.trials must be at least 1");
  if (threads < 1) throw DomainError("experiment.threads must be at least 1");
  if (estimators.empty()) throw DomainError("estimators.methods must be non-empty");
  if (scene.elements < 2) throw DomainError("scene.elements must be at least 2");
  if (scene.targets < 1 || scene.targets >= scene.elements)
    throw DomainError("scene.targets must satisfy 1 <= targets < elements");
  if (!(scene.band_lo_deg < scene.band_hi_deg))
    throw DomainError("scene band_lo_deg must precede band_hi_deg");
  if (scene.band_lo_deg <= -90.0 || scene.band_hi_deg >= 90.0)
    throw DomainError("scene band must lie strictly inside (-90, 90)");
  if (scene.min_sep_deg < 0.0) throw DomainError("scene.min_sep_deg must be non-negative");
  if (!scene.angles_deg.empty() &&
      static_cast<int>(scene.angles_deg.size()) != scene.targets)
    throw DomainError("scene.angles must list exactly scene.targets angles");
  for (double a : scene.angles_deg)
    if (a <= -90.0 || a >= 90.0)
      throw DomainError("scene.angles entries must lie strictly inside (-90, 90)");
  grid.validate();
  if (!(sketch_eta > 0.0)) throw DomainError("sketch.eta must be positive");
  if (timing.reps < 1) throw DomainError("timing.reps must be at least 1");
  if (timing.warmup < 0) throw DomainError("timing.warmup must be non-negative");
  if (!(timing.budget_s > 0.0)) throw DomainError("timing.budget_s must be positive");
  if (timing.m_sweep.empty() || timing.k_sweep.empty())
    throw DomainError("timing sweeps must be non-empty");
  for (int v : timing.m_sweep)
    if (v < 2) throw DomainError("timing.m_sweep entries must be at least 2");
  for (int v : timing.k_sweep)
    if (v < 1) throw DomainError("timing.k_sweep entries must be at least 1");
  if (timing.fixed_m < 2 || timing.fixed_k < 1)
    throw DomainError("timing fixed sizes must be positive");
  if (rmse.snr_grid_db.empty()) throw DomainError("rmse.snr_grid_db must be non-empty");
  if (bound.residual_scale < 0.0)
    throw DomainError("bound.residual_scale must be non-negative");
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("experiment.kind", kind_name(kind));
  e.emplace_back("experiment.seed", std::to_string(seed));
  e.emplace_back("experiment.trials", std::to_string(trials));
  e.emplace_back("experiment.threads", std::to_string(threads));
  e.emplace_back("experiment.out", out_dir);
  e.emplace_back("scene.elements", std::to_string(scene.elements));
  e.emplace_back("scene.targets", std::to_string(scene.targets));
  e.emplace_back("scene.snapshots", std::to_string(scene.snapshots));
  e.emplace_back("scene.snr_db", fmt_double(scene.snr_db));
  e.emplace_back("scene.band_lo_deg", fmt_double(scene.band_lo_deg));
  e.emplace_back("scene.band_hi_deg", fmt_double(scene.band_hi_deg));
  e.emplace_back("scene.min_sep_deg", fmt_double(scene.min_sep_deg));
  e.emplace_back("scene.angles", join_doubles(scene.angles_deg));
  e.emplace_back("scene.edge_preset", scene.edge_preset ? "true" : "false");
  std::string methods;
  for (std::size_t i = 0; i < estimators.size(); ++i) {
    if (i) methods += ", ";
    methods += method_name(estimators[i]);
  }
  e.emplace_back("estimators.methods", methods);
  e.emplace_back("sketch.s", std::to_string(sketch_s));
  e.emplace_back("sketch.s0", std::to_string(sketch_s0));
  e.emplace_back("sketch.s1", std::to_string(sketch_s1));
  e.emplace_back("sketch.eta", fmt_double(sketch_eta));
  e.emplace_back("sketch.theorem_scale", theorem_scale ? "true" : "false");
  e.emplace_back("grid.start_deg", fmt_double(grid.start_deg));
  e.emplace_back("grid.stop_deg", fmt_double(grid.stop_deg));
  e.emplace_back("grid.step_deg", fmt_double(grid.step_deg));
  e.emplace_back("timing.m_sweep", join_ints(timing.m_sweep));
  e.emplace_back("timing.k_sweep", join_ints(timing.k_sweep));
  e.emplace_back("timing.fixed_m", std::to_string(timing.fixed_m));
  e.emplace_back("timing.fixed_k", std::to_string(timing.fixed_k));
  e.emplace_back("timing.reps", std::to_string(timing.reps));
  e.emplace_back("timing.warmup", std::to_string(timing.warmup));
  e.emplace_back("timing.budget_s", fmt_double(timing.budget_s));
  e.emplace_back("rmse.snr_grid_db", join_doubles(rmse.snr_grid_db));
  e.emplace_back("bound.residual_scale", fmt_double(bound.residual_scale));
  e.emplace_back("bound.theorem_scale", bound.theorem_scale ? "true" : "false");
  return e;
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  bool band_explicit = false;

  const std::set<std::string> known_sections{"experiment", "scene", "estimators",
                                             "sketch", "grid", "timing", "rmse", "bound"};
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        fail("unterminated section header in " + origin, line_no);
      section = trim(line.substr(1, line.size() - 2));
      if (!known_sections.count(section))
        fail("unknown section [" + section + "]", line_no);
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail("expected 'key = value' in " + origin, line_no);
    if (section.empty()) fail("key outside any [section]", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("empty key", line_no);
    const std::string field = section + "." + key;
    if (!seen.insert(field).second) fail("duplicate field " + field, line_no);
    if (value.empty()) fail("missing value for field " + field, line_no);

    if (field == "experiment.kind") cfg.kind = to_kind(value, line_no);
    else if (field == "experiment.seed") cfg.seed = to_u64(field, value, line_no);
    else if (field == "experiment.trials") cfg.trials = static_cast<int>(to_int(field, value, line_no));
    else if (field == "experiment.threads") cfg.threads = static_cast<int>(to_int(field, value, line_no));
    else if (field == "experiment.out") cfg.out_dir = value;
    else if (field == "scene.elements") cfg.scene.elements = static_cast<int>(to_int(field, value, line_no));
    else if (field == "scene.targets") cfg.scene.targets = static_cast<int>(to_int(field, value, line_no));
    else if (field == "scene.snapshots") cfg.scene.snapshots = static_cast<int>(to_int(field, value, line_no));
    else if (field == "scene.snr_db") cfg.scene.snr_db = to_double(field, value, line_no);
    else if (field == "scene.band_lo_deg") { cfg.scene.band_lo_deg = to_double(field, value, line_no); band_explicit = true; }
    else if (field == "scene.band_hi_deg") { cfg.scene.band_hi_deg = to_double(field, value, line_no); band_explicit = true; }
    else if (field == "scene.min_sep_deg") cfg.scene.min_sep_deg = to_double(field, value, line_no);
    else if (field == "scene.angles") cfg.scene.angles_deg = to_double_list(field, value, line_no);
    else if (field == "scene.edge_preset") cfg.scene.edge_preset = to_bool(field, value, line_no);
    else if (field == "estimators.methods") {
      cfg.estimators.clear();
      for (const std::string& name : split_list(value))
        cfg.estimators.push_back(to_method(name, line_no));
    }
    else if (field == "sketch.s") cfg.sketch_s = static_cast<int>(to_int(field, value, line_no));
    else if (field == "sketch.s0") cfg.sketch_s0 = static_cast<int>(to_int(field, value, line_no));
    else if (field == "sketch.s1") cfg.sketch_s1 = static_cast<int>(to_int(field, value, line_no));
    else if (field == "sketch.eta") cfg.sketch_eta = to_double(field, value, line_no);
    else if (field == "sketch.theorem_scale") cfg.theorem_scale = to_bool(field, value, line_no);
    else if (field == "grid.start_deg") cfg.grid.start_deg = to_double(field, value, line_no);
    else if (field == "grid.stop_deg") cfg.grid.stop_deg = to_double(field, value, line_no);
    else if (field == "grid.step_deg") cfg.grid.step_deg = to_double(field, value, line_no);
    else if (field == "timing.m_sweep") cfg.timing.m_sweep = to_int_list(field, value, line_no);
    else if (field == "timing.k_sweep") cfg.timing.k_sweep = to_int_list(field, value, line_no);
    else if (field == "timing.fixed_m") cfg.timing.fixed_m = static_cast<int>(to_int(field, value, line_no));
    else if (field == "timing.fixed_k") cfg.timing.fixed_k = static_cast<int>(to_int(field, value, line_no));
    else if (field == "timing.reps") cfg.timing.reps = static_cast<int>(to_int(field, value, line_no));
    else if (field == "timing.warmup") cfg.timing.warmup = static_cast<int>(to_int(field, value, line_no));
    else if (field == "timing.budget_s") cfg.timing.budget_s = to_double(field, value, line_no);
    else if (field == "rmse.snr_grid_db") cfg.rmse.snr_grid_db = to_double_list(field, value, line_no);
    else if (field == "bound.residual_scale") cfg.bound.residual_scale = to_double(field, value, line_no);
    else if (field == "bound.theorem_scale") cfg.bound.theorem_scale = to_bool(field, value, line_no);
    else fail("unknown field " + field, line_no);
  }

  if (cfg.scene.edge_preset && !band_explicit) {
    cfg.scene.band_lo_deg = 70.0;
    cfg.scene.band_hi_deg = 88.0;
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string config_schema_text() {
  return
      "Config file schema (key = value under [section]; '#' starts a comment line;\n"
      "lists are comma-separated; every field is optional and defaults as shown):\n"
      "\n"
      "[experiment]\n"
      "  kind = spectrum-demo   experiment type: spectrum-demo | timing-vs-m |\n"
      "                         timing-vs-k | rmse-vs-snr | bound-check\n"
      "                         (the CLI subcommand picks this; a config may override)\n"
      "  seed = 1               master seed; per-trial seeds are derived from it\n"
      "  trials = 100           Monte Carlo trials (rmse, bound)\n"
      "  threads = 1            worker threads for Monte Carlo trials\n"
      "  out = ./out            output directory for CSV and meta.txt\n"
      "\n"
      "[scene]\n"
      "  elements = 300         array elements M\n"
      "  targets = 9            source count K\n"
      "  snapshots = 300        snapshots N; 0 means match elements\n"
      "  snr_db = -5            per-target SNR in dB\n"
      "  band_lo_deg = -60      DoA draw band, lower edge\n"
      "  band_hi_deg = 60       DoA draw band, upper edge\n"
      "  min_sep_deg = 3        minimum pairwise DoA separation\n"
      "  angles =               explicit DoAs (overrides the band draw)\n"
      "  edge_preset = false    true sets the draw band to [70, 88]\n"
      "\n"
      "[estimators]\n"
      "  methods = rmusic, music, propagator\n"
      "                         subset of: rmusic, music, ksvd, propagator, inverse\n"
      "\n"
      "[sketch]\n"
      "  s = 0                  primary sketch width; 0 means default K\n"
      "  s0 = 0                 count-sketch width; 0 means default 2K\n"
      "  s1 = 0                 composite Gaussian width; 0 means ceil((1+eta)K)\n"
      "  eta = 0.5              oversampling knob behind the s1 default\n"
      "  theorem_scale = false  true uses s0 = 4K + K^2, s1 = 4K, s = 2K\n"
      "\n"
      "[grid]\n"
      "  start_deg = -90        scan grid start\n"
      "  stop_deg = 90          scan grid stop (inclusive)\n"
      "  step_deg = 0.1         scan grid step\n"
      "\n"
      "[timing]\n"
      "  m_sweep = 100, 200, 400, 700, 1000   element counts for timing-vs-m\n"
      "  k_sweep = 5, 10, 15, 20, 25, 30      source counts for timing-vs-k\n"
      "  fixed_m = 700          M used by timing-vs-k\n"
      "  fixed_k = 9            K used by timing-vs-m\n"
      "  reps = 5               timed repetitions (median is reported)\n"
      "  warmup = 1             untimed warm-up runs (at least one always runs;\n"
      "                         it doubles as the budget probe)\n"
      "  budget_s = 60          per-point time budget; overruns are skipped\n"
      "\n"
      "[rmse]\n"
      "  snr_grid_db = -10, -5, 0, 5, 10, 15, 20   SNR sweep for rmse-vs-snr\n"
      "\n"
      "[bound]\n"
      "  residual_scale = 0.1   ||E||_F relative to ||R_K||_F in R = R_K + E\n"
      "  theorem_scale = true   use theorem-scale sketch widths for the check\n";
}

}  // namespace rmusic
