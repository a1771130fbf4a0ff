#include <gtest/gtest.h>

#include <map>
#include <string>

#include "rmusic/config.hpp"

namespace {

using rmusic::ConfigError;
using rmusic::ExperimentConfig;
using rmusic::ExperimentKind;
using rmusic::Method;

int error_line(const std::string& text) {
  try {
    rmusic::parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.line;
  }
  ADD_FAILURE() << "expected ConfigError for:\n" << text;
  return -1;
}

std::map<std::string, std::string> echo_map(const ExperimentConfig& cfg) {
  std::map<std::string, std::string> m;
  for (const auto& [key, value] : cfg.echo()) m.emplace(key, value);
  return m;
}

TEST(Config, DefaultsMatchSchema) {
  const ExperimentConfig cfg = rmusic::parse_config_text("");
  EXPECT_EQ(cfg.kind, ExperimentKind::kSpectrumDemo);
  EXPECT_EQ(cfg.seed, 1u);
  EXPECT_EQ(cfg.trials, 100);
  EXPECT_EQ(cfg.threads, 1);
  EXPECT_EQ(cfg.scene.elements, 300);
  EXPECT_EQ(cfg.scene.targets, 9);
  EXPECT_EQ(cfg.scene.snapshots, 300);
  EXPECT_EQ(cfg.scene.effective_snapshots(), 300);
  EXPECT_DOUBLE_EQ(cfg.scene.snr_db, -5.0);
  EXPECT_DOUBLE_EQ(cfg.scene.band_lo_deg, -60.0);
  EXPECT_DOUBLE_EQ(cfg.scene.band_hi_deg, 60.0);
  EXPECT_EQ(cfg.estimators.size(), 3u);
  EXPECT_EQ(cfg.grid.size(), 1801);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, ParsesEverySection) {
  const std::string text =
      "# full schema exercise\n"
      "[experiment]\n"
      "kind = rmse-vs-snr\n"
      "seed = 42\n"
      "trials = 7\n"
      "threads = 3\n"
      "out = /tmp/somewhere\n"
      "\n"
      "[scene]\n"
      "elements = 64\n"
      "targets = 4\n"
      "snapshots = 128\n"
      "snr_db = 2.5\n"
      "band_lo_deg = -45\n"
      "band_hi_deg = 45\n"
      "min_sep_deg = 4\n"
      "angles = -30, -10, 10.5, 30\n"
      "\n"
      "[estimators]\n"
      "methods = rmusic, music, ksvd, propagator, inverse\n"
      "\n"
      "[sketch]\n"
      "s = 12\n"
      "s0 = 40\n"
      "s1 = 20\n"
      "eta = 0.75\n"
      "theorem_scale = true\n"
      "\n"
      "[grid]\n"
      "start_deg = -50\n"
      "stop_deg = 50\n"
      "step_deg = 0.5\n"
      "\n"
      "[timing]\n"
      "m_sweep = 100, 200\n"
      "k_sweep = 5, 10\n"
      "fixed_m = 150\n"
      "fixed_k = 6\n"
      "reps = 9\n"
      "warmup = 2\n"
      "budget_s = 12.5\n"
      "\n"
      "[rmse]\n"
      "snr_grid_db = -5, 0, 5\n"
      "\n"
      "[bound]\n"
      "residual_scale = 0.25\n"
      "theorem_scale = false\n";

  const ExperimentConfig cfg = rmusic::parse_config_text(text);
  EXPECT_EQ(cfg.kind, ExperimentKind::kRmseVsSnr);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.trials, 7);
  EXPECT_EQ(cfg.threads, 3);
  EXPECT_EQ(cfg.out_dir, "/tmp/somewhere");
  EXPECT_EQ(cfg.scene.elements, 64);
  EXPECT_EQ(cfg.scene.targets, 4);
  EXPECT_EQ(cfg.scene.snapshots, 128);
  EXPECT_DOUBLE_EQ(cfg.scene.snr_db, 2.5);
  ASSERT_EQ(cfg.scene.angles_deg.size(), 4u);
  EXPECT_DOUBLE_EQ(cfg.scene.angles_deg[2], 10.5);
  ASSERT_EQ(cfg.estimators.size(), 5u);
  EXPECT_EQ(cfg.estimators[0], Method::kRMusic);
  EXPECT_EQ(cfg.estimators[4], Method::kInverse);
  EXPECT_EQ(cfg.sketch_s, 12);
  EXPECT_EQ(cfg.sketch_s0, 40);
  EXPECT_EQ(cfg.sketch_s1, 20);
  EXPECT_DOUBLE_EQ(cfg.sketch_eta, 0.75);
  EXPECT_TRUE(cfg.theorem_scale);
  EXPECT_DOUBLE_EQ(cfg.grid.step_deg, 0.5);
  EXPECT_EQ(cfg.timing.m_sweep, (std::vector<int>{100, 200}));
  EXPECT_EQ(cfg.timing.fixed_m, 150);
  EXPECT_EQ(cfg.timing.reps, 9);
  EXPECT_EQ(cfg.rmse.snr_grid_db, (std::vector<double>{-5, 0, 5}));
  EXPECT_DOUBLE_EQ(cfg.bound.residual_scale, 0.25);
  EXPECT_FALSE(cfg.bound.theorem_scale);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, EchoRoundTripsThroughParser) {
  ExperimentConfig cfg = rmusic::parse_config_text("");
  cfg.kind = ExperimentKind::kBoundCheck;
  cfg.seed = 9;
  cfg.scene.targets = 5;
  cfg.scene.angles_deg = {-12.0, 0.0, 8.0, 20.0, 44.0};
  cfg.estimators = {Method::kRMusic, Method::kExactKsvd};
  cfg.sketch_s1 = 33;

  // Rebuild a config file from the echo and parse it back.
  std::string text;
  std::string section;
  for (const auto& [key, value] : cfg.echo()) {
    const auto dot = key.find('.');
    const std::string sec = key.substr(0, dot);
    if (sec != section) {
      text += "[" + sec + "]\n";
      section = sec;
    }
    if (value.empty()) continue;
    text += key.substr(dot + 1) + " = " + value + "\n";
  }
  const ExperimentConfig back = rmusic::parse_config_text(text);
  EXPECT_EQ(echo_map(back), echo_map(cfg));
}

TEST(Config, ErrorsCarryTheOffendingLine) {
  EXPECT_EQ(error_line("[experiment]\nkind = nonsense\n"), 2);
  EXPECT_EQ(error_line("[nope]\n"), 1);
  EXPECT_EQ(error_line("[experiment\n"), 1);
  EXPECT_EQ(error_line("seed = 4\n"), 1);  // key outside any section
  EXPECT_EQ(error_line("[experiment]\n\nbogus_key = 4\n"), 3);
  EXPECT_EQ(error_line("[experiment]\nseed = 1\nseed = 2\n"), 3);  // duplicate
  EXPECT_EQ(error_line("[experiment]\nseed =\n"), 2);              // empty value
  EXPECT_EQ(error_line("[experiment]\nseed = abc\n"), 2);          // type error
  EXPECT_EQ(error_line("[scene]\nsnr_db = fast\n"), 2);
  EXPECT_EQ(error_line("[sketch]\ntheorem_scale = maybe\n"), 2);
  EXPECT_EQ(error_line("[estimators]\nmethods = rmusic, warp\n"), 2);
  EXPECT_EQ(error_line("[timing]\nm_sweep = 10, x\n"), 2);
  EXPECT_EQ(error_line("[experiment]\njust a line without equals\n"), 2);
}

TEST(Config, CommentsAndBlankLinesAreSkipped) {
  const ExperimentConfig cfg = rmusic::parse_config_text(
      "# leading comment\n"
      "; alternate comment\n"
      "\n"
      "[experiment]\n"
      "# inner comment\n"
      "trials = 5\n");
  EXPECT_EQ(cfg.trials, 5);
}

TEST(Config, EdgePresetExpandsToEdgeBand) {
  const ExperimentConfig cfg =
      rmusic::parse_config_text("[scene]\nedge_preset = true\n");
  EXPECT_DOUBLE_EQ(cfg.scene.band_lo_deg, 70.0);
  EXPECT_DOUBLE_EQ(cfg.scene.band_hi_deg, 88.0);

  // An explicit band wins over the preset shorthand.
  const ExperimentConfig ex = rmusic::parse_config_text(
      "[scene]\nedge_preset = true\nband_lo_deg = 72\nband_hi_deg = 86\n");
  EXPECT_DOUBLE_EQ(ex.scene.band_lo_deg, 72.0);
  EXPECT_DOUBLE_EQ(ex.scene.band_hi_deg, 86.0);
}

TEST(Config, ValidateRejectsOutOfRangeValues) {
  ExperimentConfig cfg = rmusic::parse_config_text("");
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), rmusic::DomainError);

  cfg = rmusic::parse_config_text("");
  cfg.threads = 0;
  EXPECT_THROW(cfg.validate(), rmusic::DomainError);

  cfg = rmusic::parse_config_text("");
  cfg.scene.targets = cfg.scene.elements;
  EXPECT_THROW(cfg.validate(), rmusic::DomainError);

  cfg = rmusic::parse_config_text("");
  cfg.scene.band_lo_deg = -95.0;
  EXPECT_THROW(cfg.validate(), rmusic::DomainError);

  cfg = rmusic::parse_config_text("");
  cfg.scene.angles_deg = {1.0, 2.0};  // wrong count for 9 targets
  EXPECT_THROW(cfg.validate(), rmusic::DomainError);

  cfg = rmusic::parse_config_text("");
  cfg.estimators.clear();
  EXPECT_THROW(cfg.validate(), rmusic::DomainError);

  cfg = rmusic::parse_config_text("");
  cfg.timing.reps = 0;
  EXPECT_THROW(cfg.validate(), rmusic::DomainError);

  cfg = rmusic::parse_config_text("");
  cfg.rmse.snr_grid_db.clear();
  EXPECT_THROW(cfg.validate(), rmusic::DomainError);
}

TEST(Config, SchemaDocumentsEveryField) {
  // echo() emits dotted section.key pairs; the schema documents the same
  // fields as "  key = ..." lines under their "[section]" header.
  const std::string schema = rmusic::config_schema_text();
  for (const auto& [key, value] : ExperimentConfig{}.echo()) {
    const auto dot = key.find('.');
    ASSERT_NE(dot, std::string::npos) << key;
    const std::string section = "[" + key.substr(0, dot) + "]";
    const std::string entry = "\n  " + key.substr(dot + 1) + " = ";
    EXPECT_NE(schema.find(section), std::string::npos) << key;
    EXPECT_NE(schema.find(entry), std::string::npos) << key;
  }
}

TEST(Config, SketchForFillsDefaultsFromTargets) {
  ExperimentConfig cfg = rmusic::parse_config_text("");
  const rmusic::SketchConfig d = cfg.sketch_for(9, 5);
  EXPECT_EQ(d.s, 9);
  EXPECT_EQ(d.s0, 18);
  EXPECT_EQ(d.s1, 14);
  EXPECT_EQ(d.seed, 5u);

  cfg.sketch_s = 30;
  cfg.sketch_s0 = 100;
  cfg.sketch_s1 = 50;
  const rmusic::SketchConfig e = cfg.sketch_for(9, 6);
  EXPECT_EQ(e.s, 30);
  EXPECT_EQ(e.s0, 100);
  EXPECT_EQ(e.s1, 50);

  cfg.theorem_scale = true;
  const rmusic::SketchConfig t = cfg.sketch_for(9, 7);
  EXPECT_EQ(t.s0, 4 * 9 + 81);
  EXPECT_EQ(t.s1, 36);
}

TEST(Config, LoadConfigReportsMissingFile) {
  try {
    rmusic::load_config("/nonexistent/path/to/config.ini");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line, 0);
  }
}

}  // namespace
