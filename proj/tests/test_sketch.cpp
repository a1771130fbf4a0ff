#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "rmusic/numerics.hpp"
#include "rmusic/rng.hpp"
#include "rmusic/sketch.hpp"

namespace {

using rmusic::Complex;
using rmusic::CompositeSketch;
using rmusic::CountSketch;
using rmusic::Mat;
using rmusic::RealMat;
using rmusic::SketchApplyStats;
using rmusic::SketchConfig;

Mat random_complex(int rows, int cols, std::uint64_t seed) {
  rmusic::Engine eng(seed);
  Mat a(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) a(i, j) = Complex{eng.normal(), eng.normal()};
  return a;
}

TEST(SketchConfig, DefaultWidths) {
  const SketchConfig cfg = SketchConfig::defaults_for(5, 77);
  EXPECT_EQ(cfg.s, 5);
  EXPECT_EQ(cfg.s0, 10);
  EXPECT_EQ(cfg.s1, 8);  // ceil(1.5 * 5)
  EXPECT_EQ(cfg.seed, 77u);
  EXPECT_NO_THROW(cfg.validate(100, 5));

  const SketchConfig wide = SketchConfig::defaults_for(4, 0, 1.0);
  EXPECT_EQ(wide.s1, 8);
}

TEST(SketchConfig, AnalysisScaleWidths) {
  const SketchConfig cfg = SketchConfig::theorem_scale_for(3, 1);
  EXPECT_EQ(cfg.s, 6);
  EXPECT_EQ(cfg.s0, 21);  // 4k + k^2
  EXPECT_EQ(cfg.s1, 12);
  EXPECT_NO_THROW(cfg.validate(200, 3));
}

TEST(SketchConfig, ValidateEnforcesOrdering) {
  SketchConfig cfg = SketchConfig::defaults_for(5, 0);
  EXPECT_THROW(cfg.validate(9, 5), rmusic::DomainError);  // s0 > m

  cfg = SketchConfig::defaults_for(5, 0);
  cfg.s = 4;  // s < k
  EXPECT_THROW(cfg.validate(100, 5), rmusic::DomainError);

  cfg = SketchConfig::defaults_for(5, 0);
  cfg.s1 = cfg.s0;  // s1 must stay below s0
  EXPECT_THROW(cfg.validate(100, 5), rmusic::DomainError);

  cfg = SketchConfig::defaults_for(5, 0);
  cfg.s = cfg.s1;  // s must stay below s1
  EXPECT_THROW(cfg.validate(100, 5), rmusic::DomainError);

  cfg = SketchConfig::defaults_for(5, 0);
  cfg.eta = 0.0;
  EXPECT_THROW(cfg.validate(100, 5), rmusic::DomainError);
}

TEST(GaussianSketch, MomentsMatchScaledNormal) {
  const int m = 2000, s = 50;
  const RealMat g = rmusic::gaussian_sketch_real(m, s, 31);
  const double n = static_cast<double>(m) * s;
  const double mean = g.sum() / n;
  const double var = (g.array() - mean).square().sum() / n;
  EXPECT_NEAR(mean, 0.0, 4.0 / std::sqrt(n * s));  // 4 sigma of the mean
  EXPECT_NEAR(var, 1.0 / s, 0.05 / s);
  EXPECT_EQ(rmusic::gaussian_sketch(4, 3, 9).imag().norm(), 0.0);
  EXPECT_EQ(rmusic::gaussian_sketch(4, 3, 9).real(),
            rmusic::gaussian_sketch_real(4, 3, 9));
}

TEST(GaussianSketch, PreservesVectorNorms) {
  // E ||S^T x||^2 = ||x||^2 for N(0, 1/s) entries; chi-square concentration
  // keeps 100-dimensional projections well inside [0.5, 1.5].
  const int m = 500, s = 100;
  Mat x = random_complex(m, 1, 3);
  x /= x.norm();
  int inside = 0;
  double acc = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const RealMat g = rmusic::gaussian_sketch_real(m, s, seed);
    const double r = (g.transpose() * x).squaredNorm();
    acc += r;
    inside += (r > 0.5 && r < 1.5) ? 1 : 0;
  }
  EXPECT_GE(inside, 195);
  EXPECT_NEAR(acc / 200.0, 1.0, 0.1);
}

TEST(GaussianSketch, DeterministicAndSeedSensitive) {
  EXPECT_EQ(rmusic::gaussian_sketch_real(32, 8, 5),
            rmusic::gaussian_sketch_real(32, 8, 5));
  EXPECT_NE(rmusic::gaussian_sketch_real(32, 8, 5),
            rmusic::gaussian_sketch_real(32, 8, 6));
  EXPECT_THROW(rmusic::gaussian_sketch_real(0, 8, 5), rmusic::DomainError);
}

TEST(CountSketch, OneSignedEntryPerRow) {
  const CountSketch sk = rmusic::count_sketch(257, 32, 11);
  ASSERT_EQ(sk.col.size(), 257u);
  ASSERT_EQ(sk.sign.size(), 257u);
  for (int i = 0; i < 257; ++i) {
    EXPECT_GE(sk.col[static_cast<std::size_t>(i)], 0);
    EXPECT_LT(sk.col[static_cast<std::size_t>(i)], 32);
    EXPECT_EQ(std::abs(sk.sign[static_cast<std::size_t>(i)]), 1.0);
  }
}

TEST(CountSketch, HashesAreRoughlyUniform) {
  const int m = 10000, s0 = 10;
  const CountSketch sk = rmusic::count_sketch(m, s0, 13);
  std::vector<int> hist(s0, 0);
  int minus = 0;
  for (int i = 0; i < m; ++i) {
    ++hist[static_cast<std::size_t>(sk.col[static_cast<std::size_t>(i)])];
    minus += sk.sign[static_cast<std::size_t>(i)] < 0 ? 1 : 0;
  }
  for (int b = 0; b < s0; ++b) EXPECT_NEAR(hist[static_cast<std::size_t>(b)], 1000, 150);
  EXPECT_NEAR(minus, 5000, 250);
}

TEST(CountSketch, ApplyMatchesDenseOperator) {
  const int m = 40, s0 = 12, cols = 7;
  const CountSketch sk = rmusic::count_sketch(m, s0, 17);
  const Mat a = random_complex(m, cols, 19);

  // Materialize S_C from the row structure and compare S_C^T A.
  Mat dense = Mat::Zero(m, s0);
  for (int i = 0; i < m; ++i)
    dense(i, sk.col[static_cast<std::size_t>(i)]) =
        sk.sign[static_cast<std::size_t>(i)];

  SketchApplyStats stats;
  const Mat applied = rmusic::apply_sketch_left(sk, a, &stats);
  EXPECT_LT((applied - dense.transpose() * a).norm(), 1e-12 * a.norm());
  EXPECT_EQ(stats.count_stage_touches, static_cast<std::uint64_t>(m) * cols);

  EXPECT_THROW(rmusic::apply_sketch_left(sk, random_complex(m + 1, 2, 1)),
               rmusic::DimensionError);
}

TEST(CompositeSketch, FactoredMatchesMaterialized) {
  const SketchConfig cfg = SketchConfig::defaults_for(6, 23);
  const int m = 64;
  const CompositeSketch sk = rmusic::composite_sketch(cfg, m);
  const RealMat sx = rmusic::composite_sketch_real(cfg, m);
  ASSERT_EQ(sx.rows(), m);
  ASSERT_EQ(sx.cols(), cfg.s1);

  // Row i of the materialized operator is sign[i] * gaussian.row(col[i]).
  for (int i = 0; i < m; ++i)
    EXPECT_EQ(RealMat(sx.row(i)),
              RealMat(sk.count.sign[static_cast<std::size_t>(i)] *
                      sk.gaussian.row(sk.count.col[static_cast<std::size_t>(i)])));

  const Mat a = random_complex(m, 9, 29);
  SketchApplyStats stats;
  const Mat staged = rmusic::apply_sketch_left(sk, a, &stats);
  const Mat direct = sx.transpose().cast<Complex>() * a;
  EXPECT_LT((staged - direct).norm(), 1e-12 * direct.norm());
  EXPECT_LT((rmusic::real_left_product(sx, a) - direct).norm(), 1e-12 * direct.norm());
  EXPECT_EQ(rmusic::composite_sketch_mat(cfg, m).real(), sx);

  EXPECT_EQ(stats.count_stage_touches, static_cast<std::uint64_t>(m) * 9);
  EXPECT_GT(stats.gaussian_flops, 0u);
}

TEST(CompositeSketch, SeedStreamsAreIndependent) {
  SketchConfig cfg = SketchConfig::defaults_for(6, 23);
  const int m = 48;
  const CompositeSketch base = rmusic::composite_sketch(cfg, m);
  const CompositeSketch same = rmusic::composite_sketch(cfg, m);
  EXPECT_EQ(base.count.col, same.count.col);
  EXPECT_EQ(base.count.sign, same.count.sign);
  EXPECT_EQ(base.gaussian, same.gaussian);

  cfg.seed = 24;
  const CompositeSketch other = rmusic::composite_sketch(cfg, m);
  EXPECT_NE(base.count.col, other.count.col);
  EXPECT_NE(base.gaussian, other.gaussian);

  // The primary sketch stream must not collide with the composite streams.
  const RealMat primary = rmusic::gaussian_sketch_real(
      cfg.s0, cfg.s1, rmusic::derive_seed(23, rmusic::kStreamPrimaryGaussian));
  EXPECT_NE(primary, base.gaussian);
}

TEST(CompositeSketch, EmbedsRankKSubspaces) {
  // Spectral smoke test at generous widths: singular values of S_X^T Q stay
  // within [0.5, 1.5] for nearly every seed, so the sketch acts as a
  // subspace embedding with small distortion.
  const int m = 200, k = 5;
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Mat q = rmusic::qr_thin(random_complex(m, k, 1000 + seed)).Q;
    SketchConfig cfg;
    cfg.s = k;
    cfg.s0 = 16 * k;
    cfg.s1 = 8 * k;
    cfg.seed = seed;
    const Mat sq = rmusic::apply_sketch_left(rmusic::composite_sketch(cfg, m), q);
    const rmusic::SvdResult svd = rmusic::svd_full(sq);
    if (svd.sigma(0) < 1.5 && svd.sigma(k - 1) > 0.5) ++good;
  }
  EXPECT_GE(good, 95);
}

}  // namespace
