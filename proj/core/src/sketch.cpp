#include "rmusic/sketch.hpp"

#include <cmath>

#include "rmusic/errors.hpp"
#include "rmusic/rng.hpp"

namespace rmusic {

SketchConfig SketchConfig::defaults_for(int k, std::uint64_t seed, double eta) {
  if (k < 1) throw DomainError("sketch defaults need k >= 1");
  SketchConfig cfg;
  cfg.s = k;
  cfg.s0 = 2 * k;
  cfg.s1 = static_cast<int>(std::ceil((1.0 + eta) * k));
  cfg.eta = eta;
  cfg.seed = seed;
  return cfg;
}

SketchConfig SketchConfig::theorem_scale_for(int k, std::uint64_t seed) {
  if (k < 1) throw DomainError("sketch widths need k >= 1");
  SketchConfig cfg;
  cfg.s = 2 * k;
  cfg.s0 = 4 * k + k * k;
  cfg.s1 = 4 * k;
  cfg.seed = seed;
  return cfg;
}

void SketchConfig::validate(int m, int k) const {
  if (k < 1) throw DomainError("sketch widths need k >= 1");
  if (!(k <= s && s < s1 && s1 < s0 && s0 <= m))
    throw DomainError("sketch widths must satisfy k <= s < s1 < s0 <= m");
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
}

RealMat gaussian_sketch_real(int m, int s, std::uint64_t seed) {
  if (m < 1 || s < 1) throw DomainError("sketch dimensions must be positive");
  Engine eng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(s));
  RealMat g(m, s);
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < m; ++i) g(i, j) = scale * eng.normal();
  return g;
}

Mat gaussian_sketch(int m, int s, std::uint64_t seed) {
  return gaussian_sketch_real(m, s, seed).cast<Complex>();
}

CountSketch count_sketch(int m, int s0, std::uint64_t seed) {
  if (m < 1 || s0 < 1) throw DomainError("sketch dimensions must be positive");
  CountSketch sk;
  sk.rows = m;
  sk.cols = s0;
  sk.col.resize(static_cast<std::size_t>(m));
  sk.sign.resize(static_cast<std::size_t>(m));
  Engine eng(seed);
  for (int i = 0; i < m; ++i)
    sk.col[static_cast<std::size_t>(i)] =
        static_cast<int>(eng.next_u64() % static_cast<std::uint64_t>(s0));
  for (int i = 0; i < m; ++i)
    sk.sign[static_cast<std::size_t>(i)] = (eng.next_u64() & 1u) ? -1.0 : 1.0;
  return sk;
}

CompositeSketch composite_sketch(const SketchConfig& cfg, int m) {
  CompositeSketch sk;
  sk.count = count_sketch(m, cfg.s0, derive_seed(cfg.seed, kStreamCountSketch));
  sk.gaussian =
      gaussian_sketch_real(cfg.s0, cfg.s1, derive_seed(cfg.seed, kStreamCompositeGaussian));
  return sk;
}

RealMat composite_sketch_real(const SketchConfig& cfg, int m) {
  const CompositeSketch sk = composite_sketch(cfg, m);
  RealMat x(m, cfg.s1);
  for (int i = 0; i < m; ++i)
    x.row(i) = sk.count.sign[static_cast<std::size_t>(i)] *
               sk.gaussian.row(sk.count.col[static_cast<std::size_t>(i)]);
  return x;
}

Mat composite_sketch_mat(const SketchConfig& cfg, int m) {
  return composite_sketch_real(cfg, m).cast<Complex>();
}

Mat apply_sketch_left(const CountSketch& sk, const Mat& a, SketchApplyStats* stats) {
  if (a.rows() != sk.rows)
    throw DimensionError("count sketch row count must match the input");
  Mat out = Mat::Zero(sk.cols, a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (int i = 0; i < sk.rows; ++i)
      out(sk.col[static_cast<std::size_t>(i)], j) +=
          sk.sign[static_cast<std::size_t>(i)] * a(i, j);
  if (stats)
    stats->count_stage_touches +=
        static_cast<std::uint64_t>(a.rows()) * static_cast<std::uint64_t>(a.cols());
  return out;
}

Mat real_left_product(const RealMat& s, const Mat& a, SketchApplyStats* stats) {
  if (a.rows() != s.rows())
    throw DimensionError("sketch row count must match the input");
  // s^T a as two real products; half the multiplies of a complex gemm.
  RealMat re = s.transpose() * a.real();
  RealMat im = s.transpose() * a.imag();
  if (stats)
    stats->gaussian_flops += 2ull * static_cast<std::uint64_t>(s.rows()) *
                             static_cast<std::uint64_t>(s.cols()) *
                             static_cast<std::uint64_t>(a.cols()) * 2ull;
  Mat out(s.cols(), a.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

Mat apply_sketch_left(const CompositeSketch& sk, const Mat& a, SketchApplyStats* stats) {
  if (a.rows() != sk.count.rows)
    throw DimensionError("count sketch row count must match the input");
  // The count stage scatters straight into split real/imaginary
  // accumulators so the Gaussian stage runs as two packed real products;
  // interleaved intermediates would drag both products onto strided paths.
  const Eigen::Index cols = a.cols();
  const int s0 = sk.count.cols;
  RealMat mid_re = RealMat::Zero(s0, cols);
  RealMat mid_im = RealMat::Zero(s0, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (int i = 0; i < sk.count.rows; ++i) {
      const double sg = sk.count.sign[static_cast<std::size_t>(i)];
      const int row = sk.count.col[static_cast<std::size_t>(i)];
      const Complex v = a(i, j);
      mid_re(row, j) += sg * v.real();
      mid_im(row, j) += sg * v.imag();
    }
  RealMat out_re(sk.gaussian.cols(), cols);
  RealMat out_im(sk.gaussian.cols(), cols);
  out_re.noalias() = sk.gaussian.transpose() * mid_re;
  out_im.noalias() = sk.gaussian.transpose() * mid_im;
  if (stats) {
    stats->count_stage_touches +=
        static_cast<std::uint64_t>(a.rows()) * static_cast<std::uint64_t>(a.cols());
    stats->gaussian_flops += 2ull * static_cast<std::uint64_t>(sk.gaussian.rows()) *
                             static_cast<std::uint64_t>(sk.gaussian.cols()) *
                             static_cast<std::uint64_t>(cols) * 2ull;
  }
  Mat out(sk.gaussian.cols(), cols);
  out.real() = out_re;
  out.imag() = out_im;
  return out;
}

}  // namespace rmusic
