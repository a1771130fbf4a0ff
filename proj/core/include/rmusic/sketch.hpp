#pragma once

#include <cstdint>
#include <vector>

#include "rmusic/numerics.hpp"

namespace rmusic {

// Sketch widths for the randomized subspace pipeline.
//   s  : columns of the primary Gaussian sketch S (M x s)
//   s0 : rows of the count-sketch stage S_C^T (s0 x M)
//   s1 : rows of the Gaussian stage S_G^T (s1 x s0); the composite
//        S_X = S_C * S_G is M x s1
// Ordering constraint: K <= s < s1 < s0 <= M.
struct SketchConfig {
  int s = 0;
  int s0 = 0;
  int s1 = 0;
  double eta = 0.5;       // oversampling knob behind the s1 default
  std::uint64_t seed = 0;

  // s = K, s0 = 2K, s1 = ceil((1 + eta) * K).
  static SketchConfig defaults_for(int k, std::uint64_t seed, double eta = 0.5);
  // Widths from the approximation-bound analysis: s0 = 4K + K^2, s1 = 4K.
  // s is not fixed by the analysis; 2K gives the truncation step headroom.
  static SketchConfig theorem_scale_for(int k, std::uint64_t seed);

  void validate(int m, int k) const;  // throws DomainError
};

// Seed-stream indices hung off SketchConfig::seed (see derive_seed):
//   0 -> primary Gaussian sketch S
//   1 -> count-sketch stage S_C
//   2 -> composite Gaussian stage S_G
inline constexpr std::uint64_t kStreamPrimaryGaussian = 0;
inline constexpr std::uint64_t kStreamCountSketch = 1;
inline constexpr std::uint64_t kStreamCompositeGaussian = 2;

// Count sketch S_C (m x s0), one nonzero per row: S_C(i, col[i]) = sign[i].
// Row hashes are uniform over columns, signs are independent +/-1.
struct CountSketch {
  int rows = 0;
  int cols = 0;
  std::vector<int> col;      // length rows, values in [0, cols)
  std::vector<double> sign;  // length rows, +1 or -1
};

// Composite operator S_X = S_C * S_G with S_G (s0 x s1) i.i.d.
// N(0, 1/s1) Gaussian. Stored in factored form; row i of the materialized
// S_X is sign[i] * S_G.row(col[i]).
struct CompositeSketch {
  CountSketch count;
  RealMat gaussian;  // s0 x s1
};

// Touch counts for the staged application path; used to check that the
// count-sketch stage runs in one pass over its input.
struct SketchApplyStats {
  std::uint64_t count_stage_touches = 0;  // input entries read by S_C^T
  std::uint64_t gaussian_flops = 0;       // real multiply-adds in dense stages
};

// i.i.d. N(0, 1/s) real Gaussian, m x s. Entries are drawn column-major.
RealMat gaussian_sketch_real(int m, int s, std::uint64_t seed);

// Same matrix embedded as complex (zero imaginary part).
Mat gaussian_sketch(int m, int s, std::uint64_t seed);

// Row hashes then signs, each drawn in row order from their own
// generator phase.
CountSketch count_sketch(int m, int s0, std::uint64_t seed);

// Factored composite sketch for the given widths. Sub-operators use
// independent streams derived from cfg.seed (indices above).
CompositeSketch composite_sketch(const SketchConfig& cfg, int m);

// Materialized S_X = S_C * S_G as a real m x s1 matrix, and its complex
// embedding. Equal to applying the factored form to the identity.
RealMat composite_sketch_real(const SketchConfig& cfg, int m);
Mat composite_sketch_mat(const SketchConfig& cfg, int m);

// S^T A without forming S_X. The count stage visits each entry of A exactly
// once; the Gaussian stage is a dense product on the s0 x n intermediate.
Mat apply_sketch_left(const CountSketch& sk, const Mat& a,
                      SketchApplyStats* stats = nullptr);
Mat apply_sketch_left(const CompositeSketch& sk, const Mat& a,
                      SketchApplyStats* stats = nullptr);

// S^T A for a real sketch against a complex matrix, computed as two real
// products (S^T Re(A), S^T Im(A)).
Mat real_left_product(const RealMat& s, const Mat& a,
                      SketchApplyStats* stats = nullptr);

}  // namespace rmusic
