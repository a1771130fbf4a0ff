#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rmusic/numerics.hpp"
#include "rmusic/sketch.hpp"

namespace rmusic {

// Hermitian spatial covariance. Construction symmetrizes the input; a
// relative asymmetry above kAsymTol is rejected rather than hidden.
class CovarianceMatrix {
 public:
  static constexpr double kAsymTol = 1e-10;

  explicit CovarianceMatrix(Mat r);  // throws DimensionError / DomainError

  const Mat& mat() const { return r_; }
  int dim() const { return static_cast<int>(r_.rows()); }

  // Cached real/imaginary parts, for mixed real-complex products.
  const RealMat& real_part() const { return re_; }
  const RealMat& imag_part() const { return im_; }

 private:
  Mat r_;
  RealMat re_;
  RealMat im_;
};

enum class Method { kRMusic, kMusicFull, kExactKsvd, kPropagator, kInverse };

const char* method_name(Method m);

struct SubspaceEstimate {
  Mat basis;                          // M x K, orthonormal columns
  RealVec singular_values;            // length K (empty for propagator)
  Method method = Method::kMusicFull;
  double elapsed_seconds = 0.0;       // factorization stage only
  std::optional<SketchConfig> sketch; // echo, randomized path only
};

// R = Y Y^H / N.
CovarianceMatrix sample_covariance(const Mat& snapshots);

struct ExactMusicResult {
  SubspaceEstimate signal;
  Mat noise_basis;  // M x (M-K), orthonormal, orthogonal to signal
};

// Full Hermitian factorization; signal basis = top-K left singular
// vectors, noise basis = the remaining M-K.
ExactMusicResult exact_music_subspace(const CovarianceMatrix& r, int k);

// Output of the randomized rank-K factorization. U/sigma/V approximate the
// top-K SVD of R. lra_residual is ||C * Xhat - R||_F^2 for the untruncated
// rank-s regression product, evaluated through Gram-matrix traces (no M x M
// intermediate).
struct RankKSvdResult {
  Mat u;                // M x K
  RealVec sigma;        // length K
  Mat v;                // M x K
  double lra_residual = 0.0;
  double elapsed_seconds = 0.0;
  SketchConfig sketch;
};

// Randomized rank-K SVD:
//   1. C = R * S, Gaussian S (M x s)
//   2. composite S_X = S_C * S_G (M x s1)
//   3. A = S_X^T C, B = S_X^T R
//   4. A = Q_A * Omega_A (thin QR), Xhat = pinv(Omega_A) * Q_A^H * B
//   5. SVD of C * Xhat at sketch scale:
//        Z = Q_A^H B; [U_B, S_B, V_B] = svd_k(Z);
//        D = C * pinv(Omega_A) * U_B * diag(S_B); [U_D, S_D, V_D] = svd(D);
//        U = U_D, sigma = S_D, V = V_B * V_D
RankKSvdResult rank_k_svd_via_sketch(const CovarianceMatrix& r, int k,
                                     const SketchConfig& cfg);

// Signal subspace from rank_k_svd_via_sketch; the K columns of U are
// re-orthonormalized before use.
SubspaceEstimate rmusic_subspace(const CovarianceMatrix& r, int k,
                                 const SketchConfig& cfg);

// Top-K basis by block Krylov iteration (block size K, full
// reorthogonalization, fixed internal start seed). Converges to the
// dense factorization's truncation when the K-th spectral gap is open;
// throws NumericalError if the Ritz residuals fail to settle.
SubspaceEstimate exact_ksvd_subspace(const CovarianceMatrix& r, int k);

struct PropagatorResult {
  SubspaceEstimate signal;  // orthonormal complement of the noise projector
  Mat noise_projector;      // M x M Hermitian idempotent
};

// Propagator method: partition R = [G | H] with G = first K columns,
// P = (G^H G)^{-1} G^H H. The noise projector is the orthogonal projector
// with null space span[I_K; P^H], formed without any M x M factorization.
// Throws RankDeficiencyError when G^H G is numerically singular.
PropagatorResult propagator_subspace(const CovarianceMatrix& r, int k);

// Weight matrix W = R^{-1} for the matrix-inverse spectrum kernel
// P(theta) = 1 / (a^H W a). Throws RankDeficiencyError if R is not
// positive definite.
struct InverseWeights {
  Mat w;  // M x M Hermitian
  double elapsed_seconds = 0.0;
};
InverseWeights inverse_spectrum_weights(const CovarianceMatrix& r);

}  // namespace rmusic
