#include "rmusic/subspace.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <vector>

#include "rmusic/rng.hpp"

namespace rmusic {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_rank_arg(int m, int k) {
  if (k < 1 || k >= m)
    throw DimensionError("subspace rank must satisfy 1 <= k < dim");
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::kRMusic: return "rmusic";
    case Method::kMusicFull: return "music";
    case Method::kExactKsvd: return "ksvd";
    case Method::kPropagator: return "propagator";
    case Method::kInverse: return "inverse";
  }
  return "unknown";
}

CovarianceMatrix::CovarianceMatrix(Mat r) {
  if (r.rows() != r.cols() || r.rows() < 1)
    throw DimensionError("covariance must be square and non-empty");
  if (!r.allFinite()) throw DomainError("covariance entries must be finite");
  const double scale = std::max(1.0, r.norm());
  if ((r - r.adjoint()).norm() > kAsymTol * scale)
    throw DomainError("covariance is not Hermitian within tolerance");
  r_ = 0.5 * (r + r.adjoint());
  re_ = r_.real();
  im_ = r_.imag();
}

CovarianceMatrix sample_covariance(const Mat& snapshots) {
  if (snapshots.rows() < 1 || snapshots.cols() < 1)
    throw DimensionError("snapshot matrix must be non-empty");
  const double inv_n = 1.0 / static_cast<double>(snapshots.cols());
  Mat r = Mat::Zero(snapshots.rows(), snapshots.rows());
  r.selfadjointView<Eigen::Lower>().rankUpdate(snapshots, inv_n);
  const Mat lower = r.triangularView<Eigen::Lower>();
  return CovarianceMatrix(lower + Mat(lower.triangularView<Eigen::StrictlyLower>()).adjoint());
}

ExactMusicResult exact_music_subspace(const CovarianceMatrix& r, int k) {
  check_rank_arg(r.dim(), k);
  const auto t0 = Clock::now();
  const SvdResult svd = svd_full(r.mat());
  const double elapsed = seconds_since(t0);

  ExactMusicResult out;
  out.signal.basis = svd.U.leftCols(k);
  out.signal.singular_values = svd.sigma.head(k);
  out.signal.method = Method::kMusicFull;
  out.signal.elapsed_seconds = elapsed;
  out.noise_basis = svd.U.rightCols(r.dim() - k);
  return out;
}

namespace {

// R * S for real S through the cached real/imag parts of R; two real
// products instead of one complex one.
Mat real_right_product(const CovarianceMatrix& r, const RealMat& s) {
  Mat c(r.dim(), s.cols());
  c.real() = r.real_part() * s;
  c.imag() = r.imag_part() * s;
  return c;
}

// Leading k left singular vectors and values of Z = Q^H B, computed from
// B B^H without materializing Z: Z Z^H = Q^H (B B^H) Q, so one Gram update
// over the long dimension plus a sketch-sized eigendecomposition suffice.
// Same spectrum gate as svd_gram; returns false on a hard case.
bool z_left_svd_fused(const Mat& q, const Mat& b, int k, Mat* u, RealVec* sigma) {
  const int s1 = static_cast<int>(b.rows());
  const int s = static_cast<int>(q.cols());
  Mat gb = Mat::Zero(s1, s1);
  gb.selfadjointView<Eigen::Lower>().rankUpdate(b);
  const Mat gz =
      q.adjoint() * Mat(gb.selfadjointView<Eigen::Lower>()) * q;  // s x s
  Eigen::SelfAdjointEigenSolver<Mat> es(gz);
  if (es.info() != Eigen::Success) return false;
  const RealVec lam = es.eigenvalues();  // ascending
  const double lmax = lam(s - 1);
  if (!(lmax > 0.0) || !(lam(s - k) > 1e-8 * lmax)) return false;
  u->resize(s, k);
  sigma->resize(k);
  for (int j = 0; j < k; ++j) {
    u->col(j) = es.eigenvectors().col(s - 1 - j);
    (*sigma)[j] = std::sqrt(std::max(0.0, lam(s - 1 - j)));
  }
  return true;
}

RankKSvdResult rank_k_svd_impl(const CovarianceMatrix& r, int k,
                               const SketchConfig& cfg, bool with_residual,
                               bool with_v) {
  const int m = r.dim();
  check_rank_arg(m, k);
  cfg.validate(m, k);

  const auto t0 = Clock::now();

  // 1. Primary sketch of the covariance.
  const RealMat s =
      gaussian_sketch_real(m, cfg.s, derive_seed(cfg.seed, kStreamPrimaryGaussian));
  const Mat c = real_right_product(r, s);  // M x s

  // 2-3. Composite sketch applied to both factors of the regression.
  const CompositeSketch sx = composite_sketch(cfg, m);
  const Mat a = apply_sketch_left(sx, c);        // s1 x s
  const Mat b = apply_sketch_left(sx, r.mat());  // s1 x M

  // 4. Least squares Xhat = argmin ||A X - B||_F through thin QR. The
  // solution Xhat = pinv(Omega) Z is only materialized when the residual is
  // requested; the factor chain below consumes Z and pinv(Omega) directly.
  const QrResult qr = qr_tall_fast(a);
  const Mat pinv_omega = tri_pinv(qr.R_factor);

  // 5. SVD of C * Xhat assembled at sketch scale. The truncated SVD of Z
  // enters only through its left factor U_B diag(Sigma_B) unless the right
  // factor is requested, in which case Z is materialized; either way the
  // Gram fast path applies when the spectrum allows it.
  Mat u_b;            // s x k
  RealVec sigma_b;    // k
  Mat v_b;            // M x k, only when with_v
  Mat z;              // s x M, only when needed
  const bool need_z = with_v || with_residual;
  bool fused_ok = false;
  if (!need_z) fused_ok = z_left_svd_fused(qr.Q, b, k, &u_b, &sigma_b);
  if (!fused_ok) {
    z.noalias() = qr.Q.adjoint() * b;
    std::optional<SvdResult> fast_z = svd_gram(z, k);
    const SvdResult svd_z =
        fast_z ? std::move(*fast_z) : svd_truncate(svd_full(z), k);
    u_b = svd_z.U;
    sigma_b = svd_z.sigma;
    if (with_v) v_b = svd_z.V;
  }

  Mat scaled = u_b;  // s x k, columns weighted by the singular values
  for (int j = 0; j < k; ++j) scaled.col(j) *= sigma_b(j);
  const Mat d = c * (pinv_omega * scaled);
  std::optional<SvdResult> fast_d = svd_gram(d, k);
  const SvdResult svd_d = fast_d ? std::move(*fast_d) : svd_full(d);

  RankKSvdResult out;
  out.u = svd_d.U;
  out.sigma = svd_d.sigma;
  if (with_v) out.v.noalias() = v_b * svd_d.V;
  out.sketch = cfg;

  if (with_residual) {
    // ||C Xhat - R||_F^2 = tr(Xhat^H C^H C Xhat) - 2 Re tr(Xhat^H C^H R)
    //                      + ||R||_F^2, all Gram-sized pieces.
    const Mat xhat = pinv_omega * z;
    const Mat gram = c.adjoint() * c;       // s x s
    const Mat cross = c.adjoint() * r.mat();  // s x M
    const double term1 = (xhat.conjugate().cwiseProduct(gram * xhat)).sum().real();
    const double term2 = (xhat.conjugate().cwiseProduct(cross)).sum().real();
    out.lra_residual = std::max(0.0, term1 - 2.0 * term2 + r.mat().squaredNorm());
  }

  out.elapsed_seconds = seconds_since(t0);
  return out;
}

}  // namespace

RankKSvdResult rank_k_svd_via_sketch(const CovarianceMatrix& r, int k,
                                     const SketchConfig& cfg) {
  return rank_k_svd_impl(r, k, cfg, true, true);
}

SubspaceEstimate rmusic_subspace(const CovarianceMatrix& r, int k,
                                 const SketchConfig& cfg) {
  const auto t0 = Clock::now();
  const RankKSvdResult svd = rank_k_svd_impl(r, k, cfg, false, false);

  SubspaceEstimate out;
  // Re-orthonormalize against drift. The columns arrive near-orthonormal,
  // so a Cholesky-QR pass suffices; Householder QR is the fallback. The
  // small inverted triangle turns the correction into a GEMM.
  Mat gram = Mat::Zero(k, k);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(svd.u.adjoint());
  Eigen::LLT<Mat> llt(gram.selfadjointView<Eigen::Lower>());
  if (llt.info() == Eigen::Success) {
    Mat linv = Mat::Identity(k, k);
    llt.matrixL().solveInPlace(linv);
    out.basis.noalias() = svd.u * linv.adjoint();
  } else {
    out.basis = qr_thin(svd.u).Q;
  }
  out.singular_values = svd.sigma;
  out.method = Method::kRMusic;
  out.sketch = cfg;
  out.elapsed_seconds = seconds_since(t0);
  return out;
}

SubspaceEstimate exact_ksvd_subspace(const CovarianceMatrix& r, int k) {
  const int m = r.dim();
  check_rank_arg(m, k);
  const auto t0 = Clock::now();

  const double tol = 1e-10;
  const int max_cols = std::min(m, std::max(10 * k, 80));

  // Fixed-seed random start block.
  Engine eng(0x9e3779b97f4a7c15ULL);
  Mat block(m, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < m; ++i)
      block(i, j) = Complex{eng.normal(), eng.normal()};
  block = qr_thin(block).Q;

  Mat basis(m, 0);   // accumulated Krylov blocks, orthonormal
  Mat rbasis(m, 0);  // R * basis, cached column-aligned

  Mat ritz_vectors;
  RealVec ritz_values;

  while (true) {
    // Full reorthogonalization (twice) against everything collected.
    for (int pass = 0; pass < 2; ++pass)
      if (basis.cols() > 0) block -= basis * (basis.adjoint() * block);

    // Drop directions the Krylov space has exhausted.
    std::vector<int> keep;
    for (int j = 0; j < block.cols(); ++j)
      if (block.col(j).norm() > 1e-12) keep.push_back(j);
    if (static_cast<int>(keep.size()) < block.cols()) {
      Mat shrunk(m, static_cast<Eigen::Index>(keep.size()));
      for (std::size_t j = 0; j < keep.size(); ++j)
        shrunk.col(static_cast<Eigen::Index>(j)) = block.col(keep[j]);
      block = std::move(shrunk);
    }

    const bool exhausted = block.cols() == 0;
    if (!exhausted) {
      block = qr_thin(block).Q;
      const Mat rblock = r.mat() * block;

      const Eigen::Index old = basis.cols();
      basis.conservativeResize(m, old + block.cols());
      basis.rightCols(block.cols()) = block;
      rbasis.conservativeResize(m, old + block.cols());
      rbasis.rightCols(block.cols()) = rblock;
    }

    // Rayleigh-Ritz on the collected basis.
    const Mat t = basis.adjoint() * rbasis;
    Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (t + t.adjoint()));
    if (eig.info() != Eigen::Success)
      throw NumericalError("Ritz projection failed to diagonalize");

    const int cols = static_cast<int>(basis.cols());
    std::vector<int> order(static_cast<std::size_t>(cols));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(eig.eigenvalues()(a)) > std::abs(eig.eigenvalues()(b));
    });

    Mat resid;
    if (cols >= k) {
      Mat coeff(cols, k);
      ritz_values = RealVec(k);
      for (int j = 0; j < k; ++j) {
        coeff.col(j) = eig.eigenvectors().col(order[static_cast<std::size_t>(j)]);
        ritz_values(j) = eig.eigenvalues()(order[static_cast<std::size_t>(j)]);
      }
      ritz_vectors = basis * coeff;

      // Residuals ||R y - lambda y|| against the dominant scale.
      resid = rbasis * coeff;
      for (int j = 0; j < k; ++j) resid.col(j) -= ritz_values(j) * ritz_vectors.col(j);
      const double scale = std::max(std::abs(ritz_values(0)), 1e-300);
      double worst = 0.0;
      for (int j = 0; j < k; ++j) worst = std::max(worst, resid.col(j).norm());
      if (worst <= tol * scale) break;
    }

    if (exhausted || cols >= max_cols)
      throw NumericalError("Krylov iteration did not converge to the top-k subspace");

    // Next block: residual directions of the current Ritz approximation,
    // or plain multiplication while the basis is still thinner than k.
    block = resid.cols() == k ? resid : Mat(rbasis);
  }

  SubspaceEstimate out;
  out.basis = qr_thin(ritz_vectors).Q;
  out.singular_values = ritz_values.cwiseAbs();
  out.method = Method::kExactKsvd;
  out.elapsed_seconds = seconds_since(t0);
  return out;
}

PropagatorResult propagator_subspace(const CovarianceMatrix& r, int k) {
  const int m = r.dim();
  check_rank_arg(m, k);
  const auto t0 = Clock::now();

  const Mat g = r.mat().leftCols(k);
  const Mat h = r.mat().rightCols(m - k);
  const Mat ghg = g.adjoint() * g;

  Eigen::SelfAdjointEigenSolver<Mat> eig(ghg);
  if (eig.info() != Eigen::Success || !(eig.eigenvalues()(k - 1) > 0.0) ||
      eig.eigenvalues()(0) < 1e-12 * eig.eigenvalues()(k - 1))
    throw RankDeficiencyError("leading covariance block is numerically singular");

  const Mat p = ghg.ldlt().solve(g.adjoint() * h);  // K x (M-K)

  // The noise projector annihilates span[I_K; P^H]; build it from the
  // orthonormalized signal block instead of factoring anything M x M.
  Mat zmat(m, k);
  zmat.topRows(k) = Mat::Identity(k, k);
  zmat.bottomRows(m - k) = p.adjoint();
  const Mat q_sig = qr_thin(zmat).Q;

  PropagatorResult out;
  out.noise_projector = Mat::Identity(m, m) - q_sig * q_sig.adjoint();
  const double elapsed = seconds_since(t0);

  out.signal.basis = q_sig;
  out.signal.method = Method::kPropagator;
  out.signal.elapsed_seconds = elapsed;
  return out;
}

InverseWeights inverse_spectrum_weights(const CovarianceMatrix& r) {
  const auto t0 = Clock::now();
  Eigen::LLT<Mat> llt(r.mat());
  if (llt.info() != Eigen::Success)
    throw RankDeficiencyError("covariance is not positive definite");
  InverseWeights out;
  out.w = llt.solve(Mat::Identity(r.dim(), r.dim()));
  out.elapsed_seconds = seconds_since(t0);
  return out;
}

}  // namespace rmusic
