#include "rmusic/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

namespace rmusic {

namespace {

bool all_finite(const Mat& A) { return A.allFinite(); }

// Descending-order Hermitian eigendecomposition folded into SVD form:
// A = V diag(lambda) V^H = (V * sign(lambda)) diag(|lambda|) V^H.
SvdResult hermitian_svd(const Mat& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  if (es.info() != Eigen::Success)
    throw NumericalError("hermitian eigendecomposition failed to converge");
  const int n = static_cast<int>(A.rows());
  RealVec lam = es.eigenvalues();  // ascending
  Mat V = es.eigenvectors();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::abs(lam[a]) > std::abs(lam[b]); });

  SvdResult r;
  r.U.resize(n, n);
  r.V.resize(n, n);
  r.sigma.resize(n);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    r.sigma[j] = std::abs(lam[src]);
    r.V.col(j) = V.col(src);
    r.U.col(j) = V.col(src);
    if (lam[src] < 0.0) r.U.col(j) *= -1.0;
  }
  return r;
}

// Thin QR of a tall matrix by Cholesky of the Gram matrix. One pass costs a
// few small GEMM-speed products instead of an unblocked Householder sweep
// over the tall dimension. The diagonal of the Cholesky factor tracks the
// column conditioning: a wide spread triggers a second pass (which restores
// machine-precision orthonormality for condition numbers up to roughly
// 1/sqrt(eps)); a collapse, or a Gram matrix that loses positive
// definiteness, falls back to the caller's Householder path. Returns the
// diagonal ratio, or a negative value on failure.
double qr_tall_chol_pass(const Mat& A, Mat* Q, Mat* R) {
  const int n = static_cast<int>(A.cols());
  Mat gram = Mat::Zero(n, n);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(A.adjoint());
  Eigen::LLT<Mat> llt(gram.selfadjointView<Eigen::Lower>());
  if (llt.info() != Eigen::Success) return -1.0;
  const Mat L = llt.matrixL();
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (int j = 0; j < n; ++j) {
    const double d = std::abs(L(j, j));
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  if (!(dmin > 1e-6 * dmax)) return -1.0;
  *R = L.adjoint();
  // Inverting the small triangle and multiplying runs at GEMM speed, unlike
  // a right-side triangular solve against the tall matrix; the conditioning
  // gate above keeps the inverse benign.
  Mat linv = Mat::Identity(n, n);
  L.triangularView<Eigen::Lower>().solveInPlace(linv);
  Q->noalias() = A * linv.adjoint();
  return dmin / dmax;
}

// Exact SVD of a small square matrix through the eigendecomposition of its
// Gram matrix, several times cheaper than bidiagonalization at these sizes.
// Left vectors come from mapping the right ones through A; a Cholesky
// correction pins their orthonormality at machine precision. Only safe when
// the squared condition number stays well clear of 1/eps, so a spectrum
// gate rejects hard cases and the caller falls back to BDCSVD.
bool gram_svd_small(const Mat& A, SvdResult* out) {
  const int n = static_cast<int>(A.rows());
  Mat g = Mat::Zero(n, n);
  g.selfadjointView<Eigen::Lower>().rankUpdate(A.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(g.selfadjointView<Eigen::Lower>()));
  if (es.info() != Eigen::Success) return false;
  const RealVec lam = es.eigenvalues();  // ascending
  const double lmax = lam(n - 1);
  if (!(lmax > 0.0) || !(lam(0) > 1e-8 * lmax)) return false;

  out->V.resize(n, n);
  for (int j = 0; j < n; ++j) out->V.col(j) = es.eigenvectors().col(n - 1 - j);
  out->U.noalias() = A * out->V;
  out->sigma.resize(n);
  for (int j = 0; j < n; ++j) {
    const double s = out->U.col(j).norm();
    if (!(s > 0.0)) return false;
    out->sigma[j] = s;
    out->U.col(j) /= s;
  }

  Mat ug = Mat::Zero(n, n);
  ug.selfadjointView<Eigen::Lower>().rankUpdate(out->U.adjoint());
  Eigen::LLT<Mat> llt(ug.selfadjointView<Eigen::Lower>());
  if (llt.info() != Eigen::Success) return false;
  Mat linv = Mat::Identity(n, n);
  llt.matrixL().solveInPlace(linv);
  out->U = (out->U * linv.adjoint()).eval();
  return true;
}

}  // namespace

QrResult qr_tall_fast(const Mat& A) {
  if (A.rows() < A.cols())
    throw DimensionError("qr_tall_fast requires rows >= cols");
  if (!all_finite(A)) throw NumericalError("qr_tall_fast: non-finite input");
  Mat q1, r1;
  const double spread1 = qr_tall_chol_pass(A, &q1, &r1);
  if (spread1 > 1e-2) {
    // Well conditioned: one pass already sits at an orthonormality defect
    // around eps times the squared condition number, below 1e-11 here.
    QrResult out;
    out.Q = std::move(q1);
    out.R_factor = std::move(r1);
    return out;
  }
  if (spread1 > 0.0) {
    Mat q2, r2;
    if (qr_tall_chol_pass(q1, &q2, &r2) > 0.0) {
      QrResult out;
      out.Q = std::move(q2);
      out.R_factor = (r2.triangularView<Eigen::Upper>() * r1).eval();
      return out;
    }
  }
  return qr_thin(A);
}

QrResult qr_thin(const Mat& A) {
  if (A.rows() < A.cols())
    throw DimensionError("qr_thin requires rows >= cols");
  if (!all_finite(A)) throw NumericalError("qr_thin: non-finite input");
  const int k = static_cast<int>(A.cols());
  Eigen::HouseholderQR<Mat> qr(A);
  QrResult out;
  out.Q = qr.householderQ() * Mat::Identity(A.rows(), k);
  Mat R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  out.R_factor = R;
  return out;
}

SvdResult svd_full(const Mat& A) {
  if (!all_finite(A)) throw NumericalError("svd_full: non-finite input");
  if (A.rows() == A.cols()) {
    const double scale = A.cwiseAbs().maxCoeff();
    const double defect = (A - A.adjoint()).cwiseAbs().maxCoeff();
    if (scale == 0.0) {
      SvdResult r;
      const int n = static_cast<int>(A.rows());
      r.U = Mat::Identity(n, n);
      r.V = Mat::Identity(n, n);
      r.sigma = RealVec::Zero(n);
      return r;
    }
    if (defect <= 1e-12 * scale) return hermitian_svd(A);
    if (A.rows() <= 128) {
      SvdResult r;
      if (gram_svd_small(A, &r)) return r;
    }
  }

  // Strongly rectangular inputs go through a QR reduction first: the SVD of
  // the small triangular factor composes to an exact SVD of A at a fraction
  // of the bidiagonalization cost.
  if (A.rows() >= 2 * A.cols() && A.cols() >= 1) {
    const QrResult qr = qr_tall_fast(A);
    SvdResult r = svd_full(qr.R_factor);
    Mat u;
    u.noalias() = qr.Q * r.U;
    r.U = std::move(u);
    return r;
  }
  if (A.cols() >= 2 * A.rows() && A.rows() >= 1) {
    SvdResult t = svd_full(A.adjoint());
    SvdResult r;
    r.U = std::move(t.V);
    r.sigma = std::move(t.sigma);
    r.V = std::move(t.U);
    return r;
  }

  Eigen::BDCSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw NumericalError("svd_full: BDCSVD failed to converge");
  SvdResult r;
  r.U = svd.matrixU();
  r.sigma = svd.singularValues();
  r.V = svd.matrixV();
  return r;
}

std::optional<SvdResult> svd_gram(const Mat& A, int k) {
  if (!all_finite(A)) throw NumericalError("svd_gram: non-finite input");
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  const int short_side = std::min(m, n);
  if (k < 1 || k > short_side)
    throw DimensionError("svd_gram: k out of range");

  // Gram matrix on the short side; its eigenvectors are the singular
  // vectors of that side directly.
  const bool rows_short = m <= n;
  Mat gram = Mat::Zero(short_side, short_side);
  if (rows_short)
    gram.selfadjointView<Eigen::Lower>().rankUpdate(A);
  else
    gram.selfadjointView<Eigen::Lower>().rankUpdate(A.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(
      Mat(gram.selfadjointView<Eigen::Lower>()));
  if (es.info() != Eigen::Success) return std::nullopt;
  const RealVec lam = es.eigenvalues();  // ascending
  const double lmax = lam(short_side - 1);
  if (!(lmax > 0.0) || !(lam(short_side - k) > 1e-8 * lmax))
    return std::nullopt;

  Mat short_vecs(short_side, k);
  for (int j = 0; j < k; ++j)
    short_vecs.col(j) = es.eigenvectors().col(short_side - 1 - j);

  // Map through A to recover the long side; the mapped column norms give
  // the singular values more accurately than sqrt(lambda).
  Mat mapped(std::max(m, n), k);
  if (rows_short)
    mapped.noalias() = A.adjoint() * short_vecs;
  else
    mapped.noalias() = A * short_vecs;

  SvdResult r;
  r.sigma.resize(k);
  for (int j = 0; j < k; ++j) {
    const double s = mapped.col(j).norm();
    if (!(s > 0.0)) return std::nullopt;
    r.sigma[j] = s;
    mapped.col(j) /= s;
  }

  // Eigenvalue ordering transfers to the norms up to roundoff; restore
  // strict non-increasing order where clustered values landed swapped. The
  // ordering usually survives, so the reshuffle copies are skipped then.
  bool sorted = true;
  for (int j = 1; j < k; ++j)
    if (r.sigma[j] > r.sigma[j - 1]) {
      sorted = false;
      break;
    }
  if (!sorted) {
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return r.sigma[a] > r.sigma[b]; });
    Mat shuffled_short(short_side, k);
    Mat shuffled_mapped(mapped.rows(), k);
    RealVec sig(k);
    for (int j = 0; j < k; ++j) {
      shuffled_short.col(j) = short_vecs.col(order[static_cast<std::size_t>(j)]);
      shuffled_mapped.col(j) = mapped.col(order[static_cast<std::size_t>(j)]);
      sig[j] = r.sigma[order[static_cast<std::size_t>(j)]];
    }
    r.sigma = std::move(sig);
    short_vecs = std::move(shuffled_short);
    mapped = std::move(shuffled_mapped);
  }
  if (rows_short) {
    r.U = std::move(short_vecs);
    r.V = std::move(mapped);
  } else {
    r.U = std::move(mapped);
    r.V = std::move(short_vecs);
  }
  return r;
}

SvdResult svd_truncate(const SvdResult& r, int k) {
  const int rank = static_cast<int>(r.sigma.size());
  if (k < 1 || k > rank)
    throw DimensionError("svd_truncate: k out of range");
  SvdResult out;
  out.U = r.U.leftCols(k);
  out.sigma = r.sigma.head(k);
  out.V = r.V.leftCols(k);
  return out;
}

Mat tri_pinv(const Mat& R_factor, double rcond) {
  if (R_factor.rows() != R_factor.cols())
    throw DimensionError("tri_pinv requires a square matrix");
  if (!all_finite(R_factor)) throw NumericalError("tri_pinv: non-finite input");
  if (rcond <= 0.0 || rcond >= 1.0)
    throw DomainError("tri_pinv: rcond must lie in (0,1)");
  const int n = static_cast<int>(R_factor.rows());

  double dmax = 0.0;
  for (int i = 0; i < n; ++i) dmax = std::max(dmax, std::abs(R_factor(i, i)));
  bool deficient = (dmax == 0.0);
  for (int i = 0; i < n && !deficient; ++i)
    if (std::abs(R_factor(i, i)) < rcond * dmax) deficient = true;

  if (!deficient) {
    return R_factor.triangularView<Eigen::Upper>().solve(Mat::Identity(n, n));
  }

  // Rank-deficient: Moore-Penrose via SVD with the same relative cutoff.
  Eigen::BDCSVD<Mat> svd(R_factor, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw NumericalError("tri_pinv: SVD fallback failed to converge");
  const RealVec& s = svd.singularValues();
  const double cutoff = rcond * (s.size() > 0 ? s[0] : 0.0);
  RealVec sinv = RealVec::Zero(s.size());
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > cutoff) sinv[i] = 1.0 / s[i];
  return svd.matrixV() * sinv.asDiagonal() * svd.matrixU().adjoint();
}

RealVec principal_angles(const Mat& U, const Mat& V) {
  if (U.rows() != V.rows() || U.cols() != V.cols())
    throw DimensionError("principal_angles: shape mismatch");
  Eigen::BDCSVD<Mat> svd(U.adjoint() * V);
  RealVec c = svd.singularValues();
  RealVec ang(c.size());
  for (int i = 0; i < c.size(); ++i) {
    const double ci = std::min(1.0, std::max(-1.0, c[i]));
    ang[c.size() - 1 - i] = std::acos(ci);  // ascending angles
  }
  return ang;
}

double orthonormality_defect(const Mat& U) {
  return (U.adjoint() * U - Mat::Identity(U.cols(), U.cols())).norm();
}

}  // namespace rmusic
