#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "rmusic/errors.hpp"

namespace rmusic {

inline constexpr double kPi = 3.14159265358979323846;

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RealMat = Eigen::MatrixXd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

// Relative Frobenius tolerance for factorization reconstruction.
inline constexpr double kReconTol = 1e-8;
// Column-orthonormality drift tolerance (scaled by sqrt(cols)).
inline constexpr double kOrthoTol = 1e-10;

struct SvdResult {
  Mat U;           // m x r, orthonormal columns
  RealVec sigma;   // length r, non-increasing, >= 0
  Mat V;           // n x r, orthonormal columns
};

struct QrResult {
  Mat Q;         // m x k, orthonormal columns
  Mat R_factor;  // k x k, upper triangular (exact zeros below diagonal)
};

// Thin QR. Requires rows >= cols.
QrResult qr_thin(const Mat& A);

// Thin QR specialized for tall matrices: one or two Cholesky-QR passes at
// GEMM speed, with a conditioning gate that falls back to Householder, so
// the result is orthonormal to machine precision for any input. The R
// factor carries a positive real diagonal.
QrResult qr_tall_fast(const Mat& A);

// Full (thin) SVD with singular values sorted non-increasing. Hermitian
// inputs take an eigendecomposition fast path; the result is still a valid
// SVD (signs folded into U).
SvdResult svd_full(const Mat& A);

// First k singular triplets of an existing decomposition.
SvdResult svd_truncate(const SvdResult& r, int k);

// Rank-k truncated SVD from the eigendecomposition of the short-side Gram
// matrix, several times cheaper than bidiagonalization for strongly
// rectangular inputs. Squaring the spectrum costs precision, so a gate
// rejects inputs whose k-th singular value sits within 1e-4 of the largest
// times machine noise (lambda ratio below 1e-8); callers then fall back to
// svd_full. Returns std::nullopt in that case.
std::optional<SvdResult> svd_gram(const Mat& A, int k);

// Moore-Penrose pseudo-inverse of a square upper-triangular matrix.
// Diagonal entries below rcond * max|r_jj| flag rank deficiency, which
// falls back to an SVD-based pseudo-inverse.
Mat tri_pinv(const Mat& R_factor, double rcond = 1e-12);

// Principal angles (radians, ascending) between the column spans of two
// orthonormal bases with equal column counts.
RealVec principal_angles(const Mat& U, const Mat& V);

// || U^H U - I ||_F; helper for orthonormality checks.
double orthonormality_defect(const Mat& U);

}  // namespace rmusic
