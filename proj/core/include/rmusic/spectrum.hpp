#pragma once

#include <algorithm>
#include <vector>

#include "rmusic/array_sim.hpp"
#include "rmusic/numerics.hpp"
#include "rmusic/subspace.hpp"

namespace rmusic {

// Uniform scan grid, endpoints included.
struct AngularGrid {
  double start_deg = -90.0;
  double stop_deg = 90.0;
  double step_deg = 0.1;

  int size() const;  // floor((stop-start)/step) + 1
  // Clamped so accumulated rounding (fused multiply-add contraction
  // included) can never push the last point past stop_deg.
  double angle(int i) const { return std::min(start_deg + i * step_deg, stop_deg); }
  std::vector<double> angles() const;
  void validate() const;  // throws DomainError
};

struct PseudoSpectrum {
  AngularGrid grid;
  RealVec values;  // strictly positive, finite
  Method method = Method::kMusicFull;
};

// Floor applied to the denominator before inversion, scaled by M so a
// noise-free exact hit cannot produce inf.
inline double spectrum_floor(int m) { return 1e-18 * m; }

// P(theta) = 1 / (||a||^2 - ||U_K^H a||^2). The basis must be orthonormal
// (defect above 1e-4 throws OrthonormalityError).
PseudoSpectrum spectrum_from_signal_basis(const Mat& basis, const AngularGrid& grid,
                                          const ArrayGeometry& g, Method tag);

// P(theta) = 1 / ||U_e^H a||^2 over a noise basis with M - K columns.
PseudoSpectrum spectrum_from_noise_basis(const Mat& noise_basis, const AngularGrid& grid,
                                         const ArrayGeometry& g, Method tag);

// P(theta) = 1 / (a^H W a) for the matrix-inverse kernel.
PseudoSpectrum spectrum_from_inverse_weights(const Mat& w, const AngularGrid& grid,
                                             const ArrayGeometry& g);

struct DoaEstimate {
  std::vector<double> angles_deg;   // ascending
  std::vector<double> peak_values;  // aligned with angles_deg
  bool shortfall = false;           // fewer than the requested peaks found
};

// Up to k interior local maxima. Plateaus report their lower-middle index;
// grid endpoints are never peaks. Candidates are ranked by value (ties to
// the lower angle) and greedily accepted subject to a minimum angular
// separation, default 2 * step. Finding fewer than k sets shortfall
// instead of throwing.
DoaEstimate find_peaks(const PseudoSpectrum& spectrum, int k,
                       double min_sep_deg = -1.0);

// Root-mean-square error between two angle sets of equal size, paired in
// sorted order. Throws DimensionError on size mismatch.
double doa_rmse(std::vector<double> estimated_deg, std::vector<double> true_deg);

}  // namespace rmusic
