#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rmusic/numerics.hpp"

namespace rmusic {

// Uniform linear array. spacing_ratio is element spacing over wavelength;
// the classic half-wavelength array is spacing_ratio = 0.5.
struct ArrayGeometry {
  int num_elements = 0;
  double spacing_ratio = 0.5;

  void validate() const;  // throws DomainError
};

// Linear FMCW chirp s(t) = exp(j*(w_s*t + mu*t^2/2)), mu = w_B / T_sym.
// Angular frequencies in rad/s, period in seconds.
struct FmcwParams {
  double init_freq_rad_s = 2.0e3 * kPi;   // w_s = 2*pi*1e3
  double bandwidth_rad_s = 2.0e6 * kPi;   // w_B = 2*pi*1e6
  double symbol_period_s = 1.0e-3;        // T_sym

  double chirp_rate() const { return bandwidth_rad_s / symbol_period_s; }
  void validate() const;  // throws DomainError
};

struct Target {
  double doa_deg = 0.0;
  Complex gain{1.0, 0.0};
  std::optional<double> toa_s;  // unused by the narrowband snapshot model
};

// A measurement scene: targets impinging on the array, observed over
// num_snapshots snapshots at the given SNR.
//
// SNR convention: snr_db is per-target signal power over noise power,
//   sigma_n^2 = mean_k |gain_k|^2 / 10^(snr_db/10).
// With the default unit-magnitude gains this reduces to
// sigma_n^2 = 10^(-snr_db/10) regardless of the number of targets.
struct Scene {
  ArrayGeometry array;
  std::vector<Target> targets;
  double snr_db = 0.0;
  int num_snapshots = 0;

  int num_targets() const { return static_cast<int>(targets.size()); }
  void validate() const;  // throws DomainError / DimensionError
};

// Complex chirp sample at time t. t must lie in [0, T_sym].
Complex fmcw_chirp(const FmcwParams& p, double t);

// Steering vector a(theta), a_m = exp(j * 2*pi * spacing_ratio * m * sin(theta)),
// m = 0 .. M-1. theta_deg must lie in [-90, 90]; scene targets are kept
// strictly inside so the endpoints stay free for scan grids.
Vec steering_vector(const ArrayGeometry& g, double theta_deg);

// Columns are steering vectors for each angle, in the given order.
Mat steering_matrix(const ArrayGeometry& g, const std::vector<double>& angles_deg);

// Noise power implied by the scene's SNR convention (see Scene).
double noise_variance(const Scene& scene);

// Snapshot matrix Y = A * Phi + W, M x N.
//   A:   M x K steering matrix of the scene targets
//   Phi: K x N source amplitudes, row k = gain_k * phi_k(n) with
//        phi_k(n) ~ CN(0,1) i.i.d. (random per-snapshot modulation)
//   W:   M x N noise, entries ~ CN(0, sigma_n^2)
// Deterministic in (scene, seed): Phi uses seed stream 0, W stream 1,
// both filled column-major, real part drawn before imaginary.
Mat generate_snapshots(const Scene& scene, std::uint64_t seed);

// K angles in [lo_deg, hi_deg], pairwise separation >= min_sep_deg, sorted
// ascending. Distribution is uniform over the constraint set (gap
// construction: K uniforms on the separation-reduced span, sorted, then
// spread back out). Throws DomainError if the band cannot hold K angles.
std::vector<double> draw_angles(int k, double lo_deg, double hi_deg,
                                double min_sep_deg, std::uint64_t seed);

// Scene with draw_angles DoAs and unit-magnitude gains of uniform random
// phase. Angle draw uses seed stream 0, phases stream 1.
Scene make_random_scene(int num_elements, int num_targets, int num_snapshots,
                        double snr_db, double lo_deg, double hi_deg,
                        double min_sep_deg, std::uint64_t seed);

}  // namespace rmusic
