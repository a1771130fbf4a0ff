#include "rmusic/array_sim.hpp"

#include <algorithm>
#include <cmath>

#include "rmusic/errors.hpp"
#include "rmusic/rng.hpp"

namespace rmusic {

void ArrayGeometry::validate() const {
  if (num_elements < 2) throw DomainError("array needs at least 2 elements");
  if (!(spacing_ratio > 0.0) || spacing_ratio > 0.5)
    throw DomainError("spacing_ratio must lie in (0, 0.5]");
}

void FmcwParams::validate() const {
  if (!(init_freq_rad_s > 0.0)) throw DomainError("init_freq_rad_s must be positive");
  if (!(bandwidth_rad_s > 0.0)) throw DomainError("bandwidth_rad_s must be positive");
  if (!(symbol_period_s > 0.0)) throw DomainError("symbol_period_s must be positive");
}

void Scene::validate() const {
  array.validate();
  const int k = num_targets();
  if (k < 1) throw DomainError("scene needs at least one target");
  if (k >= array.num_elements)
    throw DimensionError("target count must be below the element count");
  if (num_snapshots < 1) throw DomainError("num_snapshots must be positive");
  if (!std::isfinite(snr_db)) throw DomainError("snr_db must be finite");
  for (const Target& t : targets) {
    if (!(t.doa_deg > -90.0) || !(t.doa_deg < 90.0))
      throw DomainError("target DoA must lie strictly inside (-90, 90) degrees");
    if (!(std::abs(t.gain) > 0.0)) throw DomainError("target gain must be nonzero");
  }
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i].doa_deg == targets[j].doa_deg)
        throw DomainError("target DoAs must be pairwise distinct");
}

Complex fmcw_chirp(const FmcwParams& p, double t) {
  p.validate();
  if (!(t >= 0.0) || t > p.symbol_period_s)
    throw DomainError("chirp time must lie in [0, symbol_period_s]");
  const double phase = p.init_freq_rad_s * t + 0.5 * p.chirp_rate() * t * t;
  return Complex{std::cos(phase), std::sin(phase)};
}

Vec steering_vector(const ArrayGeometry& g, double theta_deg) {
  g.validate();
  if (!(theta_deg >= -90.0) || theta_deg > 90.0)
    throw DomainError("steering angle must lie in [-90, 90] degrees");
  const double omega = 2.0 * kPi * g.spacing_ratio * std::sin(theta_deg * kPi / 180.0);
  Vec a(g.num_elements);
  for (int m = 0; m < g.num_elements; ++m)
    a(m) = Complex{std::cos(omega * m), std::sin(omega * m)};
  return a;
}

Mat steering_matrix(const ArrayGeometry& g, const std::vector<double>& angles_deg) {
  Mat a(g.num_elements, static_cast<Eigen::Index>(angles_deg.size()));
  for (std::size_t j = 0; j < angles_deg.size(); ++j)
    a.col(static_cast<Eigen::Index>(j)) = steering_vector(g, angles_deg[j]);
  return a;
}

double noise_variance(const Scene& scene) {
  double mean_power = 0.0;
  for (const Target& t : scene.targets) mean_power += std::norm(t.gain);
  mean_power /= static_cast<double>(scene.num_targets());
  return mean_power / std::pow(10.0, scene.snr_db / 10.0);
}

namespace {

// Column-major CN(0, variance) fill, real part before imaginary.
Mat complex_gaussian(int rows, int cols, double variance, std::uint64_t seed) {
  Engine eng(seed);
  const double scale = std::sqrt(variance / 2.0);
  Mat x(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = scale * eng.normal();
      const double im = scale * eng.normal();
      x(i, j) = Complex{re, im};
    }
  return x;
}

}  // namespace

Mat generate_snapshots(const Scene& scene, std::uint64_t seed) {
  scene.validate();
  const int k = scene.num_targets();
  const int n = scene.num_snapshots;

  std::vector<double> angles(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) angles[static_cast<std::size_t>(i)] = scene.targets[static_cast<std::size_t>(i)].doa_deg;
  const Mat a = steering_matrix(scene.array, angles);

  Mat phi = complex_gaussian(k, n, 1.0, derive_seed(seed, 0));
  for (int i = 0; i < k; ++i) phi.row(i) *= scene.targets[static_cast<std::size_t>(i)].gain;

  const Mat w = complex_gaussian(scene.array.num_elements, n, noise_variance(scene),
                                 derive_seed(seed, 1));
  return a * phi + w;
}

std::vector<double> draw_angles(int k, double lo_deg, double hi_deg,
                                double min_sep_deg, std::uint64_t seed) {
  if (k < 1) throw DomainError("need at least one angle");
  if (!(min_sep_deg >= 0.0)) throw DomainError("min_sep_deg must be non-negative");
  const double span = hi_deg - lo_deg - (k - 1) * min_sep_deg;
  if (!(span >= 0.0))
    throw DomainError("band cannot hold the requested angles at this separation");

  Engine eng(seed);
  std::vector<double> u(static_cast<std::size_t>(k));
  for (double& x : u) x = eng.uniform(0.0, span);
  std::sort(u.begin(), u.end());
  for (int i = 0; i < k; ++i) u[static_cast<std::size_t>(i)] += lo_deg + i * min_sep_deg;
  return u;
}

Scene make_random_scene(int num_elements, int num_targets, int num_snapshots,
                        double snr_db, double lo_deg, double hi_deg,
                        double min_sep_deg, std::uint64_t seed) {
  Scene scene;
  scene.array.num_elements = num_elements;
  scene.snr_db = snr_db;
  scene.num_snapshots = num_snapshots;

  const std::vector<double> angles =
      draw_angles(num_targets, lo_deg, hi_deg, min_sep_deg, derive_seed(seed, 0));
  Engine eng(derive_seed(seed, 1));
  scene.targets.reserve(angles.size());
  for (double theta : angles) {
    const double phase = eng.uniform(0.0, 2.0 * kPi);
    scene.targets.push_back(
        Target{theta, Complex{std::cos(phase), std::sin(phase)}, std::nullopt});
  }
  scene.validate();
  return scene;
}

}  // namespace rmusic
