#include "rmusic/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "rmusic/errors.hpp"

namespace rmusic {

void AngularGrid::validate() const {
  if (!(step_deg > 0.0)) throw DomainError("grid step must be positive");
  if (!(start_deg < stop_deg)) throw DomainError("grid start must precede stop");
  if (start_deg < -90.0 || stop_deg > 90.0)
    throw DomainError("grid must lie within [-90, 90] degrees");
}

int AngularGrid::size() const {
  validate();
  return static_cast<int>(std::floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1;
}

std::vector<double> AngularGrid::angles() const {
  const int n = size();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = angle(i);
  return out;
}

namespace {

RealVec invert_clamped(RealVec denom, int m) {
  const double floor_v = spectrum_floor(m);
  for (Eigen::Index i = 0; i < denom.size(); ++i)
    denom(i) = 1.0 / std::max(denom(i), floor_v);
  return denom;
}

}  // namespace

PseudoSpectrum spectrum_from_signal_basis(const Mat& basis, const AngularGrid& grid,
                                          const ArrayGeometry& g, Method tag) {
  grid.validate();
  if (basis.rows() != g.num_elements)
    throw DimensionError("basis row count must match the array size");
  if (basis.cols() < 1 || basis.cols() >= basis.rows())
    throw DimensionError("signal basis must have 1 <= k < m columns");
  if (orthonormality_defect(basis) > 1e-4)
    throw OrthonormalityError("signal basis has lost orthonormality");

  const Mat a = steering_matrix(g, grid.angles());
  const Mat proj = basis.adjoint() * a;  // k x L
  RealVec denom = (a.colwise().squaredNorm() - proj.colwise().squaredNorm()).transpose();

  PseudoSpectrum out;
  out.grid = grid;
  out.values = invert_clamped(std::move(denom), g.num_elements);
  out.method = tag;
  return out;
}

PseudoSpectrum spectrum_from_noise_basis(const Mat& noise_basis, const AngularGrid& grid,
                                         const ArrayGeometry& g, Method tag) {
  grid.validate();
  if (noise_basis.rows() != g.num_elements)
    throw DimensionError("noise basis row count must match the array size");
  if (noise_basis.cols() < 1 || noise_basis.cols() >= noise_basis.rows())
    throw DimensionError("noise basis must have 1 <= m-k < m columns");

  const Mat a = steering_matrix(g, grid.angles());
  const Mat proj = noise_basis.adjoint() * a;  // (m-k) x L
  RealVec denom = proj.colwise().squaredNorm().transpose();

  PseudoSpectrum out;
  out.grid = grid;
  out.values = invert_clamped(std::move(denom), g.num_elements);
  out.method = tag;
  return out;
}

PseudoSpectrum spectrum_from_inverse_weights(const Mat& w, const AngularGrid& grid,
                                             const ArrayGeometry& g) {
  grid.validate();
  if (w.rows() != w.cols() || w.rows() != g.num_elements)
    throw DimensionError("weight matrix must be square and match the array size");

  const Mat a = steering_matrix(g, grid.angles());
  const Mat wa = w * a;
  RealVec denom(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    denom(j) = a.col(j).dot(wa.col(j)).real();  // a^H W a

  PseudoSpectrum out;
  out.grid = grid;
  out.values = invert_clamped(std::move(denom), g.num_elements);
  out.method = Method::kInverse;
  return out;
}

DoaEstimate find_peaks(const PseudoSpectrum& spectrum, int k, double min_sep_deg) {
  if (k < 1) throw DomainError("peak count must be positive");
  const RealVec& v = spectrum.values;
  const Eigen::Index n = v.size();
  if (n != spectrum.grid.size())
    throw DimensionError("spectrum length does not match its grid");
  if (n < 3) throw DomainError("peak search needs at least 3 grid points");
  if (min_sep_deg < 0.0) min_sep_deg = 2.0 * spectrum.grid.step_deg;

  // Maximal runs of equal value; a run strictly above both neighbors is a
  // peak at its lower-middle index. Runs touching an endpoint never count.
  std::vector<Eigen::Index> candidates;
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && v(j + 1) == v(i)) ++j;
    if (i > 0 && j < n - 1 && v(i) > v(i - 1) && v(j) > v(j + 1))
      candidates.push_back((i + j) / 2);
    i = j + 1;
  }

  std::sort(candidates.begin(), candidates.end(),
            [&](Eigen::Index a, Eigen::Index b) {
              if (v(a) != v(b)) return v(a) > v(b);
              return a < b;  // ties resolve to the lower angle
            });

  std::vector<Eigen::Index> kept;
  for (Eigen::Index c : candidates) {
    if (static_cast<int>(kept.size()) == k) break;
    const double angle = spectrum.grid.angle(static_cast<int>(c));
    bool clear = true;
    for (Eigen::Index kc : kept)
      if (std::abs(angle - spectrum.grid.angle(static_cast<int>(kc))) <
          min_sep_deg - 1e-12) {
        clear = false;
        break;
      }
    if (clear) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());

  DoaEstimate out;
  out.shortfall = static_cast<int>(kept.size()) < k;
  out.angles_deg.reserve(kept.size());
  out.peak_values.reserve(kept.size());
  for (Eigen::Index c : kept) {
    out.angles_deg.push_back(spectrum.grid.angle(static_cast<int>(c)));
    out.peak_values.push_back(v(c));
  }
  return out;
}

double doa_rmse(std::vector<double> estimated_deg, std::vector<double> true_deg) {
  if (estimated_deg.size() != true_deg.size())
    throw DimensionError("angle sets must have equal size");
  if (estimated_deg.empty()) throw DimensionError("angle sets must be non-empty");
  std::sort(estimated_deg.begin(), estimated_deg.end());
  std::sort(true_deg.begin(), true_deg.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < true_deg.size(); ++i) {
    const double d = estimated_deg[i] - true_deg[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(true_deg.size()));
}

}  // namespace rmusic
