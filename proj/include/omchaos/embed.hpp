#pragma once

#include <cstddef>
#include <vector>

#include "omchaos/types.hpp"

namespace omchaos {

// Flattened point cloud, row-major: point k occupies pts[k*dim .. k*dim+dim).
struct PointCloud {
  std::size_t dim = 0;
  std::vector<double> pts;

  std::size_t size() const { return dim == 0 ? 0 : pts.size() / dim; }
  double at(std::size_t k, std::size_t d) const { return pts[k * dim + d]; }
};

// y_k = (x_k, x_{k+tau}, ..., x_{k+(m-1)tau}).
PointCloud delay_embed(const TimeSeries& ts, std::size_t tau, std::size_t m);

// First zero crossing of the autocorrelation, in samples; falls back to
// n/4 when the autocorrelation never crosses zero.
std::size_t autocorr_zero_lag(const TimeSeries& ts);

// Two-dimensional cloud from paired series (used for simulated (x, v) portraits).
PointCloud plane_cloud(const std::vector<double>& x, const std::vector<double>& y);

// Normalized occupancy histogram over a bins x bins grid; bounds fit the data
// with a 5% margin. Entries sum to 1 (up to rounding). Row-major: cell (i, j)
// covers the i-th x-interval and j-th y-interval.
struct DensityGrid {
  std::size_t bins = 0;
  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  std::vector<double> pmf;

  double at(std::size_t i, std::size_t j) const { return pmf[i * bins + j]; }
};

// Parallel histogram fill with per-thread integer counts merged in thread
// order; bit-identical to density_grid_serial.
DensityGrid density_grid(const PointCloud& points, std::size_t bins);
DensityGrid density_grid_serial(const PointCloud& points, std::size_t bins);

}  // namespace omchaos
