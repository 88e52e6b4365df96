#include "omchaos/embed.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace omchaos {

PointCloud delay_embed(const TimeSeries& ts, std::size_t tau, std::size_t m) {
  require(m >= 1, "delay_embed: dimension must be >= 1");
  require(tau >= 1, "delay_embed: tau must be >= 1");
  const std::size_t n = ts.values.size();
  require((m - 1) * tau < n, "delay_embed: (m-1)*tau must be smaller than the series length");

  const std::size_t n_pts = n - (m - 1) * tau;
  PointCloud cloud;
  cloud.dim = m;
  cloud.pts.resize(n_pts * m);
  for (std::size_t k = 0; k < n_pts; ++k)
    for (std::size_t d = 0; d < m; ++d) cloud.pts[k * m + d] = ts.values[k + d * tau];
  return cloud;
}

std::size_t autocorr_zero_lag(const TimeSeries& ts) {
  const std::size_t n = ts.values.size();
  require(n >= 8, "autocorr_zero_lag: series too short");
  double mean = 0.0;
  for (double v : ts.values) mean += v;
  mean /= static_cast<double>(n);

  double c0 = 0.0;
  for (double v : ts.values) c0 += (v - mean) * (v - mean);
  if (c0 <= 0.0) return n / 4;

  for (std::size_t lag = 1; lag < n / 2; ++lag) {
    double c = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i)
      c += (ts.values[i] - mean) * (ts.values[i + lag] - mean);
    if (c <= 0.0) return lag;
  }
  return n / 4;
}

PointCloud plane_cloud(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), "plane_cloud: coordinate arrays must have equal length");
  PointCloud cloud;
  cloud.dim = 2;
  cloud.pts.resize(2 * x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    cloud.pts[2 * k] = x[k];
    cloud.pts[2 * k + 1] = y[k];
  }
  return cloud;
}

namespace {

struct GridFrame {
  double x_lo, x_hi, y_lo, y_hi;
  double x_scale, y_scale;
  std::size_t bins;

  std::size_t cell(double x, double y) const {
    auto clamp_idx = [this](double r) {
      auto i = static_cast<long long>(r);
      if (i < 0) i = 0;
      if (i >= static_cast<long long>(bins)) i = static_cast<long long>(bins) - 1;
      return static_cast<std::size_t>(i);
    };
    return clamp_idx((x - x_lo) * x_scale) * bins + clamp_idx((y - y_lo) * y_scale);
  }
};

GridFrame fit_frame(const PointCloud& points, std::size_t bins) {
  require(points.dim == 2, "density_grid: point cloud must be two-dimensional");
  require(points.size() > 0, "density_grid: point set is empty");
  require(bins >= 2, "density_grid: bins must be >= 2");

  double x_lo = points.at(0, 0), x_hi = x_lo, y_lo = points.at(0, 1), y_hi = y_lo;
  for (std::size_t k = 0; k < points.size(); ++k) {
    x_lo = std::min(x_lo, points.at(k, 0));
    x_hi = std::max(x_hi, points.at(k, 0));
    y_lo = std::min(y_lo, points.at(k, 1));
    y_hi = std::max(y_hi, points.at(k, 1));
  }
  auto pad = [](double& lo, double& hi) {
    double width = hi - lo;
    if (width <= 0.0) width = std::max(1.0, std::fabs(lo));  // degenerate axis
    lo -= 0.05 * width;
    hi += 0.05 * width;
  };
  pad(x_lo, x_hi);
  pad(y_lo, y_hi);

  GridFrame f{x_lo, x_hi, y_lo, y_hi, 0.0, 0.0, bins};
  f.x_scale = static_cast<double>(bins) / (x_hi - x_lo);
  f.y_scale = static_cast<double>(bins) / (y_hi - y_lo);
  return f;
}

DensityGrid from_counts(const GridFrame& f, std::vector<std::uint64_t>&& counts,
                        std::size_t total) {
  DensityGrid grid;
  grid.bins = f.bins;
  grid.x_lo = f.x_lo;
  grid.x_hi = f.x_hi;
  grid.y_lo = f.y_lo;
  grid.y_hi = f.y_hi;
  grid.pmf.resize(counts.size());
  const double inv = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < counts.size(); ++i)
    grid.pmf[i] = static_cast<double>(counts[i]) * inv;
  return grid;
}

}  // namespace

DensityGrid density_grid_serial(const PointCloud& points, std::size_t bins) {
  const GridFrame f = fit_frame(points, bins);
  std::vector<std::uint64_t> counts(bins * bins, 0);
  for (std::size_t k = 0; k < points.size(); ++k)
    ++counts[f.cell(points.at(k, 0), points.at(k, 1))];
  return from_counts(f, std::move(counts), points.size());
}

DensityGrid density_grid(const PointCloud& points, std::size_t bins) {
  const GridFrame f = fit_frame(points, bins);
  const std::size_t n = points.size();
  std::vector<std::uint64_t> counts(bins * bins, 0);

#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
  std::vector<std::vector<std::uint64_t>> partial(max_threads);
#pragma omp parallel
  {
    const int tid = omp_get_thread_num();
    partial[tid].assign(bins * bins, 0);
#pragma omp for schedule(static)
    for (long long k = 0; k < static_cast<long long>(n); ++k)
      ++partial[tid][f.cell(points.at(k, 0), points.at(k, 1))];
  }
  // Integer merge; order cannot change the result.
  for (const auto& part : partial) {
    if (part.empty()) continue;
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += part[i];
  }
#else
  for (std::size_t k = 0; k < n; ++k) ++counts[f.cell(points.at(k, 0), points.at(k, 1))];
#endif
  return from_counts(f, std::move(counts), n);
}

}  // namespace omchaos
