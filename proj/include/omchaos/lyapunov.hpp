#pragma once

#include <functional>
#include <vector>

#include "omchaos/integrate.hpp"
#include "omchaos/model.hpp"
#include "omchaos/params.hpp"

namespace omchaos {

struct LyapunovResult {
  double exponent = 0.0;                           // 1/s
  std::vector<std::pair<double, double>> trace;    // (t, running estimate)
};

// Largest Lyapunov exponent of the deterministic flow by tangent-vector
// renormalization: the state and one tangent vector are advanced together
// (RK4 on the flow, matching RK4 on the variational equation), the tangent is
// renormalized every renorm_interval seconds and the log stretch accumulated.
// noise_sigma is ignored here; the exponent is a property of the drift.
LyapunovResult lyapunov_benettin(const SystemParams& p, const State& s0, double t_total,
                                 double renorm_interval);

struct MapLyapunovResult {
  double exponent = 0.0;  // nats per iteration
  std::size_t clamped_terms = 0;
};

// Mean of ln|f'(x_k)| along the orbit after burn-in. Derivatives whose
// magnitude falls below derivative_floor are clamped to it and counted.
MapLyapunovResult map_lyapunov(const std::function<double(double)>& map,
                               const std::function<double(double)>& derivative, double x0,
                               std::size_t n, std::size_t burn_in = 1000,
                               double derivative_floor = 1e-12);

// Convenience wrapper for the logistic map.
MapLyapunovResult logistic_lyapunov(double r, double x0, std::size_t n,
                                    std::size_t burn_in = 1000);

}  // namespace omchaos
