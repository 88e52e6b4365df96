#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace omchaos {

// Uniformly sampled scalar series. t0 is the absolute time of values[0].
struct TimeSeries {
  double t0 = 0.0;
  double fs = 0.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double duration() const { return fs > 0.0 ? static_cast<double>(values.size()) / fs : 0.0; }
  double time_at(std::size_t i) const { return t0 + static_cast<double>(i) / fs; }
};

// Precondition violations. Maps to CLI exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical blow-up during integration. Maps to CLI exit code 3.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double t_blowup)
      : std::runtime_error(what), t_blowup_s(t_blowup) {}
  double t_blowup_s;
};

// Not enough data to produce the requested estimate. Maps to CLI exit code 4.
class InsufficientDataError : public std::runtime_error {
 public:
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

}  // namespace omchaos
