#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "omchaos/types.hpp"

namespace omchaos {

// Shortest round-trip decimal form, locale independent.
std::string format_double(double x);

// FNV-1a 64-bit, hex encoded.
std::uint64_t fnv1a(const std::string& s);
std::string fnv1a_hex(const std::string& s);

struct LabeledSeries {
  TimeSeries series;
  std::vector<int> labels;  // per-sample, 1 = chaotic epoch
};

// Trajectory CSV: header `t,intensity,x,v`.
void write_trajectory_csv(const std::filesystem::path& path, double t0, double fs,
                          const std::vector<double>& intensity, const std::vector<double>& x,
                          const std::vector<double>& v);

struct TrajectoryCsv {
  double t0 = 0.0;
  double fs = 0.0;
  std::vector<double> intensity, x, v;
};
TrajectoryCsv read_trajectory_csv(const std::filesystem::path& path);

// Series CSV: header `t,value,label` (label column optional on read).
void write_series_csv(const std::filesystem::path& path, const TimeSeries& ts,
                      const std::vector<int>* labels = nullptr);
LabeledSeries read_series_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace omchaos
