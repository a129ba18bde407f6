#pragma once

#include <filesystem>
#include <vector>

#include "fibersim/core/types.hpp"

namespace fibersim::harness {

/// One sampled body state, SI units.
struct Sample {
  double t = 0.0;
  int body = 0;
  Vec3 x = Vec3::Zero();
  Vec3 u = Vec3::Zero();
  Vec3 w = Vec3::Zero();
};

using TimeSeries = std::vector<Sample>;

/// Samples of one body in time order.
TimeSeries body_series(const TimeSeries& series, int body);

/// Columns t_s, body_id, x, y, z, ux, uy, uz, wx, wy, wz with round-trip precision.
void write_csv(const std::filesystem::path& path, const TimeSeries& series);
TimeSeries read_csv(const std::filesystem::path& path);

}  // namespace fibersim::harness
