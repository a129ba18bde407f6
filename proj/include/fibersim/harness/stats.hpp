#pragma once

#include <string>
#include <vector>

#include "fibersim/core/fluid.hpp"
#include "fibersim/harness/series.hpp"

namespace fibersim::harness {

struct TerminalStats {
  double mean = 0.0;
  double fluctuation = 0.0;  ///< (max - min) / mean over the window
  double reynolds = 0.0;
  std::size_t samples = 0;
};

/// Speed and length entering the particle Reynolds number: Re = |mean| * speed_factor * length / nu.
struct ReynoldsScale {
  double length = 0.0;
  double speed_factor = 1.0;
  FluidProperties fluid = FluidProperties::water();
};

/// Statistics over the trailing window_fraction of the values. Throws TooFewSamples below
/// ten samples in the window.
TerminalStats terminal_stats(const std::vector<double>& values, double window_fraction,
                             const ReynoldsScale& scale);

/// One tumbling period between two gravity-aligned events.
struct TumblingPeriod {
  double t_start = 0.0;
  double t_end = 0.0;
  double distance = 0.0;  ///< D*, sedimentation distance
  double period = 0.0;    ///< T*
  double speed = 0.0;     ///< U* = D* / T*
  double uz_min = 0.0, uz_max = 0.0;
  double ux_min = 0.0, ux_max = 0.0;
  double x_min = 0.0, x_max = 0.0;
};

struct OrbitPoint {
  double x;
  double ux;
};

struct TumblingMetrics {
  std::vector<TumblingPeriod> periods;
  std::vector<OrbitPoint> orbit;

  const TumblingPeriod& last() const { return periods.back(); }
};

/// Input of tumbling_metrics: the tracked particle's lateral offset x from the pair
/// centre, its height z and its velocity components.
struct TumblingTrace {
  std::vector<double> t, x, z, ux, uz;
};

/// Tumbling trace of the right-hand body of a two-body series.
TumblingTrace tumbling_trace(const TimeSeries& series);

/// Periods start at gravity-aligned events: u_x crossing from negative to non-negative after
/// a crossing the other way (maximal separation). With first_sample_is_start the first sample
/// also opens a period. Throws NoCompletePeriod, reporting the longest monotone span of x.
TumblingMetrics tumbling_metrics(const TumblingTrace& trace, bool first_sample_is_start = true);

/// Relative difference (LBM - SBF) / SBF of one metric.
struct Delta {
  std::string metric;
  double lbm = 0.0;
  double sbf = 0.0;
  double relative = 0.0;
};

/// Relative difference of every metric of the last complete period.
std::vector<Delta> compare_periods(const TumblingPeriod& lbm, const TumblingPeriod& sbf);

}  // namespace fibersim::harness
