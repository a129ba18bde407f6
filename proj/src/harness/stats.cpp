#include "fibersim/harness/stats.hpp"

#include <algorithm>
#include <cmath>

#include "fibersim/core/error.hpp"

namespace fibersim::harness {

TerminalStats terminal_stats(const std::vector<double>& values, double window_fraction,
                             const ReynoldsScale& scale) {
  require(window_fraction > 0.0 && window_fraction <= 1.0, ErrorCode::InvalidArgument,
          "window fraction must lie in (0, 1]");
  const auto n = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(values.size()) - 1e-9));
  require(n >= 10, ErrorCode::TooFewSamples,
          "terminal window holds " + std::to_string(n) + " samples, at least 10 are needed");
  const auto first = values.end() - static_cast<std::ptrdiff_t>(n);
  TerminalStats s;
  s.samples = n;
  double sum = 0.0;
  for (auto it = first; it != values.end(); ++it) sum += *it;
  s.mean = sum / static_cast<double>(n);
  const auto [lo, hi] = std::minmax_element(first, values.end());
  s.fluctuation = s.mean != 0.0 ? (*hi - *lo) / std::abs(s.mean) : 0.0;
  s.reynolds = reynolds_number(std::abs(s.mean) * scale.speed_factor, scale.length, scale.fluid);
  return s;
}

TumblingTrace tumbling_trace(const TimeSeries& series) {
  const TimeSeries a = body_series(series, 0);
  const TimeSeries b = body_series(series, 1);
  require(a.size() == b.size() && !a.empty(), ErrorCode::InvalidArgument,
          "tumbling trace needs two bodies sampled at the same times");
  const bool b_right = b.front().x.x() >= a.front().x.x();
  const TimeSeries& right = b_right ? b : a;
  const TimeSeries& left = b_right ? a : b;
  TumblingTrace tr;
  for (std::size_t i = 0; i < right.size(); ++i) {
    tr.t.push_back(right[i].t);
    tr.x.push_back(0.5 * (right[i].x.x() - left[i].x.x()));
    tr.z.push_back(right[i].x.z());
    tr.ux.push_back(right[i].u.x());
    tr.uz.push_back(right[i].u.z());
  }
  return tr;
}

namespace {

double longest_monotone_span(const TumblingTrace& tr) {
  double best = 0.0;
  std::size_t start = 0;
  int dir = 0;
  for (std::size_t i = 1; i < tr.x.size(); ++i) {
    const double d = tr.x[i] - tr.x[i - 1];
    const int s = d > 0 ? 1 : (d < 0 ? -1 : dir);
    if (s != dir && dir != 0) start = i - 1;
    dir = s;
    best = std::max(best, tr.t[i] - tr.t[start]);
  }
  return best;
}

}  // namespace

TumblingMetrics tumbling_metrics(const TumblingTrace& tr, bool first_sample_is_start) {
  const std::size_t n = tr.t.size();
  require(tr.x.size() == n && tr.z.size() == n && tr.ux.size() == n && tr.uz.size() == n,
          ErrorCode::InvalidArgument, "tumbling trace columns differ in length");

  TumblingMetrics m;
  for (std::size_t i = 0; i < n; ++i) m.orbit.push_back({tr.x[i], tr.ux[i]});

  // Boundary = (time, height, first sample index at or after it).
  struct Boundary {
    double t, z;
    std::size_t index;
  };
  std::vector<Boundary> bounds;
  if (first_sample_is_start && n > 0) bounds.push_back({tr.t[0], tr.z[0], 0});
  bool separated = false;
  for (std::size_t i = 1; i < n; ++i) {
    if (tr.ux[i - 1] > 0.0 && tr.ux[i] <= 0.0) separated = true;
    if (separated && tr.ux[i - 1] < 0.0 && tr.ux[i] >= 0.0) {
      const double f = -tr.ux[i - 1] / (tr.ux[i] - tr.ux[i - 1]);
      bounds.push_back({tr.t[i - 1] + f * (tr.t[i] - tr.t[i - 1]),
                        tr.z[i - 1] + f * (tr.z[i] - tr.z[i - 1]), i});
      separated = false;
    }
  }

  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    const Boundary& b0 = bounds[k];
    const Boundary& b1 = bounds[k + 1];
    TumblingPeriod p;
    p.t_start = b0.t;
    p.t_end = b1.t;
    p.period = b1.t - b0.t;
    p.distance = b1.z - b0.z;
    p.speed = p.distance / p.period;
    p.uz_min = p.ux_min = p.x_min = 1e300;
    p.uz_max = p.ux_max = p.x_max = -1e300;
    for (std::size_t i = b0.index; i < b1.index; ++i) {
      p.uz_min = std::min(p.uz_min, tr.uz[i]);
      p.uz_max = std::max(p.uz_max, tr.uz[i]);
      p.ux_min = std::min(p.ux_min, tr.ux[i]);
      p.ux_max = std::max(p.ux_max, tr.ux[i]);
      p.x_min = std::min(p.x_min, tr.x[i]);
      p.x_max = std::max(p.x_max, tr.x[i]);
    }
    m.periods.push_back(p);
  }
  if (m.periods.empty()) {
    fail(ErrorCode::NoCompletePeriod,
         "no complete tumbling period in " + std::to_string(n) +
             " samples; longest monotone span of x lasts " + std::to_string(longest_monotone_span(tr)) + " s");
  }
  return m;
}

std::vector<Delta> compare_periods(const TumblingPeriod& lbm, const TumblingPeriod& sbf) {
  const auto d = [](const char* name, double a, double b) {
    return Delta{name, a, b, (a - b) / b};
  };
  return {d("D*", lbm.distance, sbf.distance), d("T*", lbm.period, sbf.period),
          d("U*", lbm.speed, sbf.speed),       d("uz_min", lbm.uz_min, sbf.uz_min),
          d("uz_max", lbm.uz_max, sbf.uz_max), d("ux_min", lbm.ux_min, sbf.ux_min),
          d("ux_max", lbm.ux_max, sbf.ux_max)};
}

}  // namespace fibersim::harness
