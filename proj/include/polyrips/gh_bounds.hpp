#pragma once

// Bounds on the Gromov-Hausdorff distance between P_n and the unit circle.

#include <optional>

namespace polyrips {

// Hausdorff distance between P_n and the circle it is inscribed in.
double hausdorff_polygon_circle(int n);

// Half the bottleneck distance between the single H_1 bars of P_n and of the
// circle (strict convention). Needs 3 | n.
double ph_lower_bound(int n);

// The same bound evaluated through the oracle's bottleneck distance.
double ph_lower_bound_by_matching(int n);

inline constexpr int kMetricGrid = 10000;

struct MetricBounds {
  double weak = 0.0;           // half the distance between the images of the two metrics
  double strong_radial = 0.0;  // what the radial correspondence can certify at best
  double resolution = 0.0;     // 2 / grid
};

MetricBounds metric_lower_bound(int n, int grid = kMetricGrid);

struct GHReport {
  int n = 0;
  double hausdorff_upper = 0.0;
  std::optional<double> ph_lower;  // only when 3 | n
  MetricBounds metric;
  double lower = 0.0;  // best certified lower bound
  double upper = 0.0;
  bool ph_dominates = false;  // ph_lower exceeds strong_radial
};

GHReport gh_report(int n, int grid = kMetricGrid);

}  // namespace polyrips
