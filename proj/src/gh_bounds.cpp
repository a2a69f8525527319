#include "polyrips/gh_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polyrips/error.hpp"
#include "polyrips/geometry.hpp"
#include "polyrips/oracle.hpp"
#include "polyrips/stars.hpp"

namespace polyrips {

namespace {

double eccentricity(int n, double t) {
  // Distance to a point of a convex polygon is maximized at a vertex.
  const Point2<double> p = embed(n, t);
  double best = 0.0;
  for (int k = 0; k < n; ++k) best = std::max(best, (p - polygon_vertex<double>(n, k)).norm());
  return best;
}

}  // namespace

double hausdorff_polygon_circle(int n) {
  require_polygon(n);
  return 1.0 - std::cos(std::numbers::pi / n);
}

double ph_lower_bound(int n) {
  require_polygon(n);
  if (n % 3 != 0) fail(ErrorKind::not_certifiable, "PH lower bound needs 3 | n");
  return std::numbers::sqrt3 / 2.0 * (1.0 - std::cos(std::numbers::pi / n));
}

double ph_lower_bound_by_matching(int n) {
  require_polygon(n);
  if (n % 3 != 0) fail(ErrorKind::not_certifiable, "PH lower bound needs 3 | n");
  const double polygon_death = thresholds(n, 1).s;
  const double circle_death = std::numbers::sqrt3;  // side of the inscribed equilateral triangle
  return 0.5 * bottleneck({{0.0, polygon_death}}, {{0.0, circle_death}});
}

MetricBounds metric_lower_bound(int n, int grid) {
  require_polygon(n);
  if (n < 4) fail(ErrorKind::input, "metric bounds need n >= 4");
  if (grid < 1) fail(ErrorKind::input, "grid must be positive");
  MetricBounds out;
  out.resolution = 2.0 / grid;

  double diam = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) diam = std::max(diam, (polygon_vertex<double>(n, i) - polygon_vertex<double>(n, j)).norm());
  }
  // Both images are intervals starting at 0; the circle's ends at 2.
  out.weak = 0.5 * std::max(0.0, 2.0 - diam);

  // Under the radial correspondence each x is paired with a circle point whose
  // distance image is [0, 2], while the image from x is [0, ecc(x)].
  double min_ecc = 2.0;
  for (int i = 0; i < grid; ++i) min_ecc = std::min(min_ecc, eccentricity(n, static_cast<double>(i) / grid));
  for (int k = 0; k < n; ++k) {
    min_ecc = std::min(min_ecc, eccentricity(n, static_cast<double>(k) / n));
    min_ecc = std::min(min_ecc, eccentricity(n, (k + 0.5) / n));
  }
  out.strong_radial = 0.5 * (2.0 - min_ecc);
  return out;
}

GHReport gh_report(int n, int grid) {
  GHReport rep;
  rep.n = n;
  rep.hausdorff_upper = hausdorff_polygon_circle(n);
  rep.upper = rep.hausdorff_upper;
  rep.metric = metric_lower_bound(n, grid);
  if (n % 3 == 0) rep.ph_lower = ph_lower_bound(n);
  rep.lower = std::max(rep.metric.weak, rep.ph_lower.value_or(0.0));
  rep.ph_dominates = rep.ph_lower && *rep.ph_lower > rep.metric.strong_radial;
  if (rep.lower > rep.upper) fail(ErrorKind::internal, "lower bound exceeds the Hausdorff upper bound");
  return rep;
}

}  // namespace polyrips
