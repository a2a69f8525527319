#pragma once

// Equilateral (2l+1)-stars inscribed in P_n: closed paths of 2l+1 equal chords
// winding l times around the polygon, and the scales at which they exist.

#include <cstddef>
#include <string>
#include <vector>

#include "polyrips/geometry.hpp"

namespace polyrips {

// Sum of the geodesic steps of 2l+1 iterations of the step map, minus l.
// Zero exactly when a star of side r closes up at basepoint t; increasing in r.
double star_defect(int n, int l, double t, double r);

struct StarSolution {
  int n = 0;
  int l = 0;
  double basepoint = 0.0;
  double side = 0.0;
  std::vector<double> vertices;  // 2l+1 arc coordinates in traversal order
  bool at_threshold = false;     // side equals r_n (one-sided limit)
};

// Bisection on the scale for a zero of star_defect. The optional bracket must
// contain the root; the default is (0, r_n].
StarSolution inscribe_star(int n, int l, double t);
StarSolution inscribe_star(int n, int l, double t, double lo, double hi);

// Star side through barycentric position `bary` on an edge, when (2l+1) | n.
double closed_form_side(int n, int l, double bary);

struct MonotonicityReport {
  bool pass = false;
  double worst_violation = 0.0;
  std::size_t vertex_crossings = 0;
  std::size_t midpoint_crossings = 0;
  std::size_t expected_crossings = 0;  // lcm(n, 2l+1) of each kind
  double vertex_spread = 0.0;          // range of star sides over vertex crossings
  double midpoint_spread = 0.0;
  bool interleaved = false;
  double grid_min = 0.0;  // extrema of the sampled side function
  double grid_max = 0.0;
  std::string detail;  // first failure, empty on success
};

// Samples the side function on `grid` basepoints and checks that crossings of
// each kind share one value, that they alternate, and that the side function is
// monotone between neighbouring crossings.
MonotonicityReport validate_monotonic(int n, int l, int grid);

struct Thresholds {
  int n = 0;
  int l = 0;
  double s = 0.0;  // least star side
  double t = 0.0;  // greatest star side
  bool exact = false;      // closed form, (2l+1) | n
  bool certified = false;  // closed form, or the monotonicity scan passed
  bool t_at_threshold = false;
  std::string warning;
};

inline constexpr int kThresholdGrid = 4000;

// Requires n >= 4l+2. Without divisibility the sides are taken at the midpoint
// and vertex crossings after a monotonicity scan; if that scan fails, the grid
// extrema are reported with certified = false and a warning.
Thresholds thresholds(int n, int l, int grid = kThresholdGrid);

// Basepoints whose star passes through a polygon vertex (resp. edge midpoint),
// sorted; lcm(n, 2l+1) of each.
std::vector<double> vertex_crossings(int n, int l);
std::vector<double> midpoint_crossings(int n, int l);

enum class CrossingStatus { interior, at_minimum, at_maximum, out_of_range };

struct CrossingSet {
  CrossingStatus status = CrossingStatus::out_of_range;
  std::vector<double> points;  // sorted arc coordinates
};

// Basepoints whose star side equals r. For s < r < t these are 2 lcm(n, 2l+1)
// points alternating between the ends of fast and slow intervals. At r = s or
// r = t the midpoint or vertex crossings are returned with the matching status.
CrossingSet crossings(int n, int l, double r);

// Number of distinct stars of side r (each star has 2l+1 basepoints).
int count_stars(int n, int l, double r);

struct Coincidence {
  int vertices = 0;   // star vertices at polygon vertices
  int midpoints = 0;  // star vertices at edge midpoints
  int total() const { return vertices + midpoints; }
};

inline constexpr double kCoincidenceTol = 1e-9;

Coincidence coincidence(const StarSolution& star);

struct NapoleonCheck {
  double product = 0.0;    // |RQ| |VU|
  double reference = 0.0;  // |AB|^2 sin(ABC) sin(BAC) / (sin(ACB) sin(pi/3))
  std::vector<long> edges;  // polygon edges holding the three star vertices
};

// For l = 1: extends the three edges holding the star at basepoint t to a
// triangle ABC, circumscribes the equilateral triangle TUV with sides parallel
// to the star PQR, and returns both sides of the product identity.
NapoleonCheck napoleon_product_check(int n, double t);

}  // namespace polyrips
