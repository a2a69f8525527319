#pragma once

// Regular polygon P_n inscribed in the unit circle, vertices at the n-th roots
// of unity. Points are addressed by an arc coordinate t in [0,1) that advances
// by 1/n per edge, so the counterclockwise geodesic distance is a subtraction.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "polyrips/error.hpp"

namespace polyrips {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

// Absolute tolerance for geometric equalities (distances and scales).
inline constexpr double kGeomTol = 1e-10;

enum class Convention { strict, closed };

inline const char* to_string(Convention c) { return c == Convention::strict ? "strict" : "closed"; }

// Whether a pair at distance d is joined at scale r. Ties within kGeomTol count
// as equal, so strict excludes them and closed includes them.
template <typename Scalar>
bool within_scale(Scalar d, Scalar r, Convention c) {
  return c == Convention::strict ? d < r - Scalar(kGeomTol) : d <= r + Scalar(kGeomTol);
}

template <typename Scalar>
Scalar wrap_unit(Scalar t) {
  t -= std::floor(t);
  return t >= Scalar(1) ? Scalar(0) : t;
}

// Counterclockwise geodesic distance from `from` to `to`, in [0,1). Not symmetric.
template <typename Scalar>
Scalar geodesic_dist(Scalar from, Scalar to) {
  return wrap_unit(to - from);
}

inline void require_polygon(int n) {
  if (n < 3) fail(ErrorKind::input, "polygon needs n >= 3, got " + std::to_string(n));
}

template <typename Scalar>
Point2<Scalar> polygon_vertex(int n, long k) {
  k %= n;
  if (k < 0) k += n;
  const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(k) / Scalar(n);
  return {std::cos(angle), std::sin(angle)};
}

// Edge index k and barycentric position s in [0,1] of arc coordinate t.
template <typename Scalar>
std::pair<long, Scalar> edge_position(int n, Scalar t) {
  const Scalar x = Scalar(n) * wrap_unit(t);
  long k = static_cast<long>(std::floor(x));
  if (k >= n) k = n - 1;
  return {k, x - Scalar(k)};
}

template <typename Scalar>
Point2<Scalar> embed(int n, Scalar t) {
  require_polygon(n);
  const auto [k, s] = edge_position(n, t);
  return (Scalar(1) - s) * polygon_vertex<Scalar>(n, k) + s * polygon_vertex<Scalar>(n, k + 1);
}

template <typename Scalar>
Scalar euclid_dist(int n, Scalar t1, Scalar t2) {
  return (embed(n, t1) - embed(n, t2)).norm();
}

// Cyclicity threshold r_n: the supremum of scales at which every ball meets P_n
// in a connected arc. r_3 = 0.
template <typename Scalar = double>
Scalar cyclic_threshold(int n) {
  require_polygon(n);
  if (n == 3) return Scalar(0);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  if (n % 2 == 0) return Scalar(2) * std::cos(pi / Scalar(n));
  return Scalar(1) + std::cos(Scalar(2) * pi / Scalar(n)) / std::cos(pi / Scalar(n));
}

enum class Boundary { reject, limit };

// Validates a scale against the cyclic regime. With Boundary::limit the scale
// r_n itself is accepted (as a one-sided limit) and values within kGeomTol above
// it are clamped to it.
template <typename Scalar>
Scalar checked_scale(int n, Scalar r, Boundary boundary) {
  require_polygon(n);
  if (n == 3) fail(ErrorKind::input, "r_3 = 0: no cyclic regime");
  if (!(r > Scalar(0))) fail(ErrorKind::input, "scale must be positive");
  const Scalar rn = cyclic_threshold<Scalar>(n);
  if (boundary == Boundary::limit) {
    if (r > rn + Scalar(kGeomTol)) fail(ErrorKind::non_cyclic, "cyclicity threshold exceeded");
    return r > rn ? rn : r;
  }
  if (r >= rn) fail(ErrorKind::non_cyclic, "cyclicity threshold exceeded");
  return r;
}

template <typename Scalar>
bool at_threshold(int n, Scalar r) {
  return std::abs(r - cyclic_threshold<Scalar>(n)) <= Scalar(kGeomTol);
}

template <typename Scalar>
struct Reach {
  Scalar position;  // arc coordinate of the far end, in [0,1)
  Scalar advance;   // counterclockwise geodesic length travelled, in (0,1)
};

namespace detail {

// Vertices of the most recently used polygon, per thread and scalar type.
template <typename Scalar>
const Point2<Scalar>& cached_vertex(int n, long k) {
  thread_local int cached_n = 0;
  thread_local std::vector<Point2<Scalar>> table;
  if (cached_n != n) {
    table.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) table[static_cast<std::size_t>(i)] = polygon_vertex<Scalar>(n, i);
    cached_n = n;
  }
  return table[static_cast<std::size_t>(k % n)];
}

// forward_reach without the scale check; r must already lie in (0, r_n].
template <typename Scalar>
Reach<Scalar> forward_reach_unchecked(int n, Scalar t, Scalar r) {
  const auto [k0, s0] = edge_position(n, t);
  const Point2<Scalar> p = (Scalar(1) - s0) * cached_vertex<Scalar>(n, k0) + s0 * cached_vertex<Scalar>(n, k0 + 1);
  const int max_edges = (n + 1) / 2 + 1;
  for (int step = 0; step <= max_edges; ++step) {
    const Point2<Scalar>& a = cached_vertex<Scalar>(n, k0 + step);
    const Point2<Scalar>& b = cached_vertex<Scalar>(n, k0 + step + 1);
    // A far vertex at distance r up to rounding ends the walk, which gives the
    // left limit in r when r_n is itself a vertex-to-vertex distance.
    if ((b - p).norm() < r - Scalar(kGeomTol)) continue;
    const Point2<Scalar> e = b - a;
    const Point2<Scalar> w = a - p;
    const Scalar qa = e.squaredNorm();
    const Scalar qb = Scalar(2) * w.dot(e);
    const Scalar qc = w.squaredNorm() - r * r;
    const Scalar disc = std::max(Scalar(0), qb * qb - Scalar(4) * qa * qc);
    Scalar s = (-qb + std::sqrt(disc)) / (Scalar(2) * qa);
    s = std::clamp(s, step == 0 ? s0 : Scalar(0), Scalar(1));
    const Scalar advance = (Scalar(step) + s - s0) / Scalar(n);
    return {wrap_unit(t + advance), advance};
  }
  fail(ErrorKind::internal, "ball exit not found within half the polygon");
}

}  // namespace detail

// Counterclockwise end of the ball of radius r about t: the first point, walking
// counterclockwise, at Euclidean distance r. Each edge is a quadratic in its
// barycentric parameter; the ball is an arc below r_n, so the exit lies on the
// first edge whose far vertex is at distance >= r and is the larger root there.
template <typename Scalar>
Reach<Scalar> forward_reach(int n, Scalar t, Scalar r, Boundary boundary = Boundary::reject) {
  return detail::forward_reach_unchecked(n, t, checked_scale(n, r, boundary));
}

// Clockwise end of the same ball, by the reflection t -> -t.
template <typename Scalar>
Reach<Scalar> backward_reach(int n, Scalar t, Scalar r, Boundary boundary = Boundary::reject) {
  const Reach<Scalar> mirrored = forward_reach(n, wrap_unit(-t), r, boundary);
  return {wrap_unit(-mirrored.position), mirrored.advance};
}

// The step map: counterclockwise endpoint of the ball arc.
template <typename Scalar>
Scalar step_map(int n, Scalar t, Scalar r, Boundary boundary = Boundary::reject) {
  return forward_reach(n, t, r, boundary).position;
}

template <typename Scalar>
struct Arc {
  Scalar lo;
  Scalar hi;
  bool lo_closed = true;
  bool hi_closed = true;

  // Counterclockwise membership from lo to hi, wrapping modulo 1.
  bool contains(Scalar t, Scalar tol = Scalar(kGeomTol)) const {
    const Scalar span = geodesic_dist(lo, hi);
    Scalar off = geodesic_dist(lo, t);
    if (off >= Scalar(1) - tol) off = Scalar(0);  // just below lo
    if (off <= tol) return lo_closed;
    if (std::abs(off - span) <= tol) return hi_closed;
    return off < span;
  }
};
using ArcInterval = Arc<double>;

// {w in P_n : |w - t| <= r} as a closed counterclockwise arc. Requires r < r_n.
template <typename Scalar>
Arc<Scalar> ball_arc(int n, Scalar t, Scalar r) {
  return {backward_reach(n, t, r).position, forward_reach(n, t, r).position, true, true};
}

}  // namespace polyrips
