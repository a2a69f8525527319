#include "polyrips/stars.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace polyrips {

namespace {

constexpr double kSideTol = 1e-12;
constexpr int kMaxBisection = 200;

void require_star_order(int n, int l) {
  require_polygon(n);
  if (l < 1) fail(ErrorKind::input, "star order needs l >= 1");
  if (n < 4 * l + 2) {
    fail(ErrorKind::input, "existence not guaranteed: n = " + std::to_string(n) + " < 4l+2 = " + std::to_string(4 * l + 2));
  }
}

// star_defect with a pre-validated scale.
double defect_unchecked(int n, int l, double t, double r) {
  double total = 0.0;
  double x = t;
  for (int i = 0; i < 2 * l + 1; ++i) {
    const Reach<double> step = detail::forward_reach_unchecked(n, x, r);
    total += step.advance;
    x = step.position;
  }
  return total - l;
}

// Bisection for the star side at basepoint t inside [lo, hi], with
// defect(lo) < 0 <= defect(hi) already established by the caller.
double bisect_side(int n, int l, double t, double lo, double hi) {
  for (int it = 0; it < kMaxBisection && hi - lo > kSideTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (defect_unchecked(n, l, t, mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Star side at t over the full range (0, r_n].
double side_at(int n, int l, double t) {
  const double rn = cyclic_threshold(n);
  const double top = defect_unchecked(n, l, t, rn);
  if (top < -kSideTol) {
    fail(ErrorKind::internal, "no star at basepoint " + std::to_string(t) + " below r_n (defect " + std::to_string(top) + ")");
  }
  if (top < 0.0) return rn;
  return bisect_side(n, l, t, 0.0, rn);
}

std::vector<double> star_vertices(int n, int l, double t, double side) {
  std::vector<double> v{wrap_unit(t)};
  for (int i = 0; i < 2 * l; ++i) v.push_back(detail::forward_reach_unchecked(n, v.back(), side).position);
  return v;
}

// Sorted circular set, merging entries closer than tol (including across 0).
std::vector<double> dedupe_circular(std::vector<double> xs, double tol) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  if (out.size() > 1 && out.front() + 1.0 - out.back() <= tol) out.pop_back();
  return out;
}

std::vector<double> rotated_star(int n, int l, double basepoint) {
  const StarSolution star = inscribe_star(n, l, basepoint);
  std::vector<double> pts;
  pts.reserve(star.vertices.size() * static_cast<std::size_t>(n));
  for (double x : star.vertices) {
    for (int k = 0; k < n; ++k) pts.push_back(wrap_unit(x + static_cast<double>(k) / n));
  }
  return dedupe_circular(std::move(pts), kCoincidenceTol);
}

struct Node {
  double pos;
  double side;
  bool crossing;
  bool vertex_kind;  // for crossings: vertex (max) or midpoint (min)
};

}  // namespace

double star_defect(int n, int l, double t, double r) {
  require_polygon(n);
  if (l < 1) fail(ErrorKind::input, "star order needs l >= 1");
  return defect_unchecked(n, l, wrap_unit(t), checked_scale(n, r, Boundary::limit));
}

StarSolution inscribe_star(int n, int l, double t) {
  require_star_order(n, l);
  t = wrap_unit(t);
  StarSolution star{n, l, t, side_at(n, l, t), {}, false};
  star.at_threshold = at_threshold(n, star.side);
  star.vertices = star_vertices(n, l, t, star.side);
  return star;
}

StarSolution inscribe_star(int n, int l, double t, double lo, double hi) {
  require_star_order(n, l);
  t = wrap_unit(t);
  hi = checked_scale(n, hi, Boundary::limit);
  if (!(lo >= 0.0 && lo < hi)) fail(ErrorKind::input, "bracket must satisfy 0 <= lo < hi");
  const bool lo_ok = lo == 0.0 || defect_unchecked(n, l, t, lo) < 0.0;
  const double top = defect_unchecked(n, l, t, hi);
  if (!lo_ok || top < -kSideTol) fail(ErrorKind::input, "bracket does not contain the star side");
  const double side = top < 0.0 ? hi : bisect_side(n, l, t, lo, hi);
  StarSolution star{n, l, t, side, star_vertices(n, l, t, side), at_threshold(n, side)};
  return star;
}

double closed_form_side(int n, int l, double bary) {
  require_polygon(n);
  if (l < 1 || n % (2 * l + 1) != 0) fail(ErrorKind::input, "closed form not applicable: 2l+1 does not divide n");
  if (bary < 0.0 || bary > 1.0) fail(ErrorKind::input, "barycentric coordinate outside [0,1]");
  const double pi = std::numbers::pi;
  const double sn2 = std::pow(std::sin(pi / n), 2);
  return 2.0 * std::sin(pi * l / (2 * l + 1)) * std::sqrt(4.0 * sn2 * bary * bary - 4.0 * sn2 * bary + 1.0);
}

std::vector<double> vertex_crossings(int n, int l) { return rotated_star(n, l, 0.0); }

std::vector<double> midpoint_crossings(int n, int l) { return rotated_star(n, l, 0.5 / n); }

MonotonicityReport validate_monotonic(int n, int l, int grid) {
  require_star_order(n, l);
  if (grid < 1) fail(ErrorKind::input, "grid must be positive");
  MonotonicityReport rep;
  auto note = [&](const std::string& what) {
    if (rep.detail.empty()) rep.detail = what;
  };
  constexpr double kValueTol = 1e-9;

  const std::vector<double> vx = vertex_crossings(n, l);
  const std::vector<double> mx = midpoint_crossings(n, l);
  rep.vertex_crossings = vx.size();
  rep.midpoint_crossings = mx.size();
  rep.expected_crossings = static_cast<std::size_t>(std::lcm(n, 2 * l + 1));
  if (vx.size() != rep.expected_crossings || mx.size() != rep.expected_crossings) note("crossing counts differ from lcm(n, 2l+1)");

  std::vector<Node> nodes;
  auto add_crossings = [&](const std::vector<double>& xs, bool vertex_kind, double& spread) {
    double lo = 1e300;
    double hi = -1e300;
    for (double x : xs) {
      const double side = side_at(n, l, x);
      lo = std::min(lo, side);
      hi = std::max(hi, side);
      nodes.push_back({x, side, true, vertex_kind});
    }
    spread = xs.empty() ? 0.0 : hi - lo;
  };
  add_crossings(vx, true, rep.vertex_spread);
  add_crossings(mx, false, rep.midpoint_spread);
  rep.worst_violation = std::max(rep.vertex_spread, rep.midpoint_spread);
  if (rep.vertex_spread > kValueTol) note("vertex crossings do not share one side length");
  if (rep.midpoint_spread > kValueTol) note("midpoint crossings do not share one side length");

  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.pos < b.pos; });
  rep.interleaved = !nodes.empty() && nodes.size() % 2 == 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].vertex_kind == nodes[(i + 1) % nodes.size()].vertex_kind) rep.interleaved = false;
  }
  if (!rep.interleaved) note("vertex and midpoint crossings do not alternate");

  rep.grid_min = 1e300;
  rep.grid_max = -1e300;
  for (int i = 0; i < grid; ++i) {
    const double p = static_cast<double>(i) / grid;
    const double side = side_at(n, l, p);
    rep.grid_min = std::min(rep.grid_min, side);
    rep.grid_max = std::max(rep.grid_max, side);
    nodes.push_back({p, side, false, false});
  }
  std::stable_sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.pos < b.pos; });

  // Between neighbouring crossings the side must rise towards a vertex crossing
  // and fall towards a midpoint crossing.
  const std::size_t count = nodes.size();
  std::vector<int> toward(count, 0);
  int upcoming = 0;
  for (std::size_t pass = 0; pass < 2; ++pass) {
    for (std::size_t k = count; k-- > 0;) {
      if (nodes[k].crossing) upcoming = nodes[k].vertex_kind ? 1 : -1;
      toward[k] = upcoming;
    }
  }
  if (upcoming != 0) {
    for (std::size_t k = 0; k < count; ++k) {
      const Node& a = nodes[k];
      const Node& b = nodes[(k + 1) % count];
      const int dir = toward[(k + 1) % count];
      const double violation = std::max(0.0, -dir * (b.side - a.side));
      rep.worst_violation = std::max(rep.worst_violation, violation);
      if (violation > kValueTol) {
        std::ostringstream os;
        os << "side not monotone between " << a.pos << " and " << b.pos << " (by " << violation << ")";
        note(os.str());
      }
    }
  }
  rep.pass = rep.detail.empty();
  return rep;
}

Thresholds thresholds(int n, int l, int grid) {
  require_star_order(n, l);
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, Thresholds> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find({n, l, grid}); it != cache.end()) return it->second;
  }
  Thresholds th;
  th.n = n;
  th.l = l;
  const double rn = cyclic_threshold(n);
  if (n % (2 * l + 1) == 0) {
    const double pi = std::numbers::pi;
    th.t = 2.0 * std::sin(pi * l / (2 * l + 1));
    th.s = th.t * std::cos(pi / n);
    th.exact = true;
    th.certified = true;
  } else {
    const MonotonicityReport rep = validate_monotonic(n, l, grid);
    if (rep.pass) {
      th.s = inscribe_star(n, l, 0.5 / n).side;
      th.t = inscribe_star(n, l, 0.0).side;
      th.certified = true;
    } else {
      th.s = rep.grid_min;
      th.t = rep.grid_max;
      th.warning = "monotonicity scan failed (" + rep.detail + "); using grid extrema";
    }
  }
  if (th.t >= rn - kGeomTol) {
    th.t = rn;
    th.t_at_threshold = true;
  }
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(std::make_tuple(n, l, grid), th);
  return th;
}

CrossingSet crossings(int n, int l, double r) {
  const Thresholds th = thresholds(n, l);
  CrossingSet out;
  if (std::abs(r - th.s) <= kGeomTol) return {CrossingStatus::at_minimum, midpoint_crossings(n, l)};
  if (std::abs(r - th.t) <= kGeomTol) return {CrossingStatus::at_maximum, vertex_crossings(n, l)};
  if (r < th.s || r > th.t) return out;
  out.status = CrossingStatus::interior;

  std::vector<std::pair<double, bool>> ends;  // (position, is vertex crossing)
  for (double x : vertex_crossings(n, l)) ends.emplace_back(x, true);
  for (double x : midpoint_crossings(n, l)) ends.emplace_back(x, false);
  std::sort(ends.begin(), ends.end());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    double a = ends[i].first;
    double b = ends[(i + 1) % ends.size()].first;
    if (b <= a) b += 1.0;
    // The defect is negative at a vertex crossing (side t > r) and positive at a
    // midpoint crossing (side s < r).
    const bool rising = ends[i].second;
    for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
      const double mid = 0.5 * (a + b);
      const bool negative = defect_unchecked(n, l, wrap_unit(mid), r) < 0.0;
      if (negative == rising) {
        a = mid;
      } else {
        b = mid;
      }
    }
    out.points.push_back(wrap_unit(0.5 * (a + b)));
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

int count_stars(int n, int l, double r) {
  const Thresholds th = thresholds(n, l);
  if (!th.certified) {
    fail(ErrorKind::not_certifiable, "requires conjecture: monotonicity not established for (n, l) = (" + std::to_string(n) + ", " +
                                         std::to_string(l) + ")");
  }
  const int q = n / std::gcd(n, 2 * l + 1);
  if (std::abs(r - th.s) <= kGeomTol || std::abs(r - th.t) <= kGeomTol) return q;
  if (r > th.s && r < th.t) return 2 * q;
  return 0;
}

Coincidence coincidence(const StarSolution& star) {
  Coincidence c;
  const int n = star.n;
  for (double x : star.vertices) {
    const double v = x * n;
    if (std::abs(v - std::round(v)) / n <= kCoincidenceTol) ++c.vertices;
    if (std::abs(v - 0.5 - std::round(v - 0.5)) / n <= kCoincidenceTol) ++c.midpoints;
  }
  return c;
}

namespace {

using Vec2 = Point2<double>;

Vec2 intersect(const Vec2& p, const Vec2& d, const Vec2& q, const Vec2& e) {
  Eigen::Matrix2d m;
  m << d, -e;
  if (std::abs(m.determinant()) < 1e-14) fail(ErrorKind::input, "degenerate circumscription: parallel lines");
  const Eigen::Vector2d st = m.partialPivLu().solve(q - p);
  return p + st(0) * d;
}

double angle_at(const Vec2& apex, const Vec2& x, const Vec2& y) {
  const Vec2 a = x - apex;
  const Vec2 b = y - apex;
  return std::abs(std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b)));
}

}  // namespace

NapoleonCheck napoleon_product_check(int n, double t) {
  const StarSolution star = inscribe_star(n, 1, t);
  if (coincidence(star).vertices > 0) fail(ErrorKind::input, "degenerate circumscription: star passes through a polygon vertex");
  NapoleonCheck out;
  std::vector<Vec2> pt;
  std::vector<Vec2> dir;
  for (double x : star.vertices) {
    const long k = edge_position(n, x).first;
    out.edges.push_back(k);
    pt.push_back(embed(n, x));
    dir.push_back(polygon_vertex<double>(n, k + 1) - polygon_vertex<double>(n, k));
  }
  const Vec2& P = pt[0];
  const Vec2& Q = pt[1];
  const Vec2& R = pt[2];
  // P on AB, Q on BC, R on CA.
  const Vec2 A = intersect(P, dir[0], R, dir[2]);
  const Vec2 B = intersect(P, dir[0], Q, dir[1]);
  const Vec2 C = intersect(Q, dir[1], R, dir[2]);
  // TV through A parallel to PR, TU through B parallel to PQ, UV through C parallel to QR.
  const Vec2 U = intersect(B, Q - P, C, R - Q);
  const Vec2 V = intersect(C, R - Q, A, R - P);
  out.product = (R - Q).norm() * (V - U).norm();
  out.reference = (A - B).squaredNorm() * std::sin(angle_at(B, A, C)) * std::sin(angle_at(A, B, C)) /
                  (std::sin(angle_at(C, A, B)) * std::sin(std::numbers::pi / 3.0));
  return out;
}

}  // namespace polyrips
