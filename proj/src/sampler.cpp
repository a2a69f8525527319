#include "polyrips/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iterator>
#include <limits>
#include <numbers>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "polyrips/cyclic_graph.hpp"
#include "polyrips/error.hpp"
#include "polyrips/geometry.hpp"
#include "polyrips/stars.hpp"

namespace polyrips {

namespace {

constexpr double kMinTail = 1e-9;
constexpr int kBisectSteps = 100;

// The sample is built on q consecutive edges and copied 2l+1 times. In edge
// units, with the rotation by l/(2l+1) of the polygon factored out, the step
// map becomes y -> y + overshoot(y), and a sample point y is periodic exactly
// when the next sample point lies beyond y + overshoot(y).
struct Reduced {
  int n;
  int l;
  int q;
  double r;

  double overshoot(double y) const {
    return forward_reach(n, wrap_unit(y / n), r).advance * n - static_cast<double>(l) * q;
  }
};

struct FastArc {
  double a;  // edge units, a < b
  double b;
};

// Smallest x in (lo, hi] found with pred(x) true, for pred monotone false -> true.
template <typename Pred>
double bisect(double lo, double hi, Pred pred) {
  for (int i = 0; i < kBisectSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Periodic chain of `count` points ending just before b, then non-periodic
// fillers down to a. Empty if the chain does not fit.
std::optional<std::vector<double>> fast_points(const Reduced& red, const FastArc& arc, int count, double tail, double h) {
  std::vector<double> pts;
  double p = arc.b - tail;
  if (p <= arc.a) return std::nullopt;
  pts.push_back(p);
  for (int i = 1; i < count; ++i) {
    // (p - x) - overshoot(x) decreases in x: positive at a, negative at p.
    const double root = bisect(arc.a, p, [&](double x) { return (p - x) - red.overshoot(x) < 0.0; });
    const double x = root - 0.25 * (p - root);
    if (x <= arc.a + 0.5 * h || p - x > h) return std::nullopt;
    pts.push_back(x);
    p = x;
  }
  // Fillers: each new point y must see its right neighbour c within overshoot(y).
  double c = p;
  while (c > arc.a + 0.5 * h) {
    const double y_min = bisect(arc.a, c, [&](double y) { return c - y <= 0.8 * red.overshoot(y); });
    const double y = std::max(c - h, y_min);
    if (!(y < c)) fail(ErrorKind::internal, "filler spacing collapsed");
    pts.push_back(y);
    c = y;
  }
  return pts;
}

std::vector<FastArc> fast_arcs(const Reduced& red) {
  const CrossingSet cs = crossings(red.n, red.l, red.r);
  if (cs.status != CrossingStatus::interior) fail(ErrorKind::input, "scale must lie strictly between s and t");
  std::vector<double> ends;
  for (double x : cs.points) ends.push_back(x * red.n);
  std::vector<FastArc> arcs;
  for (int j = 0; j < red.q; ++j) {
    const double mid = j + 0.5;
    const auto hi = std::upper_bound(ends.begin(), ends.end(), mid);
    const double b = hi == ends.end() ? ends.front() + red.n : *hi;
    const double a = hi == ends.begin() ? ends.back() - red.n : *std::prev(hi);
    if (!(red.overshoot(mid) > 0.0)) fail(ErrorKind::internal, "edge midpoint is not fast inside the star window");
    arcs.push_back({a, b});
  }
  return arcs;
}

std::optional<std::vector<double>> attempt(const SampleSpec& spec, const Reduced& red, const std::vector<FastArc>& arcs, double tail, double h) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  std::vector<double> domain;
  for (int j = 0; j < red.q; ++j) {
    const int zj = spec.z / red.q + (j < spec.z % red.q ? 1 : 0);
    const auto fast = fast_points(red, arcs[static_cast<std::size_t>(j)], zj, tail, h);
    if (!fast) return std::nullopt;
    domain.insert(domain.end(), fast->begin(), fast->end());

    const double from = arcs[static_cast<std::size_t>(j)].b;
    const double to = j + 1 < red.q ? arcs[static_cast<std::size_t>(j + 1)].a : arcs[0].a + red.q;
    const double len = to - from;
    const int k = std::max(1, static_cast<int>(std::ceil(len / (0.5 * h))));
    const double step = len / k;
    for (int i = 0; i < k; ++i) domain.push_back(from + step * (i + 0.5 + jitter(rng)));
  }
  std::vector<double> points;
  for (int copy = 0; copy <= 2 * spec.l; ++copy) {
    for (double y : domain) points.push_back(wrap_unit((y + copy * red.q) / spec.n));
  }
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) return std::nullopt;
  return points;
}

}  // namespace

Sample construct(const SampleSpec& spec) {
  require_polygon(spec.n);
  if (spec.l < 1) fail(ErrorKind::input, "sampler needs l >= 1");
  if (spec.n % (2 * spec.l + 1) != 0) fail(ErrorKind::input, "sampler needs (2l+1) | n");
  if (spec.n < 4 * spec.l + 2) fail(ErrorKind::input, "sampler needs n >= 4l+2");
  const int q = spec.n / (2 * spec.l + 1);
  if (spec.z < q) fail(ErrorKind::input, "z must be at least q = " + std::to_string(q));
  if (!(spec.eps > 0.0)) fail(ErrorKind::input, "eps must be positive");
  const Thresholds th = thresholds(spec.n, spec.l);
  if (!(spec.r > th.s + kGeomTol && spec.r < th.t - kGeomTol)) fail(ErrorKind::input, "scale must lie strictly between s and t");

  const Reduced red{spec.n, spec.l, q, spec.r};
  const std::vector<FastArc> arcs = fast_arcs(red);
  const double side = 2.0 * std::sin(std::numbers::pi / spec.n);
  const double h = std::min(0.95 * 2.0 * spec.eps / side, 0.5);

  double min_width = arcs[0].b - arcs[0].a;
  for (const FastArc& a : arcs) min_width = std::min(min_width, a.b - a.a);
  for (double tail = 0.05 * std::min(h, min_width); tail >= kMinTail; tail *= 0.5) {
    const auto points = attempt(spec, red, arcs, tail, h);
    if (!points) continue;
    if (density(*points, spec.n) > spec.eps) continue;
    const OrbitReport rep = analyze(CyclicGraph::from_points(spec.n, *points, spec.r, Convention::closed));
    if (rep.orbit_count == spec.z && rep.length == 2 * spec.l + 1 && rep.winding == spec.l) return {spec.n, *points};
  }
  fail(ErrorKind::resource, "no periodic chain spacing above 1e-9 realizes z = " + std::to_string(spec.z));
}

double density(const std::vector<double>& points, int n) {
  require_polygon(n);
  if (points.empty()) fail(ErrorKind::input, "density of an empty sample");
  std::vector<double> pts(points);
  for (double& p : pts) p = wrap_unit(p);
  std::sort(pts.begin(), pts.end());
  std::vector<Point2<double>> xy;
  for (double p : pts) xy.push_back(embed(n, p));
  // Within a gap the nearer of its two end points is used; this bounds the
  // true value from above and matches it for any sample whose gaps are short
  // enough that no third point is closer. On each edge piece the distance to a
  // fixed point is convex, so the supremum sits at a piece end or where the
  // two end points are equidistant.
  double worst = 0.0;
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double u = pts[i];
    const double v = m == 1 ? u + 1.0 : (i + 1 < m ? pts[i + 1] : pts[0] + 1.0);
    const Point2<double> pu = xy[i];
    const Point2<double> pv = xy[(i + 1) % m];
    auto nearest = [&](const Point2<double>& c) { return std::min((c - pu).norm(), (c - pv).norm()); };
    double lo = u;
    while (lo < v) {
      const double edge_end = (std::floor(lo * n + 1e-12) + 1.0) / n;
      const double hi = std::min(v, edge_end);
      const Point2<double> a = embed(n, wrap_unit(lo));
      const Point2<double> b = embed(n, wrap_unit(hi));
      worst = std::max({worst, nearest(a), nearest(b)});
      const Point2<double> dir = b - a;
      const Point2<double> w = pv - pu;
      const double denom = dir.dot(w);
      if (std::abs(denom) > 1e-15) {
        const double s = (0.5 * (pv.squaredNorm() - pu.squaredNorm()) - a.dot(w)) / denom;
        if (s > 0.0 && s < 1.0) worst = std::max(worst, nearest(a + s * dir));
      }
      lo = hi;
    }
  }
  return worst;
}

int min_orbits_check(int n, int l, double r, int k) {
  if (k < 1) fail(ErrorKind::input, "need at least one sample point");
  const Thresholds th = thresholds(n, l);
  if (!(r > th.s && r < th.t)) fail(ErrorKind::input, "scale must lie strictly between s and t");
  std::vector<double> pts(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pts[static_cast<std::size_t>(i)] = static_cast<double>(i) / k;
  return analyze(CyclicGraph::from_points(n, pts, r, Convention::closed)).orbit_count;
}

std::vector<double> even_with_crossings(int n, int l, double r, int k) {
  if (k < 1) fail(ErrorKind::input, "need at least one sample point");
  std::vector<double> pts;
  for (int i = 0; i < k; ++i) pts.push_back(static_cast<double>(i) / k);
  const CrossingSet cs = crossings(n, l, r);
  if (cs.status == CrossingStatus::out_of_range) fail(ErrorKind::input, "scale outside [s, t]: no crossing points");
  pts.insert(pts.end(), cs.points.begin(), cs.points.end());
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts) {
    if (out.empty() || p - out.back() > 1e-12) out.push_back(p);
  }
  if (out.size() > 1 && out.front() + 1.0 - out.back() <= 1e-12) out.pop_back();
  return out;
}

Sample read_sample(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) fail(ErrorKind::input, "empty sample file");
  Sample s;
  if (header.rfind("n=", 0) != 0) fail(ErrorKind::input, "sample file must start with n=<int>");
  try {
    std::size_t used = 0;
    s.n = std::stoi(header.substr(2), &used);
    if (header.find_first_not_of(" \t\r", 2 + used) != std::string::npos) throw std::invalid_argument("trailing");
  } catch (const std::logic_error&) {
    fail(ErrorKind::input, "bad sample header: " + header);
  }
  require_polygon(s.n);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream is(line);
    double t = 0.0;
    std::string rest;
    if (!(is >> t) || (is >> rest)) fail(ErrorKind::input, "bad sample line: " + line);
    if (!(t >= 0.0 && t < 1.0)) fail(ErrorKind::input, "arc coordinate outside [0,1): " + line);
    if (!s.points.empty() && !(s.points.back() < t)) fail(ErrorKind::input, "sample points must be strictly ascending");
    s.points.push_back(t);
  }
  if (s.points.empty()) fail(ErrorKind::input, "sample has no points");
  return s;
}

void write_sample(std::ostream& out, const Sample& sample) {
  out << "n=" << sample.n << '\n' << std::setprecision(17);
  for (double t : sample.points) out << t << '\n';
}

}  // namespace polyrips
