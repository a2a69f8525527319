#include "polyrips/cyclic_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polyrips {

namespace {

std::string triple(int a, int b, int c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

CyclicityCheck check_cyclicity(const std::vector<double>& positions, const Adjacency& adjacency) {
  const int m = static_cast<int>(positions.size());
  if (adjacency.rows() != m || adjacency.cols() != m) fail(ErrorKind::input, "adjacency size does not match positions");
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return positions[a] < positions[b]; });

  for (int i = 0; i < m; ++i) {
    const int u0 = order[static_cast<std::size_t>(i)];
    for (int j = 1; j < m; ++j) {
      const int u1 = order[static_cast<std::size_t>((i + j) % m)];
      if (!adjacency(u0, u1)) continue;
      for (int k = 1; k < j; ++k) {
        const int w = order[static_cast<std::size_t>((i + k) % m)];
        if (!adjacency(u0, w) || !adjacency(w, u1)) return {false, std::array<int, 3>{u0, w, u1}};
      }
    }
  }
  return {};
}

CyclicGraph::CyclicGraph(std::vector<double> positions, std::vector<int> reach)
    : positions_(std::move(positions)), reach_(std::move(reach)) {
  const int m = size();
  if (m == 0) fail(ErrorKind::input, "cyclic graph needs at least one vertex");
  if (static_cast<int>(positions_.size()) != m) fail(ErrorKind::input, "positions and reach differ in length");
  for (int i = 0; i < m; ++i) {
    const double p = positions_[static_cast<std::size_t>(i)];
    if (!(p >= 0.0 && p < 1.0)) fail(ErrorKind::input, "arc coordinate outside [0,1)");
    if (i > 0 && !(positions_[static_cast<std::size_t>(i - 1)] < p)) fail(ErrorKind::input, "positions must be strictly increasing");
    const int k = reach_[static_cast<std::size_t>(i)];
    if (k < 0 || k >= m) fail(ErrorKind::input, "reach out of range at vertex " + std::to_string(i));
  }
  for (int i = 0; i < m; ++i) {
    const int k = reach_[static_cast<std::size_t>(i)];
    for (int a = 1; a <= k; ++a) {
      const int j = (i + a) % m;
      const int kj = reach_[static_cast<std::size_t>(j)];
      if (kj >= m - a) {
        fail(ErrorKind::non_cyclic, "directed 2-cycle between " + std::to_string(i) + " and " + std::to_string(j));
      }
      // j lies on the run i -> i+k, so it must itself reach at least i+k.
      if (a + kj < k) fail(ErrorKind::non_cyclic, "cyclic order violated at " + triple(i, j, (i + k) % m));
    }
  }
}

CyclicGraph CyclicGraph::regular(int n, int k) {
  if (n < 1) fail(ErrorKind::input, "regular graph needs n >= 1");
  if (k < 0 || 2 * k >= n) fail(ErrorKind::input, "regular graph needs 0 <= k < n/2");
  std::vector<double> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
  return CyclicGraph(std::move(pos), std::vector<int>(static_cast<std::size_t>(n), k));
}

CyclicGraph CyclicGraph::from_adjacency(std::vector<double> positions, const Adjacency& adjacency) {
  const int m = static_cast<int>(positions.size());
  const CyclicityCheck check = check_cyclicity(positions, adjacency);
  if (!check.cyclic) {
    const auto& w = *check.witness;
    fail(ErrorKind::non_cyclic, "not cyclic: violating triple " + triple(w[0], w[1], w[2]));
  }
  std::vector<int> reach(static_cast<std::size_t>(m), 0);
  for (int u = 0; u < m; ++u) {
    int k = 0;
    while (k + 1 < m && adjacency(u, (u + k + 1) % m)) ++k;
    const int degree = static_cast<int>(adjacency.row(u).count()) - (adjacency(u, u) ? 1 : 0);
    if (degree != k) fail(ErrorKind::non_cyclic, "out-neighbourhood of " + std::to_string(u) + " is not a contiguous run");
    reach[static_cast<std::size_t>(u)] = k;
  }
  return CyclicGraph(std::move(positions), std::move(reach));
}

CyclicGraph CyclicGraph::from_points(int n, std::vector<double> points, double r, Convention convention) {
  checked_scale(n, r, Boundary::reject);
  if (points.empty()) fail(ErrorKind::input, "empty sample");
  for (double& p : points) p = wrap_unit(p);
  std::sort(points.begin(), points.end());
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] == points[i - 1]) fail(ErrorKind::input, "duplicate point at arc coordinate " + std::to_string(points[i]));
  }
  const int m = static_cast<int>(points.size());
  std::vector<double> advance(static_cast<std::size_t>(m));
  std::vector<Point2<double>> xy(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    advance[static_cast<std::size_t>(i)] = forward_reach(n, points[static_cast<std::size_t>(i)], r).advance;
    xy[static_cast<std::size_t>(i)] = embed(n, points[static_cast<std::size_t>(i)]);
  }
  Adjacency adj = Adjacency::Constant(m, m, false);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = (xy[static_cast<std::size_t>(i)] - xy[static_cast<std::size_t>(j)]).norm();
      if (!within_scale(d, r, convention)) continue;
      const double ij = geodesic_dist(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      if (ij <= advance[static_cast<std::size_t>(i)] + kGeomTol) {
        adj(i, j) = true;
      } else if (1.0 - ij <= advance[static_cast<std::size_t>(j)] + kGeomTol) {
        adj(j, i) = true;
      } else {
        fail(ErrorKind::internal, "pair within scale but outside both ball arcs: " + std::to_string(i) + ", " + std::to_string(j));
      }
    }
  }
  return from_adjacency(std::move(points), adj);
}

bool CyclicGraph::has_edge(int u, int v) const {
  const int m = size();
  const int d = ((v - u) % m + m) % m;
  return d >= 1 && d <= reach_[static_cast<std::size_t>(u)];
}

Adjacency CyclicGraph::adjacency() const {
  const int m = size();
  Adjacency adj = Adjacency::Constant(m, m, false);
  for (int u = 0; u < m; ++u) {
    for (int a = 1; a <= reach_[static_cast<std::size_t>(u)]; ++a) adj(u, (u + a) % m) = true;
  }
  return adj;
}

int OrbitReport::count(VertexClass c) const { return static_cast<int>(std::count(classes.begin(), classes.end(), c)); }

OrbitReport analyze(const CyclicGraph& graph) {
  const int m = graph.size();
  const auto& reach = graph.reach();
  auto f = [&](int u) { return graph.furthest(u); };

  // Step property: u < w <= f(u) implies f(u) <= f(w) <= f(f(u)), in unwrapped
  // vertex counts measured from u.
  for (int u = 0; u < m; ++u) {
    const int ru = reach[static_cast<std::size_t>(u)];
    const int rfu = reach[static_cast<std::size_t>(f(u))];
    for (int b = 1; b <= ru; ++b) {
      const int fw = b + reach[static_cast<std::size_t>((u + b) % m)];
      if (fw < ru || fw > ru + rfu) fail(ErrorKind::internal, "step property fails at vertex " + std::to_string(u));
    }
  }

  OrbitReport rep;
  rep.classes.assign(static_cast<std::size_t>(m), VertexClass::slow);
  rep.steps_to_cycle.assign(static_cast<std::size_t>(m), -1);
  std::vector<int> state(static_cast<std::size_t>(m), 0);  // 0 new, 1 on stack, 2 done
  std::vector<int> path;
  for (int start = 0; start < m; ++start) {
    if (state[static_cast<std::size_t>(start)] != 0) continue;
    path.clear();
    int u = start;
    while (state[static_cast<std::size_t>(u)] == 0) {
      state[static_cast<std::size_t>(u)] = 1;
      path.push_back(u);
      u = f(u);
    }
    if (state[static_cast<std::size_t>(u)] == 1) {
      const auto first = std::find(path.begin(), path.end(), u);
      std::vector<int> orbit(first, path.end());
      long advance = 0;
      for (int v : orbit) {
        advance += reach[static_cast<std::size_t>(v)];
        rep.classes[static_cast<std::size_t>(v)] = VertexClass::periodic;
        rep.steps_to_cycle[static_cast<std::size_t>(v)] = 0;
        state[static_cast<std::size_t>(v)] = 2;
      }
      if (advance % m != 0) fail(ErrorKind::internal, "orbit winding is not an integer");
      const int length = static_cast<int>(orbit.size());
      const int winding = static_cast<int>(advance / m);
      if (rep.orbits.empty()) {
        rep.length = length;
        rep.winding = winding;
      } else if (length != rep.length || winding != rep.winding) {
        fail(ErrorKind::internal, "periodic orbits disagree on length or winding");
      }
      rep.orbits.push_back(std::move(orbit));
      path.erase(first, path.end());
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const int v = *it;
      rep.steps_to_cycle[static_cast<std::size_t>(v)] = rep.steps_to_cycle[static_cast<std::size_t>(f(v))] + 1;
    }
    for (int v : path) state[static_cast<std::size_t>(v)] = 2;
  }
  rep.orbit_count = static_cast<int>(rep.orbits.size());
  rep.wf = Fraction::reduced(rep.winding, rep.length);

  // Fast iff the q-step cumulative winding exceeds p, i.e. the index advance
  // over q steps exceeds p*m.
  const long p = rep.wf.num;
  const long q = rep.wf.den;
  for (int u = 0; u < m; ++u) {
    if (rep.classes[static_cast<std::size_t>(u)] == VertexClass::periodic) continue;
    ++rep.pre_periodic;
    long advance = 0;
    int v = u;
    for (long i = 0; i < q; ++i) {
      advance += reach[static_cast<std::size_t>(v)];
      v = f(v);
    }
    rep.classes[static_cast<std::size_t>(u)] = advance > p * m ? VertexClass::fast : VertexClass::slow;
  }
  return rep;
}

HomotopyType homotopy_type(const CyclicGraph& graph) {
  const OrbitReport rep = analyze(graph);
  return homotopy_from_winding(rep.wf, rep.orbit_count);
}

}  // namespace polyrips
