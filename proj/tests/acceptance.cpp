// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "polyrips/cyclic_graph.hpp"
#include "polyrips/gh_bounds.hpp"
#include "polyrips/oracle.hpp"
#include "polyrips/predictor.hpp"
#include "polyrips/sampler.hpp"
#include "polyrips/stars.hpp"

using namespace polyrips;

namespace {

const double pi = std::numbers::pi;
const double sqrt3 = std::sqrt(3.0);

// Tolerances and time limits.
constexpr double kEndpointTol = 1e-9;
constexpr double kGhTol = 1e-3;
constexpr double kMatchingTol = 1e-12;
constexpr double kNapoleonTol = 1e-8;
constexpr double kContinuityStep = 1e-6;
constexpr double kContinuityBound = 1e-3;

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) note << "; ";
      pass = false;
      note << what;
    }
  }
};

int failures = 0;

void criterion(int id, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < limit_s, "over time limit of " + std::to_string(limit_s) + " s");
  if (!out.pass) ++failures;
  std::printf("criterion %d: %s (%.2f s)%s%s\n", id, out.pass ? "PASS" : "FAIL", secs, out.pass ? "" : " ", out.note.str().c_str());
  std::fflush(stdout);
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void p15_barcode(Outcome& out) {
  const Barcode bc = barcode(15, Convention::strict);
  const double s1 = sqrt3 * std::cos(pi / 15), t1 = sqrt3;
  const double s2 = 2 * std::sin(2 * pi / 5) * std::cos(pi / 15), t2 = 2 * std::sin(2 * pi / 5);
  const double ends[5][2] = {{0.0, s1}, {s1, t1}, {t1, s2}, {s2, t2}, {t2, -1.0}};
  const int mult[5] = {1, 4, 1, 2, 1};
  if (bc.intervals.size() < 5) {
    out.require(false, "fewer than five intervals");
    return;
  }
  for (int i = 0; i < 5; ++i) {
    const Interval& iv = bc.intervals[static_cast<std::size_t>(i)];
    out.require(iv.dim == i + 1, "dimension order at row " + std::to_string(i));
    out.require(iv.multiplicity == mult[i], "multiplicity in dim " + std::to_string(i + 1));
    out.require(std::abs(iv.birth - ends[i][0]) <= kEndpointTol, "birth in dim " + std::to_string(i + 1) + " = " + num(iv.birth));
    if (ends[i][1] >= 0.0) {
      out.require(std::abs(iv.death - ends[i][1]) <= kEndpointTol, "death in dim " + std::to_string(i + 1) + " = " + num(iv.death));
    }
  }
}

void regular_graphs(Outcome& out) {
  constexpr int cap = 5;
  int checked = 0;
  for (int n = 1; n <= 13; ++n) {
    for (int k = 0; 2 * k < n; ++k) {
      const CyclicGraph g = CyclicGraph::regular(n, k);
      const std::vector<long> predicted = homotopy_type(g).betti(cap);
      const std::vector<long> computed = betti(clique_complex(g.adjacency(), cap, kDefaultSimplexBudget), cap);
      out.require(predicted == computed, "C(" + std::to_string(n) + "," + std::to_string(k) + ")");
      ++checked;
    }
  }
  const auto b124 = betti(clique_complex(CyclicGraph::regular(12, 4).adjacency(), cap, kDefaultSimplexBudget), cap);
  out.require(b124[2] == 3, "C(12,4) b2");
  const auto b83 = betti(clique_complex(CyclicGraph::regular(8, 3).adjacency(), cap, kDefaultSimplexBudget), cap);
  out.require(b83[3] == 1, "C(8,3) b3");
  out.require(checked == 49, "graph count " + std::to_string(checked));
}

void p9_end_to_end(Outcome& out) {
  const double r = 1.65;
  const std::vector<double> pts = even_with_crossings(9, 1, r, 72);
  out.require(pts.size() <= 150, "sample has " + std::to_string(pts.size()) + " points");
  const OrbitReport rep = analyze(CyclicGraph::from_points(9, pts, r, Convention::closed));
  out.require(rep.wf == Fraction{1, 3}, "engine wf " + rep.wf.str());
  const std::vector<long> b = betti(vr_complex(polygon_distances(9, pts), r, Convention::closed, 4, kDefaultSimplexBudget), 4);
  out.require(rep.orbit_count == b[2] + 1, "P = " + std::to_string(rep.orbit_count) + " vs b2 = " + std::to_string(b[2]));
  out.require(b[1] == 0 && b[3] == 0, "b1 or b3 nonzero");
}

void sampler_case(Outcome& out, int z) {
  const SampleSpec spec{6, 1, z, 0.1, 1.6, 2024};
  const Sample s = construct(spec);
  out.require(density(s.points, 6) <= spec.eps, "density " + num(density(s.points, 6)));
  const OrbitReport rep = analyze(CyclicGraph::from_points(6, s.points, spec.r, Convention::closed));
  out.require(rep.orbit_count == z, "orbits " + std::to_string(rep.orbit_count));
  const std::vector<long> b = betti(vr_complex(polygon_distances(6, s.points), spec.r, Convention::closed, 3, kDefaultSimplexBudget), 3);
  out.require(b[2] == z - 1, "b2 " + std::to_string(b[2]));
}

void inclusion(Outcome& out) {
  std::vector<double> pts = even_with_crossings(6, 1, 1.55, 12);
  for (double x : crossings(6, 1, 1.70).points) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [](double a, double b) { return b - a < 1e-12; }), pts.end());
  const long rank = two_scale_rank(polygon_distances(6, pts), 1.55, 1.70, Convention::closed, 2, 3, kDefaultSimplexBudget);
  out.require(rank == 1, "rank " + std::to_string(rank));
}

void gh(Outcome& out) {
  const GHReport rep = gh_report(6);
  out.require(std::abs(rep.lower - 0.116) <= kGhTol, "lower " + num(rep.lower));
  out.require(std::abs(rep.upper - 0.134) <= kGhTol, "upper " + num(rep.upper));
  out.require(std::abs(rep.metric.strong_radial - 0.0986) <= kGhTol, "strong_radial " + num(rep.metric.strong_radial));
  out.require(rep.ph_lower && std::abs(*rep.ph_lower - ph_lower_bound_by_matching(6)) <= kMatchingTol, "matching");
}

void counting(Outcome& out) {
  const std::pair<int, int> orders[] = {{6, 1}, {8, 1}, {9, 1}, {11, 2}, {15, 1}, {15, 2}};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto [n, l] : orders) {
    const std::string tag = "(" + std::to_string(n) + "," + std::to_string(l) + ")";
    const std::size_t lcm = static_cast<std::size_t>(std::lcm(n, 2 * l + 1));
    const int g = std::gcd(n, 2 * l + 1);
    const int q = n / g;
    const auto vc = vertex_crossings(n, l);
    const auto mc = midpoint_crossings(n, l);
    out.require(vc.size() == lcm && mc.size() == lcm, tag + " crossing counts");

    std::vector<double> bases(vc.begin(), vc.end());
    bases.insert(bases.end(), mc.begin(), mc.end());
    for (int i = 0; i < 200; ++i) bases.push_back(unit(rng));
    for (double t : bases) {
      const Coincidence c = coincidence(inscribe_star(n, l, t));
      out.require(c.total() == 0 || c.total() == g, tag + " coincidence " + std::to_string(c.total()));
      out.require(c.vertices == 0 || c.midpoints == 0, tag + " mixed coincidence");
    }

    const Thresholds th = thresholds(n, l);
    const double mid = 0.5 * (th.s + th.t);
    out.require(count_stars(n, l, th.s) == q, tag + " count at s");
    out.require(count_stars(n, l, mid) == 2 * q, tag + " count inside");
    out.require(count_stars(n, l, th.t) == q, tag + " count at t");
    out.require(crossings(n, l, mid).points.size() == static_cast<std::size_t>(2 * q * (2 * l + 1)), tag + " level set size");
  }
}

void monotonic(Outcome& out) {
  int scans = 0;
  for (int n = 6; n <= 30; ++n) {
    for (int l = 1; l <= 3 && 4 * l + 2 <= n; ++l) {
      const MonotonicityReport rep = validate_monotonic(n, l, 10000);
      ++scans;
      if (!rep.pass) {
        std::printf("  finding: (%d, %d) fails the monotonicity scan: %s\n", n, l, rep.detail.c_str());
        const Thresholds th = thresholds(n, l);
        out.require(!th.certified && th.s == rep.grid_min && th.t == rep.grid_max, "fallback thresholds not used");
        out.require(false, "(" + std::to_string(n) + "," + std::to_string(l) + ")");
      }
    }
  }
  out.require(scans == 63, "scan count " + std::to_string(scans));
}

void numeric_lemmas(Outcome& out) {
  for (int n = 4; n <= 10000; ++n) {
    const double c = std::cos(pi / n);
    out.require(static_cast<double>(n - 1) / (n + 1) < c, "first inequality at n = " + std::to_string(n));
    if (n > 6) out.require(std::sin(2 * pi / n) < c, "second inequality at n = " + std::to_string(n));
  }
  out.require(std::abs(std::sin(2 * pi / 6) - std::cos(pi / 6)) < 1e-15, "equality at n = 6");

  // A vertex takes the shortest step at every scale.
  for (int n : {5, 8}) {
    const double rn = cyclic_threshold(n);
    int bad = 0;
    for (int ri = 1; ri <= 1000; ++ri) {
      const double r = rn * ri / 1001.0;
      const double at_vertex = forward_reach(n, 0.0, r).advance;
      for (int pi_ = 0; pi_ < 1000; ++pi_) bad += forward_reach(n, pi_ / 1000.0, r).advance < at_vertex - 1e-12;
    }
    out.require(bad == 0, "vertex minimality fails " + std::to_string(bad) + " times for n = " + std::to_string(n));
  }

  for (int n : {5, 6, 9, 16}) {
    const double rn = cyclic_threshold(n);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double t = (i + 0.5) / 500.0;
      for (int j = 1; j < 50; ++j) {
        const double r = rn * j / 50.0;
        const double base = forward_reach(n, t, r).advance;
        worst = std::max(worst, std::abs(forward_reach(n, t, r + kContinuityStep).advance - base));
        worst = std::max(worst, std::abs(forward_reach(n, t + kContinuityStep, r).advance + kContinuityStep - base));
      }
    }
    out.require(worst <= kContinuityBound, "step map jump " + num(worst) + " for n = " + std::to_string(n));
  }

  std::mt19937_64 rng(100);
  std::uniform_int_distribution<int> sizes(6, 24);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int done = 0;
  while (done < 100) {
    const int n = sizes(rng);
    const double t = unit(rng);
    if (coincidence(inscribe_star(n, 1, t)).vertices > 0) continue;
    const NapoleonCheck c = napoleon_product_check(n, t);
    out.require(std::abs(c.product - c.reference) <= kNapoleonTol * std::max(1.0, c.reference),
                "product identity at n = " + std::to_string(n) + ", t = " + num(t));
    ++done;
  }
}

}  // namespace

int main() {
  criterion(1, 1.0, p15_barcode);
  criterion(2, 60.0, regular_graphs);
  criterion(3, 120.0, p9_end_to_end);
  criterion(4, 360.0, [](Outcome& out) {
    for (int z : {2, 3, 5}) {
      const auto start = std::chrono::steady_clock::now();
      sampler_case(out, z);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out.require(secs < 120.0, "z = " + std::to_string(z) + " took " + num(secs) + " s");
    }
  });
  criterion(5, 120.0, inclusion);
  criterion(6, 5.0, gh);
  criterion(7, 60.0, counting);
  criterion(8, 600.0, monotonic);
  criterion(9, 60.0, numeric_lemmas);
  return failures == 0 ? 0 : 1;
}
