#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <algorithm>
#include <limits>
#include <numeric>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "polyrips/cyclic_graph.hpp"
#include "polyrips/oracle.hpp"

using namespace polyrips;

namespace {

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

std::vector<std::vector<bool>> graph_at(const DistanceMatrix& d, double r, Convention c) {
  const int m = static_cast<int>(d.rows());
  std::vector<std::vector<bool>> g(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) g[i][j] = i != j && within_scale(d(i, j), r, c);
  }
  return g;
}

DistanceMatrix random_points(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> p;
  for (int i = 0; i < m; ++i) p.emplace_back(unit(rng), unit(rng));
  DistanceMatrix d(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) d(i, j) = std::hypot(p[i].first - p[j].first, p[i].second - p[j].second);
  }
  return d;
}

DistanceMatrix two_clusters() {
  DistanceMatrix d(4, 4);
  d << 0, 0.5, 10, 10, 0.5, 0, 10, 10, 10, 10, 0, 0.5, 10, 10, 0.5, 0;
  return d;
}

std::vector<double> hexagon() { return {0.0, 1.0 / 6, 2.0 / 6, 3.0 / 6, 4.0 / 6, 5.0 / 6}; }

}  // namespace

TEST_CASE("small complexes") {
  const FlagComplex two = vr_complex(two_clusters(), 1.0, Convention::strict, 3);
  CHECK(two.count(0) == 4);
  CHECK(two.count(1) == 2);
  CHECK(betti(two, 2) == std::vector<long>{2, 0});

  const FlagComplex cycle = vr_complex(polygon_distances(6, hexagon()), 1.2, Convention::strict, 3);
  CHECK(cycle.count(1) == 6);
  CHECK(cycle.count(2) == 0);
  CHECK(betti(cycle, 3) == std::vector<long>{1, 1, 0});

  // Sides and short diagonals but not the long ones: the octahedron.
  const FlagComplex octa = vr_complex(polygon_distances(6, hexagon()), 1.9, Convention::strict, 4);
  CHECK(betti(octa, 4) == std::vector<long>{1, 0, 1, 0});
}

TEST_CASE("clique complexes of regular cyclic graphs") {
  const FlagComplex c124 = clique_complex(CyclicGraph::regular(12, 4).adjacency(), 6);
  CHECK(c124.euler_characteristic() == 4);
  CHECK(betti(c124, 5) == std::vector<long>{1, 0, 3, 0, 0});
  // Same complex through a hop-distance matrix.
  DistanceMatrix hops(12, 12);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) hops(i, j) = std::min((i - j + 12) % 12, (j - i + 12) % 12);
  }
  CHECK(betti(vr_complex(hops, 4, Convention::closed, 5), 5) == std::vector<long>{1, 0, 3, 0, 0});
  CHECK(betti(clique_complex(CyclicGraph::regular(8, 3).adjacency(), 5), 5) == std::vector<long>{1, 0, 0, 1, 0});
}

TEST_CASE("betti numbers agree with dense elimination") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 6 + trial % 9;
    const DistanceMatrix d = random_points(rng, m);
    const double r = 0.2 + 0.6 * unit(rng);
    const FlagComplex k = vr_complex(d, r, Convention::closed, 5);
    CHECK(betti(k, 4) == oracle::dense_betti(graph_at(d, r, Convention::closed), 4));
  }
}

TEST_CASE("Euler-Poincare on full complexes") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 5 + trial % 8;
    const DistanceMatrix d = random_points(rng, m);
    const FlagComplex k = vr_complex(d, 0.5, Convention::strict, m);
    const std::vector<long> b = betti(k, m);
    long alt = 0;
    for (std::size_t i = 0; i < b.size(); ++i) alt += (i % 2 == 0 ? 1 : -1) * b[i];
    CHECK(alt == k.euler_characteristic());
  }
}

TEST_CASE("homology ignores vertex order") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 10;
    const DistanceMatrix d = random_points(rng, m);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DistanceMatrix pd(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) pd(i, j) = d(perm[i], perm[j]);
    }
    CHECK(betti(vr_complex(d, 0.45, Convention::strict, 4), 4) == betti(vr_complex(pd, 0.45, Convention::strict, 4), 4));
  }
}

TEST_CASE("two-scale ranks") {
  const DistanceMatrix d = two_clusters();
  CHECK(two_scale_rank(d, 1.0, 1.0, Convention::strict, 0, 1) == 2);
  CHECK(two_scale_rank(d, 1.0, 11.0, Convention::strict, 0, 1) == 1);

  const DistanceMatrix hex = polygon_distances(6, hexagon());
  CHECK(two_scale_rank(hex, 1.2, 1.2, Convention::strict, 1, 3) == 1);
  CHECK(two_scale_rank(hex, 1.2, 1.9, Convention::strict, 1, 3) == 0);
  CHECK_THROWS_AS(two_scale_rank(hex, 1.9, 1.2, Convention::strict, 1, 3), Error);
}

TEST_CASE("two-scale ranks agree with a dense image computation") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 7 + trial % 6;
    const DistanceMatrix d = random_points(rng, m);
    const double r = 0.25 + 0.3 * unit(rng);
    const double r2 = r + 0.3 * unit(rng);
    for (int dim = 0; dim <= 2; ++dim) {
      const long expected = oracle::dense_inclusion_rank(graph_at(d, r, Convention::closed), graph_at(d, r2, Convention::closed), dim);
      CHECK(two_scale_rank(d, r, r2, Convention::closed, dim, 4) == expected);
    }
  }
}

TEST_CASE("bottleneck distances") {
  const double inf = std::numeric_limits<double>::infinity();
  const double sqrt3 = std::sqrt(3.0);
  CHECK(bottleneck({{0, 1}, {0.5, 2}}, {{0, 1}, {0.5, 2}}) == 0.0);
  CHECK(bottleneck({{0, sqrt3 * std::cos(std::numbers::pi / 6)}}, {{0, sqrt3}}) ==
        doctest::Approx(sqrt3 * (1 - std::cos(std::numbers::pi / 6))).epsilon(1e-14));
  CHECK(bottleneck({{0, sqrt3 * std::cos(std::numbers::pi / 6)}}, {{0, sqrt3}}) == doctest::Approx(0.2320508).epsilon(1e-7));
  CHECK(bottleneck({{0, 1}}, {}) == 0.5);
  CHECK(bottleneck({{0, inf}}, {{1, inf}}) == 1.0);
  CHECK(bottleneck({{0, inf}}, {}) == inf);
  CHECK_THROWS_AS(bottleneck({{1, 0}}, {}), Error);
}

TEST_CASE("bottleneck agrees with exhaustive matching and is a metric") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto diagram = [&](int size) {
    std::vector<DiagramPoint> pts;
    for (int i = 0; i < size; ++i) {
      const double b = unit(rng);
      pts.emplace_back(b, b + unit(rng));
    }
    return pts;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = diagram(trial % 4);
    const auto b = diagram((trial / 4) % 4);
    const auto c = diagram(trial % 3 + 1);
    const double ab = bottleneck(a, b);
    CHECK(ab == doctest::Approx(oracle::brute_bottleneck(a, b)).epsilon(1e-12));
    CHECK(ab == bottleneck(b, a));
    CHECK(ab <= bottleneck(a, c) + bottleneck(c, b) + 1e-12);
  }
}

TEST_CASE("distance matrix files") {
  const DistanceMatrix d = polygon_distances(5, {0.0, 0.1, 0.33, 0.7});
  std::stringstream io;
  write_distance_matrix(io, d);
  const DistanceMatrix back = read_distance_matrix(io);
  CHECK((back - d).cwiseAbs().maxCoeff() < 1e-15);

  std::stringstream truncated("3\n0 1 2\n1 0\n");
  CHECK_THROWS_AS(read_distance_matrix(truncated), Error);
  std::stringstream empty("");
  CHECK_THROWS_AS(read_distance_matrix(empty), Error);
  DistanceMatrix asym = d;
  asym(0, 1) += 0.1;
  CHECK_THROWS_AS(validate_distance_matrix(asym), Error);
  DistanceMatrix diag = d;
  diag(2, 2) = 1.0;
  CHECK_THROWS_AS(validate_distance_matrix(diag), Error);
}

TEST_CASE("simplex budget") {
  const FlagComplex k = clique_complex(BoolArray::Constant(12, 12, true), 3);
  CHECK(k.total() == 12 + 66 + 220 + 495);
  try {
    clique_complex(BoolArray::Constant(12, 12, true), 3, 100);
    FAIL("budget not enforced");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resource);
  }
  CHECK_THROWS_AS(betti(k, 4), Error);

  ::setenv("POLYRIPS_SIMPLEX_BUDGET", "1234", 1);
  CHECK(simplex_budget() == 1234);
  ::setenv("POLYRIPS_SIMPLEX_BUDGET", "lots", 1);
  CHECK_THROWS_AS(simplex_budget(), Error);
  ::unsetenv("POLYRIPS_SIMPLEX_BUDGET");
  CHECK(simplex_budget() == kDefaultSimplexBudget);
}
