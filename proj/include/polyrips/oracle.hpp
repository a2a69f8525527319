#pragma once

// Brute-force flag-complex homology over F2, used to check the predictions
// independently of the cyclic-graph theory.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polyrips/geometry.hpp"

namespace polyrips {

using DistanceMatrix = Eigen::MatrixXd;

// Throws input errors for non-square, asymmetric, negative or nonzero-diagonal input.
void validate_distance_matrix(const DistanceMatrix& d);

DistanceMatrix read_distance_matrix(std::istream& in);
void write_distance_matrix(std::ostream& out, const DistanceMatrix& d);

// Pairwise Euclidean distances of sample points on P_n.
DistanceMatrix polygon_distances(int n, const std::vector<double>& points);

inline constexpr std::size_t kDefaultSimplexBudget = 10'000'000;

// kDefaultSimplexBudget unless POLYRIPS_SIMPLEX_BUDGET holds a positive integer.
std::size_t simplex_budget();

// Simplices of one dimension, vertex tuples stored flat and sorted lexicographically.
struct SimplexList {
  int dim = 0;
  std::vector<std::uint32_t> verts;

  std::size_t size() const { return verts.size() / static_cast<std::size_t>(dim + 1); }
  std::span<const std::uint32_t> operator[](std::size_t i) const {
    const std::size_t w = static_cast<std::size_t>(dim + 1);
    return {verts.data() + i * w, w};
  }
  // Index of a simplex given as a sorted tuple, or size() if absent.
  std::size_t find(std::span<const std::uint32_t> simplex) const;
};

struct FlagComplex {
  int vertex_count = 0;
  int max_dim = 0;
  std::vector<SimplexList> simplices;  // simplices[k] holds the k-simplices

  std::size_t count(int k) const { return simplices[static_cast<std::size_t>(k)].size(); }
  std::size_t total() const;
  long euler_characteristic() const;
};

FlagComplex vr_complex(const DistanceMatrix& d, double r, Convention convention, int max_dim,
                       std::size_t budget = simplex_budget());

// Flag complex of an explicit undirected graph.
FlagComplex clique_complex(const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>& adjacency, int max_dim,
                           std::size_t budget = simplex_budget());

// Rank over F2 of the boundary map from k-simplices to (k-1)-simplices.
std::size_t boundary_rank(const FlagComplex& k, int dim);

// b_0 .. b_{max_dim-1}; needs simplices up to dimension max_dim.
std::vector<long> betti(const FlagComplex& k, int max_dim);

// Rank of H_dim(VR(d; r)) -> H_dim(VR(d; r2)) induced by inclusion, r <= r2.
long two_scale_rank(const DistanceMatrix& d, double r, double r2, Convention convention, int dim, int max_dim,
                    std::size_t budget = simplex_budget());

using DiagramPoint = std::pair<double, double>;  // (birth, death); death may be +inf

// Exact bottleneck distance with infinity-norm ground cost and diagonal
// projection cost (death - birth) / 2.
double bottleneck(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b);

}  // namespace polyrips
