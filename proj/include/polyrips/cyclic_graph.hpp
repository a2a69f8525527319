#pragma once

// Finite cyclic graphs: vertices on the circle, each with an out-neighbourhood
// that is the contiguous counterclockwise run of its next `reach` vertices.

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

#include "polyrips/geometry.hpp"
#include "polyrips/homotopy_type.hpp"

namespace polyrips {

// adjacency(u, v) is true iff u -> v.
using Adjacency = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct CyclicityCheck {
  bool cyclic = true;
  // (u0, w, u1): an edge u0 -> u1 and a vertex w strictly between them that is
  // not on a path u0 -> w -> u1. Indices refer to the caller's numbering.
  std::optional<std::array<int, 3>> witness;
};

// Checks the cyclic condition for every edge. Positions need not be sorted.
CyclicityCheck check_cyclicity(const std::vector<double>& positions, const Adjacency& adjacency);

class CyclicGraph {
 public:
  // positions strictly increasing in [0,1); reach[i] counts the out-neighbours
  // i+1, ..., i+reach[i] (mod size). Throws on 2-cycles or a broken cyclic order.
  CyclicGraph(std::vector<double> positions, std::vector<int> reach);

  // C_n^k: n evenly spaced vertices, each reaching the next k. Requires 0 <= k < n/2.
  static CyclicGraph regular(int n, int k);

  // Vietoris-Rips graph of points of P_n at scale r < r_n, each edge oriented
  // along the counterclockwise half of the source's ball arc.
  static CyclicGraph from_points(int n, std::vector<double> points, double r, Convention convention);

  // From an explicit edge set; positions must be strictly increasing.
  static CyclicGraph from_adjacency(std::vector<double> positions, const Adjacency& adjacency);

  int size() const { return static_cast<int>(reach_.size()); }
  const std::vector<double>& positions() const { return positions_; }
  const std::vector<int>& reach() const { return reach_; }

  // Counterclockwise-most vertex of the closed out-neighbourhood.
  int furthest(int u) const { return (u + reach_[static_cast<std::size_t>(u)]) % size(); }
  bool has_edge(int u, int v) const;
  Adjacency adjacency() const;

 private:
  std::vector<double> positions_;
  std::vector<int> reach_;
};

enum class VertexClass { periodic, fast, slow };

struct OrbitReport {
  int length = 0;   // common length of the periodic orbits
  int winding = 0;  // common winding number of the periodic orbits
  Fraction wf;      // winding / length in lowest terms
  int orbit_count = 0;
  std::vector<std::vector<int>> orbits;  // each listed in iteration order
  std::vector<VertexClass> classes;
  std::vector<int> steps_to_cycle;  // 0 for periodic vertices
  int pre_periodic = 0;             // non-periodic vertices, all of which reach a cycle

  int count(VertexClass c) const;
};

OrbitReport analyze(const CyclicGraph& graph);

HomotopyType homotopy_type(const CyclicGraph& graph);

}  // namespace polyrips
