#pragma once

// Finite samples of P_n with a prescribed number of periodic orbits at a
// scale inside a star window, and the density measure used to certify them.

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace polyrips {

struct SampleSpec {
  int n = 0;
  int l = 0;
  int z = 0;         // periodic orbits wanted, at least n / gcd(n, 2l+1)
  double eps = 0.0;  // Euclidean density radius
  double r = 0.0;    // scale with s < r < t
  std::uint64_t seed = 0;
};

struct Sample {
  int n = 0;
  std::vector<double> points;  // sorted arc coordinates
};

// Needs (2l+1) | n. The result is invariant under rotation by 1/(2l+1), is
// eps-dense, and its closed-convention graph at scale r has exactly z periodic
// orbits; both are checked before returning.
Sample construct(const SampleSpec& spec);

// Supremum over P_n of the Euclidean distance to the nearest sample point.
double density(const std::vector<double>& points, int n);

// Periodic-orbit count of k evenly spaced points at scale r, closed convention.
int min_orbits_check(int n, int l, double r, int k);

// k evenly spaced points together with every basepoint whose star has side r.
// For wf at least l/(2l+1) the crossing points pin the winding fraction.
std::vector<double> even_with_crossings(int n, int l, double r, int k);

Sample read_sample(std::istream& in);
void write_sample(std::ostream& out, const Sample& sample);

}  // namespace polyrips
