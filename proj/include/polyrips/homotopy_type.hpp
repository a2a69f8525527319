#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace polyrips {

// Exact rational in lowest terms with positive denominator.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction reduced(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

// Homotopy types that occur for clique complexes of cyclic graphs and for
// Vietoris-Rips complexes of regular polygons below r_n.
struct HomotopyType {
  enum class Kind { circle, odd_sphere, even_wedge };

  Kind kind = Kind::even_wedge;
  int dim = 0;
  int count = 0;  // number of wedge summands; 1 for spheres

  static HomotopyType sphere(int dim);
  static HomotopyType wedge(int dim, int count);

  // b_0 .. b_{size-1} over any field.
  std::vector<long> betti(int size) const;
  std::string str() const;

  friend bool operator==(const HomotopyType&, const HomotopyType&) = default;
};

// Clique complex type from the winding fraction and the number of periodic orbits.
HomotopyType homotopy_from_winding(Fraction wf, int orbit_count);

}  // namespace polyrips
