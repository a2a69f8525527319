#pragma once

// Homotopy types and barcodes of the Vietoris-Rips complexes of P_n below r_n.

#include <optional>
#include <string>
#include <vector>

#include "polyrips/geometry.hpp"
#include "polyrips/homotopy_type.hpp"

namespace polyrips {

struct Interval {
  int dim = 0;
  double birth = 0.0;
  double death = 0.0;
  bool birth_closed = false;
  bool death_closed = false;
  int multiplicity = 1;
  bool ephemeral = false;  // summary of diagonal classes [r, r], closed convention only
  bool clipped_at_rn = false;

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Barcode {
  int n = 0;
  Convention convention = Convention::strict;
  std::vector<Interval> intervals;
  // Scales at and above this value are not covered by the theory for this n.
  std::optional<double> unknown_beyond;

  friend bool operator==(const Barcode&, const Barcode&) = default;
};

// One level of the threshold ladder: (2l+1)-stars exist exactly for scales in [s, t].
struct StarLevel {
  int l = 0;
  double s = 0.0;
  double t = 0.0;
  int q = 0;  // n / gcd(n, 2l+1)
  bool certified = false;
  bool t_at_threshold = false;
};

struct Ladder {
  int n = 0;
  std::vector<StarLevel> levels;  // all levels with s below r_n, in order
  // Set when a level beyond the last listed one could not be located.
  std::optional<double> unknown_beyond;
};

Ladder threshold_ladder(int n);

HomotopyType homotopy_type_polygon(int n, double r, Convention convention);

Barcode barcode(int n, Convention convention);

// Rank of H_{2l} under VR_<=(P_n; r) -> VR_<=(P_n; r2) for s <= r < r2 <= t.
int inclusion_rank(int n, int l, double r, double r2);

}  // namespace polyrips
