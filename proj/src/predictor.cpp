#include "polyrips/predictor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "polyrips/stars.hpp"

namespace polyrips {

namespace {

constexpr int kExistenceGrid = 2000;

// Below 4l+2 vertices no star is guaranteed; check on a grid that none closes
// up before r_n. Returns false when some basepoint already has one.
bool no_star_below_threshold(int n, int l) {
  const double rn = cyclic_threshold(n);
  for (int i = 0; i < kExistenceGrid; ++i) {
    if (star_defect(n, l, static_cast<double>(i) / kExistenceGrid, rn) > 1e-9) return false;
  }
  return true;
}

std::string pair_str(int n, int l) {
  return "(n, l) = (" + std::to_string(n) + ", " + std::to_string(l) + ")";
}

}  // namespace

Ladder threshold_ladder(int n) {
  require_polygon(n);
  if (n == 3) fail(ErrorKind::input, "r_3 = 0: no cyclic regime");
  static std::mutex mutex;
  static std::map<int, Ladder> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  Ladder ladder{n, {}, std::nullopt};
  const double rn = cyclic_threshold(n);
  for (int l = 1;; ++l) {
    if (n < 4 * l + 2) {
      if (!no_star_below_threshold(n, l)) {
        ladder.unknown_beyond = ladder.levels.empty() ? 0.0 : ladder.levels.back().t;
      }
      break;
    }
    const Thresholds th = thresholds(n, l);
    if (th.s >= rn - kGeomTol) break;
    ladder.levels.push_back({l, th.s, th.t, n / std::gcd(n, 2 * l + 1), th.certified, th.t_at_threshold});
    if (!th.certified || th.t_at_threshold) break;
  }
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(n, ladder);
  return ladder;
}

HomotopyType homotopy_type_polygon(int n, double r, Convention convention) {
  require_polygon(n);
  if (n == 3) fail(ErrorKind::input, "r_3 = 0: no cyclic regime");
  if (!(r > 0.0)) fail(ErrorKind::input, "scale must be positive");
  if (r >= cyclic_threshold(n)) fail(ErrorKind::non_cyclic, "outside cyclic regime: r >= r_n");
  const Ladder ladder = threshold_ladder(n);
  const bool strict = convention == Convention::strict;
  for (const StarLevel& lv : ladder.levels) {
    const bool at_s = std::abs(r - lv.s) <= kGeomTol;
    const bool at_t = std::abs(r - lv.t) <= kGeomTol;
    if (!lv.certified) {
      // Only the odd regime below a safely-bounded s is known.
      if (r < lv.s - 1e-6) return HomotopyType::sphere(2 * lv.l - 1);
      fail(ErrorKind::not_certifiable, "requires conjecture: " + pair_str(n, lv.l));
    }
    if (strict) {
      if (r < lv.s || at_s) return HomotopyType::sphere(2 * lv.l - 1);
      if (r < lv.t || at_t) return HomotopyType::wedge(2 * lv.l, lv.q - 1);
    } else {
      if (at_s) return HomotopyType::wedge(2 * lv.l, lv.q - 1);
      if (r < lv.s) return HomotopyType::sphere(2 * lv.l - 1);
      if (at_t) return HomotopyType::wedge(2 * lv.l, 2 * lv.q - 1);
      if (r < lv.t) return HomotopyType::wedge(2 * lv.l, 3 * lv.q - 1);
    }
  }
  if (ladder.unknown_beyond && r > *ladder.unknown_beyond) {
    fail(ErrorKind::not_certifiable, "requires conjecture: scale beyond the covered range for n = " + std::to_string(n));
  }
  const int next_l = ladder.levels.empty() ? 1 : ladder.levels.back().l + 1;
  return HomotopyType::sphere(2 * next_l - 1);
}

Barcode barcode(int n, Convention convention) {
  require_polygon(n);
  if (n == 3) fail(ErrorKind::input, "r_3 = 0: no cyclic regime");
  const double rn = cyclic_threshold(n);
  const bool strict = convention == Convention::strict;
  const Ladder ladder = threshold_ladder(n);
  Barcode bc{n, convention, {}, ladder.unknown_beyond};

  double prev_t = 0.0;
  bool open_tail = true;  // whether an odd class is alive after prev_t
  for (const StarLevel& lv : ladder.levels) {
    bc.intervals.push_back({2 * lv.l - 1, prev_t, lv.s, false, strict, 1, false, false});
    if (!lv.certified) {
      bc.unknown_beyond = lv.s;
      open_tail = false;
      break;
    }
    Interval even{2 * lv.l, lv.s, lv.t, !strict, true, lv.q - 1, false, false};
    if (lv.t_at_threshold) {
      even.death = rn;
      even.death_closed = false;
      even.clipped_at_rn = true;
    }
    bc.intervals.push_back(even);
    if (!strict) {
      Interval eph{2 * lv.l, lv.s, lv.t, false, false, 2 * lv.q, true, lv.t_at_threshold};
      bc.intervals.push_back(eph);
      if (!lv.t_at_threshold) bc.intervals.push_back({2 * lv.l, lv.t, lv.t, true, true, lv.q, true, false});
    }
    prev_t = lv.t;
    if (lv.t_at_threshold) {
      open_tail = false;
      break;
    }
  }
  if (open_tail) {
    const int dim = ladder.levels.empty() ? 1 : 2 * ladder.levels.back().l + 1;
    const double end = ladder.unknown_beyond ? *ladder.unknown_beyond : rn;
    if (!ladder.unknown_beyond) bc.intervals.push_back({dim, prev_t, end, false, false, 1, false, true});
  }
  return bc;
}

int inclusion_rank(int n, int l, double r, double r2) {
  if (!(r < r2)) fail(ErrorKind::input, "inclusion rank needs r < r2");
  const Ladder ladder = threshold_ladder(n);
  const auto it = std::find_if(ladder.levels.begin(), ladder.levels.end(), [&](const StarLevel& lv) { return lv.l == l; });
  if (it == ladder.levels.end()) fail(ErrorKind::input, "no star level " + pair_str(n, l) + " below r_n");
  if (!it->certified) fail(ErrorKind::not_certifiable, "requires conjecture: " + pair_str(n, l));
  if (r >= it->s - kGeomTol && r2 <= it->t + kGeomTol) return it->q - 1;

  // Outside [s, t] the map is only known where both scales share an odd regime,
  // on which inclusions are homotopy equivalences.
  const HomotopyType a = homotopy_type_polygon(n, r, Convention::closed);
  const HomotopyType b = homotopy_type_polygon(n, r2, Convention::closed);
  const bool same_odd_regime = a.kind != HomotopyType::Kind::even_wedge && a == b;
  if (same_odd_regime) {
    bool crosses = false;
    for (const StarLevel& lv : ladder.levels) crosses = crosses || (r < lv.s && r2 >= lv.s);
    if (!crosses) return static_cast<int>(a.betti(2 * l + 1)[static_cast<std::size_t>(2 * l)]);
  }
  std::ostringstream os;
  os << "scales (" << r << ", " << r2 << ") are not inside [s, t] = [" << it->s << ", " << it->t << "] for " << pair_str(n, l)
     << "; regimes " << a.str() << " and " << b.str();
  fail(ErrorKind::input, os.str());
}

}  // namespace polyrips
