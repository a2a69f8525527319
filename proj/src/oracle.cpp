#include "polyrips/oracle.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <istream>
#include <iterator>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "polyrips/error.hpp"

namespace polyrips {

namespace {

using Bits = std::vector<std::uint64_t>;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

bool lex_less(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

class CliqueGrower {
 public:
  CliqueGrower(const BoolArray& adj, int max_dim, std::size_t budget) : m_(static_cast<int>(adj.rows())), words_((m_ + 63) / 64), max_dim_(max_dim), budget_(budget) {
    upper_.assign(static_cast<std::size_t>(m_), Bits(static_cast<std::size_t>(words_), 0));
    for (int i = 0; i < m_; ++i) {
      for (int j = i + 1; j < m_; ++j) {
        if (adj(i, j)) upper_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j / 64)] |= std::uint64_t{1} << (j % 64);
      }
    }
    cand_.assign(static_cast<std::size_t>(max_dim + 1), Bits(static_cast<std::size_t>(words_), 0));
  }

  FlagComplex run() {
    out_.vertex_count = m_;
    out_.max_dim = max_dim_;
    out_.simplices.resize(static_cast<std::size_t>(max_dim_ + 1));
    for (int k = 0; k <= max_dim_; ++k) out_.simplices[static_cast<std::size_t>(k)].dim = k;
    Bits& all = cand_[0];
    for (int v = 0; v < m_; ++v) all[static_cast<std::size_t>(v / 64)] |= std::uint64_t{1} << (v % 64);
    grow(0);
    return std::move(out_);
  }

 private:
  void grow(int depth) {
    const Bits& cand = cand_[static_cast<std::size_t>(depth)];
    for (int w = 0; w < words_; ++w) {
      std::uint64_t word = cand[static_cast<std::size_t>(w)];
      while (word != 0) {
        const int v = w * 64 + std::countr_zero(word);
        word &= word - 1;
        clique_.push_back(static_cast<std::uint32_t>(v));
        auto& list = out_.simplices[static_cast<std::size_t>(depth)].verts;
        list.insert(list.end(), clique_.begin(), clique_.end());
        if (++emitted_ > budget_) {
          fail(ErrorKind::resource, "simplex budget of " + std::to_string(budget_) + " exceeded (set POLYRIPS_SIMPLEX_BUDGET to raise it)");
        }
        if (depth < max_dim_) {
          Bits& next = cand_[static_cast<std::size_t>(depth + 1)];
          const Bits& up = upper_[static_cast<std::size_t>(v)];
          bool any = false;
          for (int x = 0; x < words_; ++x) {
            next[static_cast<std::size_t>(x)] = cand[static_cast<std::size_t>(x)] & up[static_cast<std::size_t>(x)];
            any = any || next[static_cast<std::size_t>(x)] != 0;
          }
          if (any) grow(depth + 1);
        }
        clique_.pop_back();
      }
    }
  }

  int m_;
  int words_;
  int max_dim_;
  std::size_t budget_;
  std::size_t emitted_ = 0;
  std::vector<Bits> upper_;
  std::vector<Bits> cand_;
  std::vector<std::uint32_t> clique_;
  FlagComplex out_;
};

// Column reduction over F2. Columns are sorted row positions; the pivot of a
// column is its largest entry.
class Reducer {
 public:
  explicit Reducer(std::size_t rows) : pivot_col_(rows, -1) {}

  // Returns the pivot row of the reduced column, or -1 if it reduces to zero.
  std::int64_t add(std::vector<std::uint32_t> col) {
    std::vector<std::uint32_t> scratch;
    while (!col.empty()) {
      const std::uint32_t low = col.back();
      const std::int64_t owner = pivot_col_[low];
      if (owner < 0) {
        pivot_col_[low] = static_cast<std::int64_t>(stored_.size());
        stored_.push_back(std::move(col));
        return low;
      }
      const auto& other = stored_[static_cast<std::size_t>(owner)];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(), std::back_inserter(scratch));
      col.swap(scratch);
    }
    return -1;
  }

  std::size_t rank() const { return stored_.size(); }

 private:
  std::vector<std::int64_t> pivot_col_;
  std::vector<std::vector<std::uint32_t>> stored_;
};

// Boundary column of simplex `idx` of dimension `dim`, as sorted positions
// under `row_pos` (identity when empty).
std::vector<std::uint32_t> boundary_column(const FlagComplex& k, int dim, std::size_t idx, const std::vector<std::uint32_t>& row_pos) {
  const SimplexList& faces = k.simplices[static_cast<std::size_t>(dim - 1)];
  const auto simplex = k.simplices[static_cast<std::size_t>(dim)][idx];
  std::vector<std::uint32_t> face(static_cast<std::size_t>(dim));
  std::vector<std::uint32_t> col;
  col.reserve(static_cast<std::size_t>(dim + 1));
  for (int drop = 0; drop <= dim; ++drop) {
    std::size_t j = 0;
    for (int v = 0; v <= dim; ++v) {
      if (v != drop) face[j++] = simplex[static_cast<std::size_t>(v)];
    }
    const std::size_t f = faces.find(face);
    if (f == faces.size()) fail(ErrorKind::internal, "face missing from flag complex");
    col.push_back(row_pos.empty() ? static_cast<std::uint32_t>(f) : row_pos[f]);
  }
  std::sort(col.begin(), col.end());
  return col;
}

std::size_t env_budget() {
  const char* raw = std::getenv("POLYRIPS_SIMPLEX_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultSimplexBudget;
  std::size_t value = 0;
  const char* end = raw + std::char_traits<char>::length(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc{} || ptr != end || value == 0) fail(ErrorKind::input, "POLYRIPS_SIMPLEX_BUDGET must be a positive integer");
  return value;
}

}  // namespace

void validate_distance_matrix(const DistanceMatrix& d) {
  if (d.rows() != d.cols()) fail(ErrorKind::input, "distance matrix must be square");
  if (d.rows() == 0) fail(ErrorKind::input, "distance matrix is empty");
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    if (d(i, i) != 0.0) fail(ErrorKind::input, "distance matrix diagonal must be zero");
    for (Eigen::Index j = 0; j < i; ++j) {
      if (!std::isfinite(d(i, j)) || d(i, j) < 0.0) fail(ErrorKind::input, "distance matrix entries must be finite and nonnegative");
      if (d(i, j) != d(j, i)) fail(ErrorKind::input, "distance matrix must be symmetric");
    }
  }
}

DistanceMatrix read_distance_matrix(std::istream& in) {
  long m = 0;
  if (!(in >> m) || m <= 0) fail(ErrorKind::input, "distance matrix file must start with a positive size");
  DistanceMatrix d(m, m);
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < m; ++j) {
      if (!(in >> d(i, j))) fail(ErrorKind::input, "distance matrix file truncated at row " + std::to_string(i));
    }
  }
  validate_distance_matrix(d);
  return d;
}

void write_distance_matrix(std::ostream& out, const DistanceMatrix& d) {
  out << d.rows() << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < d.rows(); ++i) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) out << (j ? " " : "") << d(i, j);
    out << '\n';
  }
}

DistanceMatrix polygon_distances(int n, const std::vector<double>& points) {
  const auto m = static_cast<Eigen::Index>(points.size());
  std::vector<Point2<double>> xy;
  xy.reserve(points.size());
  for (double t : points) xy.push_back(embed(n, t));
  DistanceMatrix d = DistanceMatrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      d(i, j) = d(j, i) = (xy[static_cast<std::size_t>(i)] - xy[static_cast<std::size_t>(j)]).norm();
    }
  }
  return d;
}

std::size_t simplex_budget() { return env_budget(); }

std::size_t SimplexList::find(std::span<const std::uint32_t> simplex) const {
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (lex_less((*this)[mid], simplex)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::equal(simplex.begin(), simplex.end(), (*this)[lo].begin())) return lo;
  return size();
}

std::size_t FlagComplex::total() const {
  std::size_t sum = 0;
  for (const auto& s : simplices) sum += s.size();
  return sum;
}

long FlagComplex::euler_characteristic() const {
  long chi = 0;
  for (int k = 0; k <= max_dim; ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(count(k));
  return chi;
}

FlagComplex clique_complex(const BoolArray& adjacency, int max_dim, std::size_t budget) {
  if (adjacency.rows() != adjacency.cols() || adjacency.rows() == 0) fail(ErrorKind::input, "adjacency must be square and nonempty");
  if (max_dim < 0) fail(ErrorKind::input, "max_dim must be nonnegative");
  BoolArray sym = adjacency || adjacency.transpose();
  return CliqueGrower(sym, max_dim, budget).run();
}

FlagComplex vr_complex(const DistanceMatrix& d, double r, Convention convention, int max_dim, std::size_t budget) {
  validate_distance_matrix(d);
  const Eigen::Index m = d.rows();
  BoolArray adj = BoolArray::Constant(m, m, false);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) adj(i, j) = adj(j, i) = within_scale(d(i, j), r, convention);
  }
  return clique_complex(adj, max_dim, budget);
}

std::size_t boundary_rank(const FlagComplex& k, int dim) {
  if (dim <= 0) return 0;
  if (dim > k.max_dim) fail(ErrorKind::input, "boundary rank above the complex's dimension cap");
  Reducer red(k.count(dim - 1));
  for (std::size_t i = 0; i < k.count(dim); ++i) red.add(boundary_column(k, dim, i, {}));
  return red.rank();
}

std::vector<long> betti(const FlagComplex& k, int max_dim) {
  if (max_dim < 1) fail(ErrorKind::input, "betti needs max_dim >= 1");
  if (max_dim > k.max_dim) fail(ErrorKind::input, "betti up to dimension " + std::to_string(max_dim - 1) + " needs simplices of dimension " + std::to_string(max_dim));
  // Top-down with clearing: a simplex that is the pivot of a higher boundary
  // column has a boundary column reducing to zero.
  std::vector<std::size_t> rank(static_cast<std::size_t>(max_dim + 2), 0);
  std::vector<char> cleared;
  for (int dim = max_dim; dim >= 1; --dim) {
    Reducer red(k.count(dim - 1));
    std::vector<char> next(k.count(dim - 1), 0);
    for (std::size_t i = 0; i < k.count(dim); ++i) {
      if (!cleared.empty() && cleared[i]) continue;
      const std::int64_t low = red.add(boundary_column(k, dim, i, {}));
      if (low >= 0) next[static_cast<std::size_t>(low)] = 1;
    }
    rank[static_cast<std::size_t>(dim)] = red.rank();
    cleared.swap(next);
  }
  std::vector<long> b(static_cast<std::size_t>(max_dim));
  for (int dim = 0; dim < max_dim; ++dim) {
    b[static_cast<std::size_t>(dim)] = static_cast<long>(k.count(dim)) - static_cast<long>(rank[static_cast<std::size_t>(dim)]) -
                                       static_cast<long>(rank[static_cast<std::size_t>(dim + 1)]);
  }
  return b;
}

long two_scale_rank(const DistanceMatrix& d, double r, double r2, Convention convention, int dim, int max_dim, std::size_t budget) {
  if (!(r <= r2)) fail(ErrorKind::input, "two_scale_rank needs r <= r2");
  if (dim < 0) fail(ErrorKind::input, "dimension must be nonnegative");
  if (dim + 1 > max_dim) fail(ErrorKind::input, "two_scale_rank in dimension " + std::to_string(dim) + " needs max_dim >= " + std::to_string(dim + 1));
  const FlagComplex big = vr_complex(d, r2, convention, dim + 1, budget);

  // Filtration order per dimension: simplices of the small complex first.
  auto order_of = [&](int k, std::size_t& small_count) {
    const SimplexList& list = big.simplices[static_cast<std::size_t>(k)];
    std::vector<std::uint32_t> first;
    std::vector<std::uint32_t> rest;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto s = list[i];
      bool inside = true;
      for (std::size_t a = 0; a < s.size() && inside; ++a) {
        for (std::size_t b = a + 1; b < s.size() && inside; ++b) inside = within_scale(d(s[a], s[b]), r, convention);
      }
      (inside ? first : rest).push_back(static_cast<std::uint32_t>(i));
    }
    small_count = first.size();
    first.insert(first.end(), rest.begin(), rest.end());
    return first;  // position -> simplex index
  };
  auto positions = [](const std::vector<std::uint32_t>& order) {
    std::vector<std::uint32_t> pos(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = static_cast<std::uint32_t>(p);
    return pos;
  };

  std::size_t small_dim = 0;
  std::size_t small_up = 0;
  const auto order_dim = order_of(dim, small_dim);
  const auto order_up = order_of(dim + 1, small_up);
  const auto pos_dim = positions(order_dim);

  // Classes of the small complex killed by the time the large one is reached.
  Reducer up(order_dim.size());
  std::vector<char> is_low(order_dim.size(), 0);
  long killed = 0;
  for (std::uint32_t idx : order_up) {
    const std::int64_t low = up.add(boundary_column(big, dim + 1, idx, pos_dim));
    if (low < 0) continue;
    is_low[static_cast<std::size_t>(low)] = 1;
    if (static_cast<std::size_t>(low) < small_dim) ++killed;
  }

  // Cycles born in the small complex: dim-simplices whose boundary column reduces to zero.
  std::size_t small_rank = 0;
  if (dim > 0) {
    std::size_t small_faces = 0;
    const auto order_face = order_of(dim - 1, small_faces);
    const auto pos_face = positions(order_face);
    Reducer down(order_face.size());
    for (std::size_t p = 0; p < small_dim; ++p) {
      if (is_low[p]) continue;
      down.add(boundary_column(big, dim, order_dim[p], pos_face));
    }
    small_rank = down.rank();
  }
  return static_cast<long>(small_dim - small_rank) - killed;
}

double bottleneck(const std::vector<DiagramPoint>& a, const std::vector<DiagramPoint>& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto persistence = [](const DiagramPoint& p) { return std::isinf(p.second) ? inf : (p.second - p.first) / 2.0; };
  auto cost = [](const DiagramPoint& p, const DiagramPoint& q) {
    const double db = std::abs(p.first - q.first);
    if (std::isinf(p.second) || std::isinf(q.second)) return (std::isinf(p.second) && std::isinf(q.second)) ? db : inf;
    return std::max(db, std::abs(p.second - q.second));
  };
  for (const auto* set : {&a, &b}) {
    for (const auto& p : *set) {
      if (std::isnan(p.first) || std::isnan(p.second) || std::isinf(p.first) || p.second < p.first) {
        fail(ErrorKind::input, "diagram points need finite birth <= death");
      }
    }
  }
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t size = na + nb;
  if (size == 0) return 0.0;

  // Left: points of a, then diagonal slots for b. Right: points of b, then diagonal slots for a.
  auto edge_cost = [&](std::size_t i, std::size_t j) {
    if (i < na && j < nb) return cost(a[i], b[j]);
    if (i < na) return j - nb == i ? persistence(a[i]) : inf;
    if (j < nb) return i - na == j ? persistence(b[j]) : inf;
    return 0.0;
  };

  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const double c = edge_cost(i, j);
      if (std::isfinite(c)) candidates.push_back(c);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto feasible = [&](double eps) {
    std::vector<std::int64_t> match_right(size, -1);
    std::vector<char> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t i) {
      for (std::size_t j = 0; j < size; ++j) {
        if (seen[j] || !(edge_cost(i, j) <= eps)) continue;
        seen[j] = 1;
        if (match_right[j] < 0 || augment(static_cast<std::size_t>(match_right[j]))) {
          match_right[j] = static_cast<std::int64_t>(i);
          return true;
        }
      }
      return false;
    };
    for (std::size_t i = 0; i < size; ++i) {
      seen.assign(size, 0);
      if (!augment(i)) return false;
    }
    return true;
  };

  if (!feasible(candidates.back())) return inf;
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace polyrips
