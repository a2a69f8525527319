#include "polyrips/homotopy_type.hpp"

#include <numeric>

#include "polyrips/error.hpp"

namespace polyrips {

Fraction Fraction::reduced(std::int64_t num, std::int64_t den) {
  if (den == 0) fail(ErrorKind::input, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Fraction{0, 1} : Fraction{num / g, den / g};
}

HomotopyType HomotopyType::sphere(int dim) {
  return {dim == 1 ? Kind::circle : Kind::odd_sphere, dim, 1};
}

HomotopyType HomotopyType::wedge(int dim, int count) { return {Kind::even_wedge, dim, count}; }

std::vector<long> HomotopyType::betti(int size) const {
  std::vector<long> b(static_cast<std::size_t>(std::max(size, 0)), 0);
  if (b.empty()) return b;
  b[0] = 1;
  if (kind == Kind::even_wedge && dim == 0) {
    b[0] = count + 1;
  } else if (dim < size) {
    b[static_cast<std::size_t>(dim)] += count;
  }
  return b;
}

namespace {

std::string superscript(long v) {
  static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s;
  for (char c : std::to_string(v)) s += digits[c - '0'];
  return s;
}

}  // namespace

std::string HomotopyType::str() const {
  if (kind != Kind::even_wedge) return "S" + superscript(dim);
  if (count == 0) return "pt";
  if (count == 1) return "S" + superscript(dim);
  return "∨" + superscript(count) + "S" + superscript(dim);
}

HomotopyType homotopy_from_winding(Fraction wf, int orbit_count) {
  if (wf.num < 0 || 2 * wf.num >= wf.den) fail(ErrorKind::input, "winding fraction outside [0, 1/2): " + wf.str());
  // l/(2l+1) < p/q  <=>  l (q - 2p) < p
  const std::int64_t gap = wf.den - 2 * wf.num;
  if (wf.num % gap == 0 && wf.den == 2 * (wf.num / gap) + 1) {
    return HomotopyType::wedge(static_cast<int>(2 * wf.num), orbit_count - 1);
  }
  const std::int64_t l = wf.num / gap;
  return HomotopyType::sphere(static_cast<int>(2 * l + 1));
}

}  // namespace polyrips
