#include "polyrips/barcode_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "polyrips/error.hpp"

namespace polyrips {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
  return buf;
}

Convention parse_convention(const std::string& s) {
  if (s == "strict") return Convention::strict;
  if (s == "closed") return Convention::closed;
  fail(ErrorKind::input, "unknown convention: " + s);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::input, std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::input, std::string("missing field: ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::input, std::string("wrong type for field: ") + key);
  }
}

}  // namespace

double round_significant(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string interval_text(const Interval& iv) {
  std::ostringstream os;
  os << "H" << iv.dim << " " << (iv.birth_closed ? "[" : "(") << fmt(iv.birth) << ", " << fmt(iv.death) << (iv.death_closed ? "]" : ")")
     << " x" << iv.multiplicity;
  if (iv.ephemeral) os << " ephemeral";
  if (iv.clipped_at_rn) os << " clipped";
  return os.str();
}

std::string barcode_text(const Barcode& bc) {
  std::ostringstream os;
  os << "n=" << bc.n << " convention=" << to_string(bc.convention) << " r_n=" << fmt(cyclic_threshold(bc.n)) << "\n";
  for (const Interval& iv : bc.intervals) os << interval_text(iv) << "\n";
  if (bc.unknown_beyond) os << "unknown beyond " << fmt(*bc.unknown_beyond) << "\n";
  return os.str();
}

std::string barcode_json(const Barcode& bc) {
  json intervals = json::array();
  for (const Interval& iv : bc.intervals) {
    intervals.push_back({{"dim", iv.dim},
                         {"birth", round_significant(iv.birth)},
                         {"death", round_significant(iv.death)},
                         {"birth_closed", iv.birth_closed},
                         {"death_closed", iv.death_closed},
                         {"multiplicity", iv.multiplicity},
                         {"ephemeral", iv.ephemeral},
                         {"clipped_at_rn", iv.clipped_at_rn}});
  }
  json out{{"schema_version", kSchemaVersion}, {"n", bc.n}, {"convention", to_string(bc.convention)}, {"intervals", intervals}};
  out["unknown_beyond"] = bc.unknown_beyond ? json(round_significant(*bc.unknown_beyond)) : json(nullptr);
  return out.dump(2) + "\n";
}

Barcode parse_barcode_json(const std::string& text) {
  const json j = parse_json(text);
  if (field<int>(j, "schema_version") != kSchemaVersion) fail(ErrorKind::input, "unsupported schema_version");
  Barcode bc;
  bc.n = field<int>(j, "n");
  bc.convention = parse_convention(field<std::string>(j, "convention"));
  for (const json& e : field<json>(j, "intervals")) {
    Interval iv;
    iv.dim = field<int>(e, "dim");
    iv.birth = field<double>(e, "birth");
    iv.death = field<double>(e, "death");
    iv.birth_closed = field<bool>(e, "birth_closed");
    iv.death_closed = field<bool>(e, "death_closed");
    iv.multiplicity = field<int>(e, "multiplicity");
    iv.ephemeral = field<bool>(e, "ephemeral");
    iv.clipped_at_rn = field<bool>(e, "clipped_at_rn");
    bc.intervals.push_back(iv);
  }
  if (j.contains("unknown_beyond") && !j.at("unknown_beyond").is_null()) bc.unknown_beyond = field<double>(j, "unknown_beyond");
  return bc;
}

std::string sample_json(const Sample& s) {
  json pts = json::array();
  for (double t : s.points) pts.push_back(round_significant(t));
  return json{{"schema_version", kSchemaVersion}, {"n", s.n}, {"points", pts}}.dump(2) + "\n";
}

Sample parse_sample_json(const std::string& text) {
  const json j = parse_json(text);
  if (field<int>(j, "schema_version") != kSchemaVersion) fail(ErrorKind::input, "unsupported schema_version");
  Sample s;
  s.n = field<int>(j, "n");
  s.points = field<std::vector<double>>(j, "points");
  return s;
}

std::string barcode_svg(const Barcode& bc) {
  constexpr int width = 800;
  constexpr int row_height = 40;
  constexpr int left = 110;
  constexpr int right = 20;
  const int rows = static_cast<int>(bc.intervals.size());
  const int height = row_height * std::max(rows, 1);
  const double rn = cyclic_threshold(bc.n);
  auto x_of = [&](double r) { return left + (width - left - right) * r / rn; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
     << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << x_of(rn) << "\" y1=\"0\" x2=\"" << x_of(rn) << "\" y2=\"" << height
     << "\" stroke=\"#999\" stroke-dasharray=\"2,4\"/>\n";
  for (int i = 0; i < rows; ++i) {
    const Interval& iv = bc.intervals[static_cast<std::size_t>(i)];
    const double y = row_height * (i + 0.5);
    os << "<text x=\"6\" y=\"" << y + 5 << "\" font-family=\"monospace\" font-size=\"13\">H" << iv.dim;
    if (iv.multiplicity != 1) os << " x" << iv.multiplicity;
    os << "</text>\n";
    const double x0 = x_of(iv.birth);
    const double x1 = x_of(iv.death);
    const char* dash = iv.ephemeral ? " stroke-dasharray=\"3,3\"" : "";
    if (iv.death > iv.birth) {
      os << "<line x1=\"" << x0 << "\" y1=\"" << y << "\" x2=\"" << x1 << "\" y2=\"" << y << "\" stroke=\"black\" stroke-width=\"4\"" << dash << "/>\n";
    } else {
      os << "<circle cx=\"" << x0 << "\" cy=\"" << y << "\" r=\"3\" fill=\"none\" stroke=\"black\"" << dash << "/>\n";
    }
    os << "<text x=\"" << x0 << "\" y=\"" << y - 8 << "\" font-size=\"10\">" << (iv.birth_closed ? "[" : "(") << fmt(iv.birth) << "</text>\n";
    os << "<text x=\"" << x1 << "\" y=\"" << y + 16 << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(iv.death)
       << (iv.death_closed ? "]" : ")") << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace polyrips
