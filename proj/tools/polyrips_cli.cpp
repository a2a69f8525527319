// Command-line front end. Exit codes: 0 ok, 1 other failure or MISMATCH,
// 2 usage or input, 3 not certifiable, 4 non-cyclic, 5 resource.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyrips/barcode_io.hpp"
#include "polyrips/cyclic_graph.hpp"
#include "polyrips/gh_bounds.hpp"
#include "polyrips/oracle.hpp"
#include "polyrips/predictor.hpp"
#include "polyrips/sampler.hpp"
#include "polyrips/stars.hpp"

using namespace polyrips;

namespace {

const std::map<std::string, Convention> kConventions{{"lt", Convention::strict}, {"leq", Convention::closed}};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input: return 2;
    case ErrorKind::not_certifiable: return 3;
    case ErrorKind::non_cyclic: return 4;
    case ErrorKind::resource: return 5;
    default: return 1;
  }
}

std::string g(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Writes to --out when given, otherwise to stdout.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) fail(ErrorKind::input, "cannot open output file: " + out_path);
  f << text;
}

Sample load_sample(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::input, "cannot open sample file: " + path);
  return read_sample(f);
}

// A point whose ball of radius r meets P_n in more than one arc, if one shows
// up among vertices, edge midpoints and a fine grid.
std::optional<double> disconnected_ball(int n, double r) {
  constexpr int fine = 4096;
  auto runs = [&](double p) {
    const auto c = embed(n, p);
    int count = 0;
    bool prev = (embed(n, (fine - 1.0) / fine) - c).norm() <= r;
    for (int i = 0; i < fine; ++i) {
      const bool in = (embed(n, static_cast<double>(i) / fine) - c).norm() <= r;
      if (in && !prev) ++count;
      prev = in;
    }
    return count;
  };
  for (int k = 0; k < n; ++k) {
    for (double p : {static_cast<double>(k) / n, (k + 0.5) / n}) {
      if (runs(p) > 1) return p;
    }
  }
  for (int i = 0; i < 997; ++i) {
    const double p = static_cast<double>(i) / 997;
    if (runs(p) > 1) return p;
  }
  return std::nullopt;
}

void require_cyclic_scale(int n, double r) {
  const double rn = cyclic_threshold(n);
  if (r < rn) return;
  std::string msg = "scale " + g(r) + " >= r_n = " + g(rn) + ": outside the cyclic regime";
  if (const auto p = disconnected_ball(n, r)) msg += "; the ball of radius " + g(r) + " about arc coordinate " + g(*p) + " meets P_n in more than one arc";
  fail(ErrorKind::non_cyclic, msg);
}

std::string counts_line(const OrbitReport& rep) {
  std::ostringstream os;
  os << "periodic=" << rep.count(VertexClass::periodic) << " fast=" << rep.count(VertexClass::fast) << " slow=" << rep.count(VertexClass::slow);
  return os.str();
}

int run_verify(int n, int l, double r, double target, int max_dim, Convention conv) {
  if (!(target > 0.0)) fail(ErrorKind::input, "--density must be positive");
  if (max_dim < 1) fail(ErrorKind::input, "--max-dim must be at least 1");
  require_cyclic_scale(n, r);

  // Evenly spaced points (a multiple of n) plus the star crossings at r when
  // r lies in [s, t]; the crossings make the sample's winding fraction l/(2l+1).
  const CrossingSet cs = n >= 4 * l + 2 ? crossings(n, l, r) : CrossingSet{};
  const bool pinned = cs.status != CrossingStatus::out_of_range;
  std::vector<double> pts;
  for (int k = n;; k += n) {
    pts = pinned ? even_with_crossings(n, l, r, k) : std::vector<double>{};
    if (!pinned) {
      for (int i = 0; i < k; ++i) pts.push_back(static_cast<double>(i) / k);
    }
    if (density(pts, n) <= target) break;
  }

  std::cout << "polygon: n=" << n << " r=" << g(r) << " convention=" << to_string(conv) << "\n";
  try {
    std::cout << "predicted VR(P_n; r): " << homotopy_type_polygon(n, r, conv).str() << "\n";
  } catch (const Error& e) {
    std::cout << "predicted VR(P_n; r): unavailable (" << e.what() << ")\n";
  }
  std::cout << "sample: " << pts.size() << " points, density " << g(density(pts, n), 6) << (pinned ? ", star crossings included" : ", evenly spaced") << "\n";

  const OrbitReport rep = analyze(CyclicGraph::from_points(n, pts, r, conv));
  const HomotopyType engine = homotopy_from_winding(rep.wf, rep.orbit_count);
  std::cout << "engine: wf=" << rep.wf.str() << " P=" << rep.orbit_count << " type=" << engine.str() << "\n";

  const FlagComplex k = vr_complex(polygon_distances(n, pts), r, conv, max_dim);
  const std::vector<long> oracle = betti(k, max_dim);
  const std::vector<long> expected = engine.betti(max_dim);
  bool all = true;
  for (int d = 0; d < max_dim; ++d) {
    const bool ok = oracle[static_cast<std::size_t>(d)] == expected[static_cast<std::size_t>(d)];
    all = all && ok;
    std::cout << "b" << d << ": oracle=" << oracle[static_cast<std::size_t>(d)] << " engine=" << expected[static_cast<std::size_t>(d)] << " "
              << (ok ? "MATCH" : "MISMATCH") << "\n";
  }
  std::cout << (all ? "MATCH" : "MISMATCH") << " (" << k.total() << " simplices)\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vietoris-Rips complexes of regular polygons"};
  app.require_subcommand(1);

  int n = 0;
  int l = 1;
  std::string convention = "lt";
  std::string format = "text";
  std::string out;

  auto* barcode_cmd = app.add_subcommand("barcode", "barcode of VR(P_n; r) for r < r_n");
  barcode_cmd->add_option("--n", n, "number of polygon sides")->required();
  barcode_cmd->add_option("--convention", convention)->check(CLI::IsMember({"lt", "leq"}));
  barcode_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json", "svg"}));
  barcode_cmd->add_option("--out", out, "output file (default stdout)");

  std::string points_path;
  double scale = 0.0;
  auto* analyze_cmd = app.add_subcommand("analyze", "winding fraction and orbits of a sample at scale r");
  analyze_cmd->add_option("--points", points_path, "sample file")->required();
  analyze_cmd->add_option("--scale", scale)->required();
  analyze_cmd->add_option("--convention", convention)->check(CLI::IsMember({"lt", "leq"}));
  analyze_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  int grid = 10000;
  bool validate = false;
  auto* stars_cmd = app.add_subcommand("stars", "star thresholds, crossings and the monotonicity scan");
  stars_cmd->add_option("--n", n)->required();
  stars_cmd->add_option("--l", l)->required();
  stars_cmd->add_option("--grid", grid)->check(CLI::PositiveNumber);
  stars_cmd->add_flag("--validate", validate);

  int z = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  auto* sample_cmd = app.add_subcommand("sample", "eps-dense sample with z periodic orbits");
  sample_cmd->add_option("--n", n)->required();
  sample_cmd->add_option("--l", l)->required();
  sample_cmd->add_option("--z", z)->required();
  sample_cmd->add_option("--eps", eps)->required();
  sample_cmd->add_option("--scale", scale)->required();
  sample_cmd->add_option("--seed", seed);
  sample_cmd->add_option("--out", out);
  sample_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  int gh_grid = kMetricGrid;
  auto* gh_cmd = app.add_subcommand("gh", "Gromov-Hausdorff bounds between P_n and the circle");
  gh_cmd->add_option("--n", n)->required();
  gh_cmd->add_option("--grid", gh_grid)->check(CLI::PositiveNumber);

  double target = 0.0;
  int max_dim = 3;
  std::string verify_convention = "leq";
  auto* verify_cmd = app.add_subcommand("verify", "predictions against the homology oracle on a certified sample");
  verify_cmd->add_option("--n", n)->required();
  verify_cmd->add_option("--l", l)->required();
  verify_cmd->add_option("--scale", scale)->required();
  verify_cmd->add_option("--density", target)->required();
  verify_cmd->add_option("--max-dim", max_dim);
  verify_cmd->add_option("--convention", verify_convention)->check(CLI::IsMember({"lt", "leq"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const Convention conv = kConventions.at(verify_cmd->parsed() ? verify_convention : convention);

  try {
    if (barcode_cmd->parsed()) {
      const Barcode bc = barcode(n, conv);
      emit(out, format == "json" ? barcode_json(bc) : format == "svg" ? barcode_svg(bc) : barcode_text(bc));
    } else if (analyze_cmd->parsed()) {
      const Sample s = load_sample(points_path);
      require_cyclic_scale(s.n, scale);
      const OrbitReport rep = analyze(CyclicGraph::from_points(s.n, s.points, scale, conv));
      const HomotopyType type = homotopy_from_winding(rep.wf, rep.orbit_count);
      if (format == "json") {
        nlohmann::json j{{"n", s.n},
                         {"scale", scale},
                         {"convention", to_string(conv)},
                         {"wf", rep.wf.str()},
                         {"length", rep.length},
                         {"winding", rep.winding},
                         {"P", rep.orbit_count},
                         {"type", type.str()},
                         {"periodic", rep.count(VertexClass::periodic)},
                         {"fast", rep.count(VertexClass::fast)},
                         {"slow", rep.count(VertexClass::slow)}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "wf=" << rep.wf.str() << ", P=" << rep.orbit_count << ", type=" << type.str() << "\n";
        std::cout << "length=" << rep.length << " winding=" << rep.winding << " " << counts_line(rep) << "\n";
      }
    } else if (stars_cmd->parsed()) {
      const Thresholds th = thresholds(n, l);
      std::cout << "s=" << g(th.s) << " t=" << g(th.t) << (th.exact ? " (closed form)" : " (numeric)") << (th.t_at_threshold ? " t=r_n" : "")
                << (th.certified ? "" : " uncertified") << "\n";
      if (!th.warning.empty()) std::cout << "warning: " << th.warning << "\n";
      if (validate) {
        const MonotonicityReport rep = validate_monotonic(n, l, grid);
        std::cout << "monotonic: " << (rep.pass ? "PASS" : "FAIL") << ", crossings: ";
        if (rep.vertex_crossings == rep.midpoint_crossings) {
          std::cout << rep.vertex_crossings << "/" << rep.expected_crossings << "\n";
        } else {
          std::cout << rep.vertex_crossings << "/" << rep.expected_crossings << " vertex, " << rep.midpoint_crossings << "/" << rep.expected_crossings
                    << " midpoint\n";
        }
        std::cout << "worst violation " << g(rep.worst_violation, 3) << ", side range [" << g(rep.grid_min) << ", " << g(rep.grid_max) << "]\n";
        if (!rep.pass) {
          std::cout << "finding: " << rep.detail << "\n";
          return 1;
        }
      }
    } else if (sample_cmd->parsed()) {
      const Sample s = construct({n, l, z, eps, scale, seed});
      std::ostringstream os;
      if (format == "json") {
        os << sample_json(s);
      } else {
        write_sample(os, s);
      }
      emit(out, os.str());
      if (!out.empty()) std::cout << s.points.size() << " points, density " << g(density(s.points, n), 6) << ", " << z << " periodic orbits\n";
    } else if (gh_cmd->parsed()) {
      const GHReport rep = gh_report(n, gh_grid);
      std::cout << "[" << g(rep.lower, 3) << ", " << g(rep.upper, 3) << "], metric bound " << g(rep.metric.strong_radial, 3) << "\n";
      std::cout << "hausdorff_upper=" << g(rep.hausdorff_upper) << " ph_lower=" << (rep.ph_lower ? g(*rep.ph_lower) : "n/a (3 does not divide n)")
                << " weak=" << g(rep.metric.weak) << " strong_radial=" << g(rep.metric.strong_radial) << " (+-" << g(rep.metric.resolution, 2) << ")\n";
      if (rep.ph_lower) std::cout << (rep.ph_dominates ? "PH bound dominates" : "metric bound not dominated") << "\n";
    } else if (verify_cmd->parsed()) {
      return run_verify(n, l, scale, target, max_dim, conv);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
