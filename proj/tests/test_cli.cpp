#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(POLYRIPS_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / ("polyrips_cli_" + name)).string(); }

bool has(const Run& r, const std::string& needle) { return r.out.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("barcode subcommand") {
  const Run text = run("barcode --n 15 --convention lt --format text");
  CHECK(text.code == 0);
  CHECK(has(text, "H1 (0, 1.69420134177] x1"));
  CHECK(has(text, "H2 (1.69420134177, 1.73205080757] x4"));
  CHECK(has(text, "H4 (1.86054729915, 1.90211303259] x2"));

  const Run json = run("barcode --n 6 --convention leq --format json");
  CHECK(json.code == 0);
  CHECK(has(json, "\"multiplicity\": 4"));
  CHECK(has(json, "\"ephemeral\": true"));

  const Run three = run("barcode --n 3");
  CHECK(three.code == 2);
  CHECK(has(three, "r_3 = 0: no cyclic regime"));

  const std::string svg = temp_path("bar.svg");
  CHECK(run("barcode --n 9 --format svg --out " + svg).code == 0);
  std::ifstream in(svg);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("<svg", 0) == 0);
}

TEST_CASE("sample then analyze") {
  const std::string path = temp_path("sample.txt");
  const Run s = run("sample --n 6 --l 1 --z 3 --eps 0.1 --scale 1.6 --seed 5 --out " + path);
  CHECK(s.code == 0);
  const Run a = run("analyze --points " + path + " --scale 1.6 --convention leq");
  CHECK(a.code == 0);
  CHECK(has(a, "wf=1/3, P=3, type=∨²S²"));

  const Run big = run("analyze --points " + path + " --scale 1.8");
  CHECK(big.code == 4);

  const std::string p12 = temp_path("p12.txt");
  {
    std::ofstream out(p12);
    out << "n=12\n";
    for (int i = 0; i < 12; ++i) out << i / 12.0 << "\n";
  }
  const Run c124 = run("analyze --points " + p12 + " --scale 1.8 --convention lt");
  CHECK(c124.code == 0);
  CHECK(has(c124, "P=4"));
  CHECK(has(c124, "∨³S²"));

  const std::string empty = temp_path("empty.txt");
  { std::ofstream out(empty); }
  CHECK(run("analyze --points " + empty + " --scale 1.0").code == 2);
}

TEST_CASE("stars, gh and verify") {
  const Run st = run("stars --n 8 --l 1 --grid 10000 --validate");
  CHECK(st.code == 0);
  CHECK(has(st, "monotonic: PASS, crossings: 24/24"));

  const Run gh = run("gh --n 6");
  CHECK(gh.code == 0);
  CHECK(has(gh, "[0.116, 0.134], metric bound 0.0986"));
  CHECK(has(gh, "PH bound dominates"));

  const Run v = run("verify --n 6 --l 1 --scale 1.6 --density 0.2 --max-dim 3");
  CHECK(v.code == 0);
  CHECK(has(v, "MATCH"));
  CHECK_FALSE(has(v, "MISMATCH"));
}

TEST_CASE("argument errors") {
  CHECK(run("").code != 0);
  CHECK(run("barcode --n six").code == 2);
  CHECK(run("barcode --n 6 --format pdf").code == 2);
  CHECK(run("sample --n 8 --l 1 --z 3 --eps 0.1 --scale 1.64").code == 2);
  CHECK(run("analyze --points /nonexistent/file --scale 1.0").code == 2);
}
