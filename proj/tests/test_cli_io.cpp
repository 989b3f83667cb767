#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "subscan/cli.hpp"
#include "subscan/errors.hpp"
#include "subscan/polytext.hpp"
#include "subscan/report_json.hpp"
#include "subscan/testkit.hpp"
#include "support.hpp"

using namespace subscan;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

PolyQ q(std::initializer_list<long> c) {
  std::vector<Rat> v;
  for (long x : c) v.emplace_back(x);
  return PolyQ(std::move(v));
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("subscan_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string exe() {
  const char* e = std::getenv("SUBSCAN_EXE");
  return e ? e : "";
}

int run_exe(const std::string& args, const std::string& log) {
  std::string cmd = "\"" + exe() + "\" " + args + " > \"" + log + "\" 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

ScanConfig quiet() {
  ScanConfig cfg;
  cfg.record_timings = false;
  return cfg;
}

}  // namespace

TEST_CASE("parse examples") {
  CHECK(parse_poly("x^4 - 10*x^2 + 1") == q({1, 0, -10, 0, 1}));
  CHECK(parse_poly("1 0 -10 0 1") == q({1, 0, -10, 0, 1}));
  CHECK_THROWS_AS(parse_poly("x^2 + y"), MultipleVariables);
  CHECK(parse_poly("# cyclotomic\nX^4+1\n") == q({1, 0, 0, 0, 1}));
  CHECK(parse_poly("3/4*x^2 - x") == PolyQ({Rat(0), Rat(-1), Rat(3, 4)}));
  CHECK_THROWS_AS(parse_poly("t^2 - 1"), MultipleVariables);
  CHECK(parse_poly("2x - x") == q({0, 1}));
  CHECK_THROWS_AS(parse_poly("x^^2"), SyntaxError);
  CHECK_THROWS_AS(parse_poly(""), SyntaxError);
  try {
    parse_poly("x^2 + * 3");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 6);
  }
}

TEST_CASE("render examples") {
  CHECK(render(q({1, 0, -10, 0, 1})) == "x^4 - 10*x^2 + 1");
  CHECK(render(PolyQ({Rat(0), Rat(1, 2)})) == "1/2*x");
  CHECK(render(PolyQ()) == "0");
  CHECK(render(q({-1, -1}), 'X') == "-X - 1");
}

TEST_CASE("parse and render round-trip") {
  std::mt19937_64 rng(107);
  for (int i = 0; i < 1000; ++i) {
    int deg = static_cast<int>(subscan::test::uniform(rng, 0, 15));
    std::vector<Rat> c(deg + 1);
    for (auto& x : c) x = subscan::test::uniform(rng, 0, 2) ? Rat(0) : subscan::test::random_rat(rng, 1000, 50);
    if (rng() % 5 == 0) {
      c[deg] = Rat(Int("123456789012345678901234567890"), Int(7 * 11 * 13));
      c[deg].canonicalize();
    }
    PolyQ p(c);
    CHECK(parse_poly(render(p)) == p);
    CHECK(parse_poly(render(p, 'X')) == p);
  }
}

TEST_CASE("report JSON round-trip") {
  for (const auto& entry : default_corpus()) {
    if (entry.poly.degree() > 9) continue;
    if (entry.poly.degree() % 2 == 0) {
      ScanConfig cfg;
      cfg.extra_deltas = {7, -11};
      auto r = quad_subfield_scan(to_q(entry.poly), cfg);
      json j = report_to_json(r);
      CHECK(j.at("schema_version") == kSchemaVersion);
      CHECK(report_from_json(j) == r);
      CHECK(report_from_json(json::parse(j.dump())) == r);
    }
    if (entry.poly.degree() % 3 == 0) {
      auto r = cubic_subfield_scan(to_q(entry.poly), quiet());
      CHECK(report_from_json(report_to_json(r)) == r);
    }
  }
  CHECK_THROWS_AS(report_from_json(json::parse("{\"kind\": 3}")), InputError);
}

TEST_CASE("integers in JSON are decimal strings") {
  auto entry = corpus_generate("multiquadratic", "2,3,5");
  json j = report_to_json(quad_subfield_scan(to_q(entry.poly), quiet()));
  CHECK(j.at("gcd_value").is_string());
  CHECK(j.at("input").at("degree").is_string());
  CHECK(j.at("stats").at("direct_tests").is_string());
  for (const auto& s : j.at("subfields")) {
    CHECK(s.at("delta").is_string());
    for (const auto& c : s.at("certificate").at("scaled_root")) CHECK(c.is_string());
  }
  RootCertificate c;
  c.h = PolyZ{Int(-2), Int(0), Int(1)};
  c.y = PolyZ{Int("98765432109876543210987654321"), Int(-1)};
  c.x = PolyQ({Rat(1, 3)});
  c.strategy = "lattice";
  c.prime = 18446744073709551557ull;
  c.precision = 256;
  CHECK(certificate_from_json(certificate_to_json(c)) == c);
}

TEST_CASE("in-process CLI on a corpus file") {
  TempDir tmp;
  std::string poly = tmp.file("mq8.txt");
  CHECK(run_cli({"corpus", "--kind", "multiquadratic", "--params", "2,3,5", "-o", poly}) == 0);
  json side = json::parse(slurp(poly + ".json"));
  CHECK(side.at("quad").size() == 7);
  std::string report = tmp.file("mq8.json");
  CHECK(run_cli({"quad", "-i", poly, "--json", report, "--no-timings"}) == 0);
  json j = json::parse(slurp(report));
  CHECK(j.at("subfields").size() == 7);
  CHECK(run_cli({"certify", "-i", poly, "--cert", report}) == 0);
  CHECK(run_cli({"quad", "-i", tmp.file("missing.txt")}) == 3);
  CHECK(run_cli({"frobnicate"}) == 3);
}

TEST_CASE("certify rejects every single-coefficient mutation") {
  TempDir tmp;
  std::string poly = tmp.file("f.txt");
  for (const char* params : {"2,3,5", "-1,5,13"}) {
    auto entry = corpus_generate("multiquadratic", params);
    write(poly, render(entry.poly) + "\n");
    json rep = report_to_json(quad_subfield_scan(to_q(entry.poly), quiet()));
    std::string good = tmp.file("good.json");
    write(good, rep.dump());
    REQUIRE(run_cli({"certify", "-i", poly, "--cert", good}) == 0);
    for (std::size_t s = 0; s < rep.at("subfields").size(); ++s) {
      json entry_json = rep.at("subfields")[s];
      std::size_t width = entry_json.at("certificate").at("scaled_root").size();
      for (std::size_t c = 0; c < width; ++c) {
        json bad = entry_json;
        auto& slot = bad["certificate"]["scaled_root"][c];
        slot = Int(Int(slot.get<std::string>()) + 1).get_str();
        std::string path = tmp.file("bad.json");
        write(path, bad.dump());
        CHECK(run_cli({"certify", "-i", poly, "--cert", path}) == 1);
      }
    }
  }
}

TEST_CASE("external binary") {
  if (exe().empty()) {
    MESSAGE("SUBSCAN_EXE not set; skipping");
    return;
  }
  TempDir tmp;
  std::string zeta8 = tmp.file("zeta8.txt");
  write(zeta8, "x^4 + 1\n");
  std::string log = tmp.file("log.txt");
  std::string report = tmp.file("zeta8.json");
  CHECK(run_exe("quad -i \"" + zeta8 + "\" --json \"" + report + "\" --no-timings", log) == 0);
  json j = json::parse(slurp(report));
  std::set<std::string> ds;
  for (const auto& s : j.at("subfields")) ds.insert(s.at("delta").get<std::string>());
  CHECK(ds == std::set<std::string>{"-1", "2", "-2"});

  CHECK(run_exe("certify -i \"" + zeta8 + "\" --cert \"" + report + "\"", log) == 0);
  json tampered = j;
  auto& y0 = tampered["subfields"][0]["certificate"]["scaled_root"][0];
  y0 = Int(Int(y0.get<std::string>()) + 1).get_str();
  std::string bad = tmp.file("bad.json");
  write(bad, tampered.dump());
  CHECK(run_exe("certify -i \"" + zeta8 + "\" --cert \"" + bad + "\"", log) != 0);
  CHECK(slurp(log).find("REJECT") != std::string::npos);

  std::string mq = tmp.file("mq.txt");
  CHECK(run_exe("corpus --kind multiquadratic --params 2,3,5 -o \"" + mq + "\"", log) == 0);
  json side = json::parse(slurp(mq + ".json"));
  CHECK(side.at("quad").size() == 7);
  CHECK(parse_poly(side.at("poly").get<std::string>()).degree() == 8);

  CHECK(run_exe("quad -i \"" + zeta8 + "\" --delta 3 --json -", log) == 0);
  CHECK(slurp(log).find("certified_absent") != std::string::npos);
  CHECK(run_exe("quad -i \"" + zeta8 + "\" --delta 3 --absence-bound 5", log) == 2);
  write(tmp.file("two.txt"), "x^2 + y\n");
  CHECK(run_exe("quad -i \"" + tmp.file("two.txt") + "\"", log) == 3);

  // byte-identical reports across runs and thread counts
  std::string r1 = tmp.file("r1.json"), r2 = tmp.file("r2.json");
  CHECK(run_exe("quad -i \"" + mq + "\" --json \"" + r1 + "\" --no-timings", log) == 0);
  CHECK(run_exe("quad -i \"" + mq + "\" --json \"" + r2 + "\" --no-timings --threads 3", log) == 0);
  CHECK(slurp(r1) == slurp(r2));

  std::string bench_dir = tmp.file("bench");
  fs::create_directories(bench_dir);
  fs::copy_file(zeta8, bench_dir + "/zeta8.txt");
  CHECK(run_exe("bench --dir \"" + bench_dir + "\" --json \"" + tmp.file("bench.json") + "\"", log) == 0);
  json b = json::parse(slurp(tmp.file("bench.json")));
  CHECK(b.at("results").size() == 1);
}
