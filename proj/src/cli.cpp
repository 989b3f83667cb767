#include "subscan/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "subscan/errors.hpp"
#include "subscan/polytext.hpp"
#include "subscan/report_json.hpp"
#include "subscan/scan.hpp"
#include "subscan/testkit.hpp"

namespace subscan {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUBFIELD_SCAN_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return v;
    throw InputError("SUBFIELD_SCAN_SEED is not a decimal integer");
  }
  return kDefaultSeed;
}

struct ScanOptions {
  std::string input;
  std::string json_out;
  std::uint64_t sieve_bound = 10000;
  std::size_t sieve_count = 40;
  std::size_t combo_limit = 1024;
  unsigned max_precision = 0;
  std::string strategy = "auto";
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t absence_bound = 100000;
  std::vector<std::string> deltas;
  bool no_timings = false;
};

void add_scan_options(CLI::App* cmd, ScanOptions& o, bool quadratic) {
  cmd->add_option("-i,--input", o.input, "polynomial file")->required();
  cmd->add_option("--json", o.json_out, "write the JSON report here ('-' for stdout)");
  cmd->add_option("--sieve-bound", o.sieve_bound, "largest sieve prime");
  cmd->add_option("--sieve-count", o.sieve_count, "maximum number of sieve constraints");
  cmd->add_option("--combo-limit", o.combo_limit, "largest assignment count for the combinatorial root method");
  cmd->add_option("--max-precision", o.max_precision, "cap on p^k in decimal digits (0: 200*n/16)");
  cmd->add_option("--strategy", o.strategy, "root method")->check(CLI::IsMember({"auto", "combinatorial", "lattice"}));
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--threads", o.threads, "parallel root tests")->check(CLI::Range(1u, 256u));
  cmd->add_option("--absence-bound", o.absence_bound, "prime bound for absence witnesses");
  if (quadratic) cmd->add_option("--delta", o.deltas, "also decide these discriminants");
  cmd->add_flag("--no-timings", o.no_timings, "omit timings so reports are byte-identical across runs");
}

ScanConfig make_config(const ScanOptions& o) {
  ScanConfig cfg;
  cfg.sieve.prime_bound = o.sieve_bound;
  cfg.sieve.max_constraints = o.sieve_count;
  cfg.root.combo_limit = o.combo_limit;
  cfg.root.precision_cap_digits = o.max_precision;
  cfg.root.strategy = o.strategy == "combinatorial" ? RootStrategy::Combinatorial
                      : o.strategy == "lattice"     ? RootStrategy::Lattice
                                                    : RootStrategy::Auto;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.absence_prime_bound = o.absence_bound;
  cfg.record_timings = !o.no_timings;
  for (const auto& d : o.deltas) {
    Int v;
    if (v.set_str(d, 10) != 0) throw InputError("bad --delta value '" + d + "'");
    cfg.extra_deltas.push_back(v);
  }
  return cfg;
}

std::string join_ints(const std::vector<Int>& v) {
  std::string s;
  for (const Int& x : v) s += (s.empty() ? "" : " ") + x.get_str();
  return s;
}

void print_report(const ScanReport& r, std::ostream& out) {
  out << "field: " << render(r.poly) << " (degree " << r.poly.degree() << ", scale " << r.scale << ")\n";
  out << "candidate primes: " << (r.include_minus_one ? "-1 " : "") << join_ints(r.candidate_primes) << " (gcd " << r.gcd_value << ")\n";
  out << "sieve: " << r.sieve.rows << " rows, solution dimension " << r.sieve.solution_dim << (r.sieve.inconsistent ? ", inconsistent" : "") << "\n";
  out << (r.kind == "cubic" ? "cyclic cubic" : "quadratic") << " subfields: " << r.subfields.size() << "\n";
  for (const auto& e : r.subfields) {
    out << "  ";
    if (e.delta)
      out << "Q(sqrt(" << *e.delta << "))";
    else
      out << render(e.minpoly);
    out << "  " << e.origin << "  x = " << render(e.certificate.x, 't') << "\n";
  }
  if (!r.excluded.empty()) {
    out << "excluded: " << r.excluded.size() << "\n";
    for (const auto& e : r.excluded) {
      out << "  " << (e.delta ? e.delta->get_str() : render(e.minpoly)) << "  " << to_string(e.status);
      if (e.witness_prime) out << " (witness " << *e.witness_prime << ")";
      out << "\n";
    }
  }
  out << "direct tests: " << r.stats.direct_tests;
  if (r.kind == "cubic") out << ", derived root tests: " << r.stats.derived_root_tests;
  out << "\n";
}

int run_scan(const ScanOptions& o, bool quadratic) {
  PolyQ f = parse_poly(read_file(o.input));
  ScanConfig cfg = make_config(o);
  ScanReport r = quadratic ? quad_subfield_scan(f, cfg) : cubic_subfield_scan(f, cfg);
  print_report(r, std::cout);
  if (!o.json_out.empty()) write_file(o.json_out, report_to_json(r).dump(2) + "\n");
  return r.has_unproven() ? 2 : 0;
}

// Certificates to check: (h, certificate) pairs from a report, one entry,
// a bare certificate, or an array of any of these.
void collect_certificates(const json& j, std::vector<RootCertificate>& out) {
  if (j.is_array()) {
    for (const json& x : j) collect_certificates(x, out);
    return;
  }
  if (!j.is_object()) throw InputError("certify: unexpected JSON value");
  if (j.contains("subfields")) {
    collect_certificates(j.at("subfields"), out);
    return;
  }
  if (j.contains("certificate")) {
    RootCertificate cert = certificate_from_json(j.at("certificate"));
    PolyZ h;
    if (j.contains("delta")) {
      Int d;
      if (!j.at("delta").is_string() || d.set_str(j.at("delta").get<std::string>(), 10) != 0) throw InputError("certify: bad delta");
      h = PolyZ{-d, Int(0), Int(1)};
    } else {
      h = to_z(parse_poly(j.at("minpoly").get<std::string>()));
    }
    if (!(h == cert.h)) throw InputError("certify: entry polynomial and certificate disagree");
    out.push_back(std::move(cert));
    return;
  }
  out.push_back(certificate_from_json(j));
}

int run_certify(const std::string& input, const std::string& cert_path) {
  PolyQ f = parse_poly(read_file(input));
  NormalizedInput ni = normalize_input(f);
  NumberField field(ni.f);
  json j;
  try {
    j = json::parse(read_file(cert_path));
  } catch (const json::exception& e) {
    throw InputError(std::string("certify: ") + e.what());
  }
  std::vector<RootCertificate> certs;
  try {
    collect_certificates(j, certs);
  } catch (const json::exception& e) {
    throw InputError(std::string("certify: ") + e.what());
  }
  if (certs.empty()) throw InputError("certify: no certificates found");
  std::size_t bad = 0;
  for (const auto& c : certs) {
    bool ok = verify_certificate(field, c);
    if (ok && !c.x.is_zero()) {
      // the stored normalized root must agree with the scaled one
      PolyQ y = field.mul(to_q(field.derivative()), c.x);
      ok = y == to_q(field.reduce(c.y));
    }
    std::cout << (ok ? "ok      " : "REJECT  ") << render(c.h, 'y') << "\n";
    if (!ok) ++bad;
  }
  std::cout << certs.size() - bad << "/" << certs.size() << " certificates verified\n";
  return bad == 0 ? 0 : 1;
}

int run_corpus(const std::string& kind, const std::string& params, const std::string& out) {
  CorpusEntry e = corpus_generate(kind, params);
  std::string text = render(e.poly) + "\n";
  if (out.empty()) {
    std::cout << text << corpus_sidecar(e).dump(2) << "\n";
  } else {
    write_file(out, text);
    write_file(out + ".json", corpus_sidecar(e).dump(2) + "\n");
    std::cout << "wrote " << out << " (degree " << e.poly.degree() << ") and " << out << ".json\n";
  }
  return 0;
}

int run_bench(const std::string& dir, const std::string& json_out, const ScanOptions& o) {
  if (!fs::is_directory(dir)) throw InputError("bench: not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& ent : fs::directory_iterator(dir))
    if (ent.is_regular_file() && ent.path().extension() != ".json") files.push_back(ent.path());
  std::sort(files.begin(), files.end());
  ScanConfig cfg = make_config(o);
  json results = json::array();
  bool unproven = false;
  for (const auto& path : files) {
    PolyQ f = parse_poly(read_file(path.string()));
    json row;
    row["file"] = path.filename().string();
    row["degree"] = std::to_string(f.degree());
    for (bool quadratic : {true, false}) {
      if (f.degree() < (quadratic ? 2 : 3)) continue;
      auto t0 = std::chrono::steady_clock::now();
      ScanReport r = quadratic ? quad_subfield_scan(f, cfg) : cubic_subfield_scan(f, cfg);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      unproven = unproven || r.has_unproven();
      json part;
      if (!o.no_timings) part["ms"] = ms;
      part["subfields"] = std::to_string(r.subfields.size());
      part["direct_tests"] = std::to_string(r.stats.direct_tests);
      part["unproven"] = r.has_unproven();
      fs::path sidecar = path;
      sidecar += ".json";
      if (fs::exists(sidecar)) {
        json truth = json::parse(read_file(sidecar.string()));
        const json& expected = truth.at(quadratic ? "quad" : "cubic");
        part["matches_truth"] = expected.size() == r.subfields.size();
      }
      row[quadratic ? "quad" : "cubic"] = part;
      std::cout << row["file"].get<std::string>() << " " << (quadratic ? "quad " : "cubic") << " " << r.subfields.size() << " subfields";
      if (!o.no_timings) std::cout << " " << ms << " ms";
      std::cout << "\n";
    }
    results.push_back(row);
  }
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["results"] = results;
  write_file(json_out, doc.dump(2) + "\n");
  return unproven ? 2 : 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

int run_cli(const std::vector<std::string>& args_in) {
  CLI::App app{"Quadratic and cyclic cubic subfields of number fields"};
  app.require_subcommand(1);
  ScanOptions quad_opts, cubic_opts, bench_opts;
  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  quad_opts.seed = cubic_opts.seed = bench_opts.seed = seed;
  auto* quad = app.add_subcommand("quad", "quadratic subfields");
  add_scan_options(quad, quad_opts, true);
  auto* cubic = app.add_subcommand("cubic", "cyclic cubic subfields");
  add_scan_options(cubic, cubic_opts, false);

  std::string cert_input, cert_file;
  auto* certify = app.add_subcommand("certify", "re-verify certificates");
  certify->add_option("-i,--input", cert_input, "polynomial file")->required();
  certify->add_option("--cert", cert_file, "report, entry or certificate JSON")->required();

  std::string kind, params, corpus_out;
  auto* corpus = app.add_subcommand("corpus", "emit a test polynomial with ground truth");
  corpus->add_option("--kind", kind, "corpus kind")->required()->check(CLI::IsMember({"multiquadratic", "cyclotomic", "cubic-compositum"}));
  corpus->add_option("--params", params, "construction parameters")->required();
  corpus->add_option("-o,--output", corpus_out, "polynomial file; the sidecar goes to FILE.json");

  std::string bench_dir, bench_json;
  auto* bench = app.add_subcommand("bench", "scan every polynomial file in a directory");
  bench->add_option("--dir", bench_dir, "directory of polynomial files")->required();
  bench->add_option("--json", bench_json, "timings output")->required();
  bench->add_option("--seed", bench_opts.seed, "random seed");
  bench->add_flag("--no-timings", bench_opts.no_timings, "omit timings");

  std::vector<std::string> args(args_in.rbegin(), args_in.rend());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  try {
    if (*quad) return run_scan(quad_opts, true);
    if (*cubic) return run_scan(cubic_opts, false);
    if (*certify) return run_certify(cert_input, cert_file);
    if (*corpus) return run_corpus(kind, params, corpus_out);
    if (*bench) return run_bench(bench_dir, bench_json, bench_opts);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 3;
}

}  // namespace subscan
