#include "subscan/report_json.hpp"

#include "subscan/errors.hpp"
#include "subscan/polytext.hpp"

namespace subscan {

using nlohmann::json;

namespace {

std::string str(const Int& v) { return v.get_str(); }
std::string str(std::uint64_t v) { return std::to_string(v); }

Int to_int(const json& j) {
  if (!j.is_string()) throw InputError("report: expected an integer string");
  Int v;
  if (v.set_str(j.get<std::string>(), 10) != 0) throw InputError("report: bad integer '" + j.get<std::string>() + "'");
  return v;
}

std::uint64_t to_u64(const json& j) {
  Int v = to_int(j);
  if (v < 0 || !v.fits_ulong_p()) throw InputError("report: integer out of range");
  return v.get_ui();
}

json int_list(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(str(x));
  return a;
}

json poly_coeffs(const PolyZ& p, std::size_t min_len = 0) {
  json a = json::array();
  for (std::size_t i = 0; i < std::max(p.size(), min_len); ++i) a.push_back(str(p[i]));
  return a;
}

PolyZ poly_from_coeffs(const json& a) {
  std::vector<Int> c;
  for (const json& x : a) c.push_back(to_int(x));
  return PolyZ(std::move(c));
}

PolyZ poly_from_text(const json& j) {
  if (!j.is_string()) throw InputError("report: expected polynomial text");
  PolyQ p = parse_poly(j.get<std::string>());
  if (!is_integral(p)) throw InputError("report: polynomial is not integral");
  return to_z(p);
}

json exponents_json(const F3Vector& v) {
  json a = json::array();
  for (auto e : v) a.push_back(std::to_string(e));
  return a;
}

F3Vector exponents_from(const json& a) {
  F3Vector v;
  for (const json& x : a) v.push_back(static_cast<std::uint8_t>(to_u64(x)));
  return v;
}

json kummer_json(const EisensteinInt& a) { return json::array({str(a.x), str(a.y)}); }
EisensteinInt kummer_from(const json& a) { return EisensteinInt(to_int(a.at(0)), to_int(a.at(1))); }

}  // namespace

json certificate_to_json(const RootCertificate& cert) {
  json j;
  j["h"] = render(cert.h);
  j["scaled_root"] = poly_coeffs(cert.y);
  j["scaling"] = "fprime";
  json x = json::array();
  for (const Rat& c : cert.x.coefficients()) x.push_back(c.get_str());
  j["root"] = x;
  j["strategy"] = cert.strategy;
  j["prime"] = str(cert.prime);
  j["precision"] = str(static_cast<std::uint64_t>(cert.precision));
  return j;
}

RootCertificate certificate_from_json(const json& j) {
  try {
    RootCertificate cert;
    if (j.contains("scaling") && j.at("scaling") != "fprime") throw InputError("certificate: unsupported scaling");
    cert.h = poly_from_text(j.at("h"));
    cert.y = poly_from_coeffs(j.at("scaled_root"));
    if (j.contains("root")) {
      std::vector<Rat> x;
      for (const json& c : j.at("root")) {
        Rat r;
        if (!c.is_string() || r.set_str(c.get<std::string>(), 10) != 0) throw InputError("certificate: bad rational");
        r.canonicalize();
        x.push_back(r);
      }
      cert.x = PolyQ(std::move(x));
    }
    cert.strategy = j.value("strategy", "");
    if (j.contains("prime")) cert.prime = to_u64(j.at("prime"));
    if (j.contains("precision")) cert.precision = static_cast<unsigned>(to_u64(j.at("precision")));
    return cert;
  } catch (const json::exception& e) {
    throw InputError(std::string("certificate: ") + e.what());
  }
}

json report_to_json(const ScanReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = r.kind;
  j["input"] = {{"poly", render(r.poly)}, {"degree", std::to_string(r.poly.degree())}, {"scale", str(r.scale)}};
  j["candidate_primes"] = int_list(r.candidate_primes);
  j["include_minus_one"] = r.include_minus_one;
  j["gcd_value"] = str(r.gcd_value);
  json primes = json::array();
  for (auto p : r.sieve.primes_used) primes.push_back(str(p));
  j["sieve"] = {{"primes_used", primes},
                {"rows", str(static_cast<std::uint64_t>(r.sieve.rows))},
                {"solution_dim", str(static_cast<std::uint64_t>(r.sieve.solution_dim))},
                {"inconsistent", r.sieve.inconsistent}};
  json subs = json::array();
  for (const SubfieldEntry& e : r.subfields) {
    json s;
    if (e.delta) s["delta"] = str(*e.delta);
    s["minpoly"] = render(e.minpoly);
    s["exponents"] = exponents_json(e.exponents);
    if (e.kummer) s["kummer"] = kummer_json(*e.kummer);
    s["origin"] = e.origin;
    s["status"] = "proved";
    s["certificate"] = certificate_to_json(e.certificate);
    subs.push_back(std::move(s));
  }
  j["subfields"] = subs;
  json excl = json::array();
  for (const ExcludedEntry& e : r.excluded) {
    json s;
    if (e.delta) s["delta"] = str(*e.delta);
    s["minpoly"] = render(e.minpoly);
    s["exponents"] = exponents_json(e.exponents);
    if (e.kummer) s["kummer"] = kummer_json(*e.kummer);
    s["origin"] = e.origin;
    s["status"] = to_string(e.status);
    if (e.witness_prime) s["witness_prime"] = str(*e.witness_prime);
    excl.push_back(std::move(s));
  }
  j["excluded"] = excl;
  json phases = json::object();
  for (const auto& [k, v] : r.stats.phase_ms) phases[k] = v;
  j["stats"] = {{"phase_ms", phases},
                {"direct_tests", str(static_cast<std::uint64_t>(r.stats.direct_tests))},
                {"derived_root_tests", str(static_cast<std::uint64_t>(r.stats.derived_root_tests))},
                {"dedup_tests", str(static_cast<std::uint64_t>(r.stats.dedup_tests))},
                {"candidates", str(static_cast<std::uint64_t>(r.stats.candidates))},
                {"seed", str(r.stats.seed)}};
  return j;
}

ScanReport report_from_json(const json& j) {
  try {
    if (j.at("schema_version") != kSchemaVersion) throw InputError("report: unsupported schema version");
    ScanReport r;
    r.kind = j.at("kind").get<std::string>();
    r.poly = poly_from_text(j.at("input").at("poly"));
    r.scale = to_int(j.at("input").at("scale"));
    for (const json& p : j.at("candidate_primes")) r.candidate_primes.push_back(to_int(p));
    r.include_minus_one = j.at("include_minus_one").get<bool>();
    r.gcd_value = to_int(j.at("gcd_value"));
    const json& sv = j.at("sieve");
    for (const json& p : sv.at("primes_used")) r.sieve.primes_used.push_back(to_u64(p));
    r.sieve.rows = to_u64(sv.at("rows"));
    r.sieve.solution_dim = to_u64(sv.at("solution_dim"));
    r.sieve.inconsistent = sv.at("inconsistent").get<bool>();
    for (const json& s : j.at("subfields")) {
      SubfieldEntry e;
      if (s.contains("delta")) e.delta = to_int(s.at("delta"));
      e.minpoly = poly_from_text(s.at("minpoly"));
      e.exponents = exponents_from(s.at("exponents"));
      if (s.contains("kummer")) e.kummer = kummer_from(s.at("kummer"));
      e.origin = s.at("origin").get<std::string>();
      e.certificate = certificate_from_json(s.at("certificate"));
      r.subfields.push_back(std::move(e));
    }
    for (const json& s : j.at("excluded")) {
      ExcludedEntry e;
      if (s.contains("delta")) e.delta = to_int(s.at("delta"));
      e.minpoly = poly_from_text(s.at("minpoly"));
      e.exponents = exponents_from(s.at("exponents"));
      if (s.contains("kummer")) e.kummer = kummer_from(s.at("kummer"));
      e.origin = s.at("origin").get<std::string>();
      e.status = entry_status_from_string(s.at("status").get<std::string>());
      if (s.contains("witness_prime")) e.witness_prime = to_u64(s.at("witness_prime"));
      r.excluded.push_back(std::move(e));
    }
    const json& st = j.at("stats");
    for (const auto& [k, v] : st.at("phase_ms").items()) r.stats.phase_ms[k] = v.get<double>();
    r.stats.direct_tests = to_u64(st.at("direct_tests"));
    r.stats.derived_root_tests = to_u64(st.at("derived_root_tests"));
    r.stats.dedup_tests = to_u64(st.at("dedup_tests"));
    r.stats.candidates = to_u64(st.at("candidates"));
    r.stats.seed = to_u64(st.at("seed"));
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

}  // namespace subscan
