#include <doctest.h>

#include <algorithm>
#include <set>

#include "subscan/errors.hpp"
#include "subscan/report_json.hpp"
#include "subscan/scan.hpp"
#include "subscan/testkit.hpp"
#include "support.hpp"

using namespace subscan;

namespace {

PolyQ q(std::initializer_list<long> c) {
  std::vector<Rat> v;
  for (long x : c) v.emplace_back(x);
  return PolyQ(std::move(v));
}

PolyZ z(std::initializer_list<long> c) {
  std::vector<Int> v;
  for (long x : c) v.emplace_back(x);
  return PolyZ(std::move(v));
}

std::vector<Int> deltas(const ScanReport& r) {
  std::vector<Int> out;
  for (const auto& s : r.subfields) out.push_back(*s.delta);
  std::sort(out.begin(), out.end());
  return out;
}

ScanConfig quiet() {
  ScanConfig cfg;
  cfg.record_timings = false;
  return cfg;
}

// Proved discriminants together with 1 form a group modulo squares.
bool closed_under_twists(const ScanReport& r) {
  std::set<Int> s;
  for (const auto& e : r.subfields) s.insert(*e.delta);
  for (const auto& a : s)
    for (const auto& b : s) {
      if (a == b) continue;
      if (!s.count(squarefree_part(a * b))) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("Q(zeta_8)") {
  auto r = quad_subfield_scan(q({1, 0, 0, 0, 1}), quiet());
  CHECK(deltas(r) == std::vector<Int>{-2, -1, 2});
  CHECK(r.excluded.empty());
  CHECK(!r.has_unproven());
  CHECK(check_report(r));
  for (const auto& s : r.subfields) {
    PolyQ x = s.certificate.x;
    if (*s.delta == -1) CHECK((x == q({0, 0, 1}) || x == q({0, 0, -1})));
    if (*s.delta == 2) CHECK((x == q({0, 1, 0, -1}) || x == q({0, -1, 0, 1})));
    if (*s.delta == -2) CHECK((x == q({0, 1, 0, 1}) || x == q({0, -1, 0, -1})));
  }
  CHECK(r.stats.direct_tests == 2);
}

TEST_CASE("small quadratic examples") {
  CHECK(deltas(quad_subfield_scan(q({-5, 0, 1}), quiet())) == std::vector<Int>{5});
  auto r = quad_subfield_scan(q({1, 0, -10, 0, 1}), quiet());
  CHECK(deltas(r) == std::vector<Int>{2, 3, 6});
  for (const auto& s : r.subfields) {
    if (*s.delta == 2) {
      std::vector<Rat> c{0, Rat(-9, 2), 0, Rat(1, 2)};
      PolyQ expect(c);
      CHECK((s.certificate.x == expect || s.certificate.x == -expect));
    }
    if (*s.delta == 3) {
      std::vector<Rat> c{0, Rat(11, 2), 0, Rat(-1, 2)};
      PolyQ expect(c);
      CHECK((s.certificate.x == expect || s.certificate.x == -expect));
    }
  }
  CHECK(quad_subfield_scan(q({1, 0, 0, 1}), quiet()).subfields.empty());
  // non-monic rational input is normalized first
  std::vector<Rat> raw{Rat(-5, 4), 0, Rat(1)};
  auto scaled = quad_subfield_scan(PolyQ(raw), quiet());
  CHECK(scaled.scale == 2);
  CHECK(deltas(scaled) == std::vector<Int>{5});
}

TEST_CASE("twist closure examples") {
  // basis slots: -1, 2, 3
  SpanTracker found(2, 3);
  found.add({0, 1, 0});
  found.add({0, 0, 1});
  CHECK(twist_closure_step(found, {}, {0, 1, 1}) == TwistOutcome::AutoSubfield);

  SpanTracker f2(2, 2);
  f2.add({0, 1});
  std::vector<F3Vector> excluded{{1, 0}};
  CHECK(twist_closure_step(f2, excluded, {1, 1}) == TwistOutcome::AutoExcluded);

  SpanTracker empty(2, 3);
  CHECK(twist_closure_step(empty, {}, {0, 0, 1}) == TwistOutcome::NeedsTest);
}

TEST_CASE("span tracker bookkeeping") {
  SpanTracker s(3, 3);
  CHECK(s.add({1, 2, 0}));
  CHECK(s.add({0, 1, 1}));
  CHECK(!s.add({1, 0, 1}));  // (1,2,0) + (0,1,1)
  CHECK(s.size() == 2);
  auto red = s.reduce({1, 0, 1});
  CHECK(red.residual == F3Vector{0, 0, 0});
  CHECK(red.coefficients == F3Vector{1, 1});
  // ell = 3: an excluded representative also covers its double
  std::vector<F3Vector> excl{{0, 0, 1}};
  SpanTracker none(3, 3);
  CHECK(twist_closure_step(none, excl, {0, 0, 2}) == TwistOutcome::AutoExcluded);
}

TEST_CASE("twist closure coefficients reconstruct the input") {
  std::mt19937_64 rng(103);
  for (unsigned ell : {2u, 3u}) {
    for (int i = 0; i < 200; ++i) {
      std::size_t w = 1 + rng() % 8;
      SpanTracker s(ell, w);
      std::vector<F3Vector> gens;
      for (int g = 0; g < 4; ++g) {
        F3Vector v(w);
        for (auto& x : v) x = static_cast<std::uint8_t>(rng() % ell);
        if (s.add(v)) gens.push_back(v);
      }
      F3Vector t(w);
      for (auto& x : t) x = static_cast<std::uint8_t>(rng() % ell);
      auto red = s.reduce(t);
      for (std::size_t c = 0; c < w; ++c) {
        unsigned sum = red.residual[c];
        for (std::size_t g = 0; g < gens.size(); ++g) sum += red.coefficients[g] * gens[g][c];
        CHECK(sum % ell == t[c]);
      }
    }
  }
}

TEST_CASE("cubic examples") {
  auto c79 = corpus_generate("cubic-compositum", "7,9");
  auto r = cubic_subfield_scan(to_q(c79.poly), quiet());
  CHECK(r.subfields.size() == 4);
  for (const auto& truth : c79.cubic) {
    int hits = 0;
    for (const auto& s : r.subfields) hits += same_cubic_field(s.minpoly, truth);
    CHECK(hits == 1);
  }
  CHECK(check_report(r));

  auto c7s5 = corpus_generate("cubic-compositum", "7,sqrt5");
  auto r2 = cubic_subfield_scan(to_q(c7s5.poly), quiet());
  REQUIRE(r2.subfields.size() == 1);
  CHECK(same_cubic_field(r2.subfields[0].minpoly, z({-35, -21, 0, 1})));
  CHECK(check_report(r2));

  CHECK(cubic_subfield_scan(q({1, 0, 0, 0, 1}), quiet()).subfields.empty());
}

TEST_CASE("absence witnesses") {
  PolyZ f = z({1, 0, 0, 0, 1});
  auto w = absence_certificate_search(f, Int(3), 1000);
  CHECK(w.certified);
  CHECK(w.witness == 17);
  CHECK(!absence_certificate_search(f, Int(2), 10000).certified);
  CHECK(!absence_certificate_search(f, Int(-1), 10000).certified);

  ScanConfig cfg = quiet();
  cfg.extra_deltas = {3};
  auto r = quad_subfield_scan(to_q(f), cfg);
  REQUIRE(r.excluded.size() == 1);
  CHECK(*r.excluded[0].delta == 3);
  CHECK(r.excluded[0].status == EntryStatus::CertifiedAbsent);
  CHECK(r.excluded[0].witness_prime == std::optional<std::uint64_t>(17));
  CHECK(r.excluded[0].origin == "requested");
  CHECK(check_report(r));

  // a bound below every witness leaves the negative unproven
  cfg.absence_prime_bound = 5;
  auto u = quad_subfield_scan(to_q(f), cfg);
  REQUIRE(u.excluded.size() == 1);
  CHECK(u.excluded[0].status == EntryStatus::UnprovenAbsent);
  CHECK(u.has_unproven());
}

TEST_CASE("cubic absence witness") {
  auto c7 = corpus_generate("cubic-compositum", "7");
  EisensteinInt pi = split_prime(13);
  auto w = absence_certificate_search(c7.poly, pi * pow(pi.conj(), 2), 10000);
  CHECK(w.certified);
  auto proved = absence_certificate_search(c7.poly, EisensteinInt(14, -7), 10000);
  CHECK(!proved.certified);
}

TEST_CASE("reports match the corpus truth") {
  for (const auto& entry : default_corpus()) {
    CAPTURE(entry.kind);
    CAPTURE(entry.params);
    if (entry.poly.degree() % 2 == 0) {
      auto r = quad_subfield_scan(to_q(entry.poly), quiet());
      CHECK(deltas(r) == subscan::test::sorted(entry.quad));
      CHECK(!r.has_unproven());
      CHECK(closed_under_twists(r));
      CHECK(check_report(r));
    }
    if (entry.poly.degree() % 3 == 0) {
      auto r = cubic_subfield_scan(to_q(entry.poly), quiet());
      CHECK(r.subfields.size() == entry.cubic.size());
      for (const auto& truth : entry.cubic) {
        int hits = 0;
        for (const auto& s : r.subfields) hits += same_cubic_field(s.minpoly, truth);
        CHECK(hits == 1);
      }
      CHECK(check_report(r));
    }
  }
}

TEST_CASE("direct tests equal the rank for multiquadratic fields") {
  for (const char* params : {"2,3", "2,3,5", "-1,5,13", "2,3,5,7"}) {
    CAPTURE(params);
    auto entry = corpus_generate("multiquadratic", params);
    auto r = quad_subfield_scan(to_q(entry.poly), quiet());
    std::string ps(params);
    std::size_t m = static_cast<std::size_t>(std::count(ps.begin(), ps.end(), ',')) + 1;
    CHECK(r.subfields.size() == (std::size_t{1} << m) - 1);
    CHECK(r.stats.direct_tests == m);
  }
}

TEST_CASE("reports are reproducible across runs and thread counts") {
  auto entry = corpus_generate("multiquadratic", "2,3,5,7");
  ScanConfig one = quiet();
  ScanConfig four = quiet();
  four.threads = 4;
  auto a = report_to_json(quad_subfield_scan(to_q(entry.poly), one)).dump();
  auto b = report_to_json(quad_subfield_scan(to_q(entry.poly), one)).dump();
  auto c = report_to_json(quad_subfield_scan(to_q(entry.poly), four)).dump();
  CHECK(a == b);
  CHECK(a == c);
  auto cub = corpus_generate("cubic-compositum", "7,9");
  auto x = report_to_json(cubic_subfield_scan(to_q(cub.poly), one)).dump();
  auto y = report_to_json(cubic_subfield_scan(to_q(cub.poly), four)).dump();
  CHECK(x == y);
}

TEST_CASE("check_report rejects tampering") {
  auto r = quad_subfield_scan(q({1, 0, -10, 0, 1}), quiet());
  REQUIRE(check_report(r));
  for (std::size_t i = 0; i < r.subfields.size(); ++i) {
    ScanReport bad = r;
    auto coeffs = bad.subfields[i].certificate.y.mutable_coefficients();
    coeffs[0] += 1;
    bad.subfields[i].certificate.y = PolyZ(coeffs);
    CHECK(!check_report(bad));
  }
  ScanConfig cfg = quiet();
  cfg.extra_deltas = {5};
  auto with_absent = quad_subfield_scan(q({1, 0, -10, 0, 1}), cfg);
  REQUIRE(with_absent.excluded.size() == 1);
  REQUIRE(check_report(with_absent));
  for (std::uint64_t wrong : {2u, 5u}) {
    ScanReport bad = with_absent;
    bad.excluded[0].witness_prime = wrong;
    CHECK(!check_report(bad));
  }
}

TEST_CASE("status names round-trip") {
  for (auto s : {EntryStatus::Proved, EntryStatus::CertifiedAbsent, EntryStatus::UnprovenAbsent, EntryStatus::TwistExcluded})
    CHECK(entry_status_from_string(to_string(s)) == s);
  CHECK(squarefree_part(Int(-72)) == -2);
  CHECK(squarefree_part(Int(45)) == 5);
}
