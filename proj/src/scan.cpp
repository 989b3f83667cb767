#include "subscan/scan.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>

#include "subscan/errors.hpp"

namespace subscan {

std::string to_string(EntryStatus s) {
  switch (s) {
    case EntryStatus::Proved:
      return "proved";
    case EntryStatus::CertifiedAbsent:
      return "certified_absent";
    case EntryStatus::UnprovenAbsent:
      return "unproven_absent";
    case EntryStatus::TwistExcluded:
      return "twist_excluded";
  }
  return "unknown";
}

EntryStatus entry_status_from_string(const std::string& s) {
  if (s == "proved") return EntryStatus::Proved;
  if (s == "certified_absent") return EntryStatus::CertifiedAbsent;
  if (s == "unproven_absent") return EntryStatus::UnprovenAbsent;
  if (s == "twist_excluded") return EntryStatus::TwistExcluded;
  throw InputError("unknown entry status: " + s);
}

bool ScanReport::has_unproven() const {
  return std::any_of(excluded.begin(), excluded.end(), [](const ExcludedEntry& e) { return e.status == EntryStatus::UnprovenAbsent; });
}

// ---------------------------------------------------------------- spans

SpanTracker::Reduction SpanTracker::reduce(const F3Vector& v) const {
  Reduction red;
  red.residual = v;
  red.residual.resize(width_, 0);
  red.coefficients.assign(generators_, 0);
  for (const EchelonRow& row : rows_) {
    unsigned factor = red.residual[row.pivot];
    if (factor == 0) continue;
    for (std::size_t i = 0; i < width_; ++i)
      red.residual[i] = static_cast<std::uint8_t>((red.residual[i] + ell_ * ell_ - factor * row.vec[i]) % ell_);
    for (std::size_t j = 0; j < generators_; ++j)
      red.coefficients[j] = static_cast<std::uint8_t>((red.coefficients[j] + factor * row.combo[j]) % ell_);
  }
  return red;
}

bool SpanTracker::add(const F3Vector& v) {
  Reduction red = reduce(v);
  auto it = std::find_if(red.residual.begin(), red.residual.end(), [](std::uint8_t c) { return c != 0; });
  if (it == red.residual.end()) return false;
  // residual = v - sum coeff_j g_j, with v the new generator
  EchelonRow row;
  row.pivot = static_cast<std::size_t>(it - red.residual.begin());
  row.vec = red.residual;
  row.combo.assign(generators_ + 1, 0);
  for (std::size_t j = 0; j < generators_; ++j) row.combo[j] = static_cast<std::uint8_t>((ell_ - red.coefficients[j]) % ell_);
  row.combo[generators_] = 1;
  unsigned inv = 1;
  while (inv * row.vec[row.pivot] % ell_ != 1) ++inv;
  for (auto& c : row.vec) c = static_cast<std::uint8_t>(c * inv % ell_);
  for (auto& c : row.combo) c = static_cast<std::uint8_t>(c * inv % ell_);
  ++generators_;
  for (EchelonRow& other : rows_) {
    other.combo.resize(generators_, 0);
    unsigned factor = other.vec[row.pivot];
    if (factor == 0) continue;
    for (std::size_t i = 0; i < width_; ++i)
      other.vec[i] = static_cast<std::uint8_t>((other.vec[i] + ell_ * ell_ - factor * row.vec[i]) % ell_);
    for (std::size_t j = 0; j < generators_; ++j)
      other.combo[j] = static_cast<std::uint8_t>((other.combo[j] + ell_ * ell_ - factor * row.combo[j]) % ell_);
  }
  rows_.push_back(std::move(row));
  return true;
}

TwistOutcome twist_closure_step(const SpanTracker& found, const std::vector<F3Vector>& excluded, const F3Vector& candidate) {
  const unsigned ell = found.ell();
  F3Vector r = found.reduce(candidate).residual;
  if (std::all_of(r.begin(), r.end(), [](std::uint8_t c) { return c == 0; })) return TwistOutcome::AutoSubfield;
  for (const F3Vector& rep : excluded) {
    F3Vector rr = found.reduce(rep).residual;
    for (unsigned lambda = 1; lambda < ell; ++lambda) {
      bool same = true;
      for (std::size_t i = 0; i < r.size() && same; ++i) same = r[i] == rr[i] * lambda % ell;
      if (same) return TwistOutcome::AutoExcluded;
    }
  }
  return TwistOutcome::NeedsTest;
}

// ---------------------------------------------------------------- absence

AbsenceResult absence_certificate_search(const PolyZ& f, const Int& delta, std::uint64_t prime_bound) {
  const int n = f.degree();
  for (std::uint64_t q = 3; q <= prime_bound; q = next_prime(q)) {
    if (mod_u64(delta, q) == 0 || !squarefree_mod_p(f, q)) continue;
    QuadClass cls = classify_prime_quadratic(ddf_degrees(f, q), n);
    if (cls == QuadClass::NoInfo) continue;
    int leg = legendre(delta, q);
    if ((cls == QuadClass::Split && leg == -1) || (cls == QuadClass::Inert && leg == 1)) return {true, q};
  }
  return {};
}

AbsenceResult absence_certificate_search(const PolyZ& f, const EisensteinInt& a, std::uint64_t prime_bound) {
  const Int norm = a.norm();
  for (std::uint64_t q = 2; q <= prime_bound; q = next_prime(q)) {
    if (q == 3 || mod_u64(norm, q) == 0 || !squarefree_mod_p(f, q)) continue;
    if (classify_prime_cubic(ddf_degrees(f, q)) != CubicClass::SplitsInAllCubic) continue;
    if (cubic_residue_class(a, q) != 0) return {true, q};
  }
  return {};
}

Int squarefree_part(const Int& d, const FactorBudget& budget) {
  if (d == 0) throw InputError("squarefree_part: zero");
  FactoredInt fac = factor_integer(d, budget);
  Int out = fac.sign;
  for (const auto& [p, e] : fac.primes)
    if (e % 2) out *= p;
  return out;
}

// ---------------------------------------------------------------- driver

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

struct Candidate {
  F3Vector vec;
  PolyZ h;
  std::optional<Int> delta;
  std::optional<EisensteinInt> kummer;
};

struct TestResult {
  RootOutcome root;
  AbsenceResult absence;
};

bool is_zero_vector(const F3Vector& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint8_t c) { return c == 0; });
}

PolyZ quadratic_h(const Int& delta) { return PolyZ{-delta, Int(0), Int(1)}; }

class ClosureDriver {
 public:
  ClosureDriver(const NumberField& field, const ScanConfig& cfg, ScanReport& rep, unsigned ell, std::size_t width)
      : field_(field), cfg_(cfg), rep_(rep), span_(ell, width) {}

  std::function<void(std::size_t, const Candidate&)> on_auto_subfield;

  TestResult run_test(const Candidate& c, std::uint64_t index) const {
    TestResult res;
    std::mt19937_64 rng = task_rng(cfg_.seed, index);
    res.root = find_root(field_, c.h, cfg_.root, rng);
    if (res.root.status != RootStatus::Found) {
      if (c.delta)
        res.absence = absence_certificate_search(field_.poly(), *c.delta, cfg_.absence_prime_bound);
      else
        res.absence = absence_certificate_search(field_.poly(), *c.kummer, cfg_.absence_prime_bound);
    }
    return res;
  }

  void run(const std::vector<Candidate>& cands) {
    const std::size_t n = cands.size();
    const std::size_t batch_size = std::max(1u, cfg_.threads);
    std::size_t i = 0;
    while (i < n) {
      std::vector<std::size_t> batch;
      std::size_t j = i;
      while (j < n && batch.size() < batch_size) {
        if (twist_closure_step(span_, excluded_reps_, cands[j].vec) == TwistOutcome::NeedsTest) batch.push_back(j);
        ++j;
      }
      const std::size_t end = batch.size() == batch_size ? batch.back() + 1 : j;
      std::map<std::size_t, TestResult> results;
      if (batch.size() == 1) {
        results[batch[0]] = run_test(cands[batch[0]], batch[0]);
      } else if (!batch.empty()) {
        std::vector<std::future<TestResult>> futures;
        for (std::size_t idx : batch)
          futures.push_back(std::async(std::launch::async, [this, &cands, idx] { return run_test(cands[idx], idx); }));
        for (std::size_t b = 0; b < batch.size(); ++b) results[batch[b]] = futures[b].get();
      }
      for (std::size_t k = i; k < end; ++k) apply(k, cands[k], results);
      i = end;
    }
  }

  const SpanTracker& span() const { return span_; }
  const std::vector<PolyQ>& generator_roots() const { return gen_x_; }
  const std::vector<Int>& generator_deltas() const { return gen_delta_; }

  void add_excluded(const Candidate& c, EntryStatus status, std::optional<std::uint64_t> witness, const std::string& origin) {
    ExcludedEntry e;
    e.delta = c.delta;
    e.minpoly = c.h;
    e.exponents = c.vec;
    e.kummer = c.kummer;
    e.status = status;
    e.witness_prime = witness;
    e.origin = origin;
    rep_.excluded.push_back(std::move(e));
    if (status == EntryStatus::CertifiedAbsent) excluded_reps_.push_back(c.vec);
  }

  void add_subfield(const Candidate& c, RootCertificate cert, const std::string& origin, bool generator) {
    SubfieldEntry e;
    e.delta = c.delta;
    e.minpoly = c.h;
    e.exponents = c.vec;
    e.kummer = c.kummer;
    e.origin = origin;
    if (generator && span_.add(c.vec)) {
      gen_x_.push_back(cert.x);
      gen_delta_.push_back(c.delta.value_or(Int(0)));
    }
    e.certificate = std::move(cert);
    rep_.subfields.push_back(std::move(e));
  }

 private:
  void apply(std::size_t k, const Candidate& c, const std::map<std::size_t, TestResult>& results) {
    switch (twist_closure_step(span_, excluded_reps_, c.vec)) {
      case TwistOutcome::AutoSubfield:
        on_auto_subfield(k, c);
        return;
      case TwistOutcome::AutoExcluded:
        add_excluded(c, EntryStatus::TwistExcluded, std::nullopt, "twist");
        return;
      case TwistOutcome::NeedsTest:
        break;
    }
    auto it = results.find(k);
    if (it == results.end()) throw Error("twist closure: missing test result");
    ++rep_.stats.direct_tests;
    const TestResult& res = it->second;
    if (res.root.status == RootStatus::Found) {
      add_subfield(c, *res.root.certificate, "direct", true);
    } else if (res.absence.certified) {
      add_excluded(c, EntryStatus::CertifiedAbsent, res.absence.witness, "direct");
    } else {
      add_excluded(c, EntryStatus::UnprovenAbsent, std::nullopt, "direct");
    }
  }

  const NumberField& field_;
  const ScanConfig& cfg_;
  ScanReport& rep_;
  SpanTracker span_;
  std::vector<F3Vector> excluded_reps_;
  std::vector<PolyQ> gen_x_;
  std::vector<Int> gen_delta_;
};

// sqrt of the product of the selected generators, divided down to the
// squarefree discriminant
std::pair<PolyQ, Int> product_root(const NumberField& field, const ClosureDriver& drv, const F3Vector& coefficients) {
  PolyQ x;
  Int delta = 0;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    if (coefficients[j] == 0) continue;
    const PolyQ& xj = drv.generator_roots()[j];
    const Int& dj = drv.generator_deltas()[j];
    if (delta == 0) {
      x = xj;
      delta = dj;
      continue;
    }
    Int s;
    Int a = abs(delta), b = abs(dj);
    mpz_gcd(s.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    x = field.mul(x, xj) * Rat(Int(1), s);
    delta = delta * dj / (s * s);
  }
  return {x, delta};
}

void record_sieve(ScanReport& rep, const LinearSystem& sys) {
  rep.sieve.rows = sys.rows.size();
  for (const Row& r : sys.rows) rep.sieve.primes_used.push_back(r.prime);
}

}  // namespace

ScanReport quad_subfield_scan(const PolyQ& f_raw, const ScanConfig& cfg) {
  const auto t_total = Clock::now();
  ScanReport rep;
  rep.kind = "quadratic";
  rep.stats.seed = cfg.seed;
  if (f_raw.degree() < 2) throw InputError("quad: degree must be at least 2");
  auto t = Clock::now();
  NormalizedInput ni = normalize_input(f_raw, cfg.budget);
  rep.poly = ni.f;
  rep.scale = ni.scale;
  NumberField field(rep.poly);
  if (cfg.record_timings) rep.stats.phase_ms["normalize"] = ms_since(t);
  const PolyZ& f = rep.poly;

  std::vector<Candidate> cands;
  std::optional<PlaceBasis> basis;
  if (f.degree() % 2 == 0) {
    t = Clock::now();
    CandidateSet cs = candidate_ramified_primes(f, 2, cfg.budget);
    rep.candidate_primes = cs.all_primes();
    rep.include_minus_one = cs.include_minus_one;
    rep.gcd_value = cs.gcd_value;
    if (cfg.record_timings) rep.stats.phase_ms["ramify"] = ms_since(t);

    t = Clock::now();
    basis = quadratic_basis(cs);
    LinearSystem sys = build_quadratic_system(f, *basis, cs.gcd_value, cfg.sieve);
    record_sieve(rep, sys);
    SolutionSpace sol = solve_f2(sys);
    rep.sieve.inconsistent = sol.inconsistent;
    rep.sieve.solution_dim = sol.kernel.size();
    if (cfg.record_timings) rep.stats.phase_ms["sieve"] = ms_since(t);

    for (F3Vector& v : sol.enumerate()) {
      if (is_zero_vector(v)) continue;
      Candidate c;
      c.delta = quadratic_discriminant(*basis, v);
      c.h = quadratic_h(*c.delta);
      c.vec = std::move(v);
      cands.push_back(std::move(c));
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      Int aa = abs(*a.delta), ab = abs(*b.delta);
      if (aa != ab) return aa < ab;
      return *a.delta > *b.delta;
    });
  }
  rep.stats.candidates = cands.size();

  t = Clock::now();
  const std::size_t width = basis ? basis->width() : 1;
  ClosureDriver drv(field, cfg, rep, 2, width);
  drv.on_auto_subfield = [&](std::size_t, const Candidate& c) {
    auto [x, delta] = product_root(field, drv, drv.span().reduce(c.vec).coefficients);
    if (delta != *c.delta) throw Error("twist closure: product discriminant mismatch");
    RootCertificate cert = certificate_from_root(field, c.h, x, "twist");
    if (!verify_certificate(field, cert)) throw Error("twist closure: product certificate failed");
    drv.add_subfield(c, std::move(cert), "twist", false);
  };
  drv.run(cands);

  // explicitly requested discriminants
  for (const Int& raw : cfg.extra_deltas) {
    Int delta = squarefree_part(raw, cfg.budget);
    if (delta == 1) throw InputError("delta: the trivial discriminant 1 is not a quadratic field");
    auto same = [&](const auto& e) { return e.delta && *e.delta == delta; };
    if (std::any_of(rep.subfields.begin(), rep.subfields.end(), same) || std::any_of(rep.excluded.begin(), rep.excluded.end(), same)) continue;
    Candidate c;
    c.delta = delta;
    c.h = quadratic_h(delta);
    if (basis) {
      // exponent vector, when delta is supported on the basis
      F3Vector v(basis->width(), 0);
      Int rest = delta;
      if (rest < 0) {
        v[0] = 1;
        rest = -rest;
      }
      for (std::size_t i = 0; i < basis->primes.size(); ++i)
        if (mpz_divisible_p(rest.get_mpz_t(), basis->primes[i].get_mpz_t())) {
          v[i + 1] = 1;
          rest /= basis->primes[i];
        }
      if (rest == 1) {
        c.vec = v;
        auto red = drv.span().reduce(v);
        if (is_zero_vector(red.residual)) {
          auto [x, d] = product_root(field, drv, red.coefficients);
          RootCertificate cert = certificate_from_root(field, c.h, x, "twist");
          if (!verify_certificate(field, cert)) throw Error("twist closure: product certificate failed");
          drv.add_subfield(c, std::move(cert), "requested", false);
          continue;
        }
      }
    }
    AbsenceResult abs_res = absence_certificate_search(f, delta, cfg.absence_prime_bound);
    if (abs_res.certified) {
      drv.add_excluded(c, EntryStatus::CertifiedAbsent, abs_res.witness, "requested");
      continue;
    }
    std::mt19937_64 rng = task_rng(cfg.seed, cands.size() + rep.subfields.size() + rep.excluded.size());
    RootOutcome out = find_root(field, c.h, cfg.root, rng);
    if (out.status == RootStatus::Found)
      drv.add_subfield(c, *out.certificate, "requested", false);
    else
      drv.add_excluded(c, EntryStatus::UnprovenAbsent, std::nullopt, "requested");
  }
  if (cfg.record_timings) {
    rep.stats.phase_ms["tests"] = ms_since(t);
    rep.stats.phase_ms["total"] = ms_since(t_total);
  }
  return rep;
}

ScanReport cubic_subfield_scan(const PolyQ& f_raw, const ScanConfig& cfg) {
  const auto t_total = Clock::now();
  ScanReport rep;
  rep.kind = "cubic";
  rep.stats.seed = cfg.seed;
  if (f_raw.degree() < 3) throw InputError("cubic: degree must be at least 3");
  auto t = Clock::now();
  NormalizedInput ni = normalize_input(f_raw, cfg.budget);
  rep.poly = ni.f;
  rep.scale = ni.scale;
  NumberField field(rep.poly);
  if (cfg.record_timings) rep.stats.phase_ms["normalize"] = ms_since(t);
  const PolyZ& f = rep.poly;
  if (f.degree() % 3 != 0) {
    if (cfg.record_timings) rep.stats.phase_ms["total"] = ms_since(t_total);
    return rep;
  }

  t = Clock::now();
  CandidateSet cs = candidate_ramified_primes(f, 3, cfg.budget);
  rep.candidate_primes = cs.all_primes();
  rep.gcd_value = cs.gcd_value;
  if (cfg.record_timings) rep.stats.phase_ms["ramify"] = ms_since(t);

  t = Clock::now();
  PlaceBasis basis = cubic_basis(cs);
  LinearSystem sys = build_cubic_system(f, basis, cs.gcd_value, cfg.sieve);
  record_sieve(rep, sys);
  std::vector<F3Vector> kernel = solve_f3_kernel(sys);
  {
    LinearSystem hom = sys;
    hom.ell = 3;
    rep.sieve.solution_dim = basis.width() - row_reduce(hom).pivots.size();
  }
  if (cfg.record_timings) rep.stats.phase_ms["sieve"] = ms_since(t);

  std::vector<CubicCandidate> cubic = enumerate_cubic_candidates(basis, kernel);
  std::sort(cubic.begin(), cubic.end(), [](const CubicCandidate& a, const CubicCandidate& b) {
    if (a.c != b.c) return a.c < b.c;
    Int ta = abs(a.t), tb = abs(b.t);
    if (ta != tb) return ta < tb;
    if (a.t != b.t) return a.t > b.t;
    return a.exponents < b.exponents;
  });
  std::vector<Candidate> cands;
  for (const CubicCandidate& cc : cubic) {
    Candidate c;
    c.vec = cc.exponents;
    c.h = cc.minpoly;
    c.kummer = cc.a;
    cands.push_back(std::move(c));
  }
  rep.stats.candidates = cands.size();

  t = Clock::now();
  ClosureDriver drv(field, cfg, rep, 3, basis.width());
  drv.on_auto_subfield = [&](std::size_t k, const Candidate& c) {
    ++rep.stats.derived_root_tests;
    std::mt19937_64 rng = task_rng(cfg.seed, k);
    RootOutcome out = find_root(field, c.h, cfg.root, rng);
    if (out.status == RootStatus::Found)
      drv.add_subfield(c, *out.certificate, "twist", false);
    else
      drv.add_excluded(c, EntryStatus::UnprovenAbsent, std::nullopt, "twist");
  };
  drv.run(cands);

  // cross root tests between proved subfields; a root of one minimal
  // polynomial in the field of another means the fields coincide
  std::vector<SubfieldEntry> unique;
  for (SubfieldEntry& e : rep.subfields) {
    bool duplicate = false;
    for (const SubfieldEntry& u : unique) {
      ++rep.stats.dedup_tests;
      NumberField small(u.minpoly);
      std::mt19937_64 rng = task_rng(cfg.seed, 1000000 + rep.stats.dedup_tests);
      if (find_root(small, e.minpoly, cfg.root, rng).status == RootStatus::Found) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) unique.push_back(std::move(e));
  }
  rep.subfields = std::move(unique);
  if (cfg.record_timings) {
    rep.stats.phase_ms["tests"] = ms_since(t);
    rep.stats.phase_ms["total"] = ms_since(t_total);
  }
  return rep;
}

bool check_report(const ScanReport& report) {
  NumberField field(report.poly);
  const PolyZ& f = report.poly;
  for (const SubfieldEntry& e : report.subfields) {
    if (e.delta && !(e.minpoly == quadratic_h(*e.delta))) return false;
    if (!(e.certificate.h == e.minpoly)) return false;
    if (!verify_certificate(field, e.minpoly, e.certificate.y)) return false;
  }
  for (const ExcludedEntry& e : report.excluded) {
    if (e.status != EntryStatus::CertifiedAbsent) continue;
    if (!e.witness_prime) return false;
    const std::uint64_t q = *e.witness_prime;
    if (!is_prime_u64(q) || !squarefree_mod_p(f, q)) return false;
    DegreeMultiset degrees = ddf_degrees(f, q);
    if (e.delta) {
      if (q == 2 || mod_u64(*e.delta, q) == 0) return false;
      QuadClass cls = classify_prime_quadratic(degrees, f.degree());
      int leg = legendre(*e.delta, q);
      if (!((cls == QuadClass::Split && leg == -1) || (cls == QuadClass::Inert && leg == 1))) return false;
    } else {
      if (!e.kummer || q == 3 || mod_u64(e.kummer->norm(), q) == 0) return false;
      if (classify_prime_cubic(degrees) != CubicClass::SplitsInAllCubic) return false;
      if (cubic_residue_class(*e.kummer, q) == 0) return false;
    }
  }
  return true;
}

}  // namespace subscan
