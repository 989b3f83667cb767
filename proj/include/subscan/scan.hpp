#pragma once

// Quadratic and cyclic cubic subfield scans: ramification candidates, sieve,
// twist closure over the found subgroup, root tests and absence witnesses.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subscan/kummer3.hpp"
#include "subscan/nfroot.hpp"
#include "subscan/ramify.hpp"
#include "subscan/sieve.hpp"

namespace subscan {

inline constexpr std::uint64_t kDefaultSeed = 20130101;

struct ScanConfig {
  SieveOptions sieve;
  RootConfig root;
  FactorBudget budget;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::uint64_t absence_prime_bound = 100000;
  /// Extra discriminants to decide explicitly (quadratic scan only).
  std::vector<Int> extra_deltas;
  bool record_timings = true;
};

enum class EntryStatus { Proved, CertifiedAbsent, UnprovenAbsent, TwistExcluded };
std::string to_string(EntryStatus s);
EntryStatus entry_status_from_string(const std::string& s);

struct SubfieldEntry {
  std::optional<Int> delta;  // quadratic
  PolyZ minpoly;             // X^2 - delta, or the cubic X^3 - 3cX - t
  F3Vector exponents;
  std::optional<EisensteinInt> kummer;  // cubic
  std::string origin;                   // direct | twist | requested
  RootCertificate certificate;
  bool operator==(const SubfieldEntry&) const = default;
};

struct ExcludedEntry {
  std::optional<Int> delta;
  PolyZ minpoly;
  F3Vector exponents;
  std::optional<EisensteinInt> kummer;
  EntryStatus status = EntryStatus::UnprovenAbsent;
  std::optional<std::uint64_t> witness_prime;
  std::string origin;
  bool operator==(const ExcludedEntry&) const = default;
};

struct SieveSummary {
  std::vector<std::uint64_t> primes_used;
  std::size_t rows = 0;
  std::size_t solution_dim = 0;
  bool inconsistent = false;
  bool operator==(const SieveSummary&) const = default;
};

struct ScanStats {
  std::map<std::string, double> phase_ms;
  std::size_t direct_tests = 0;
  std::size_t derived_root_tests = 0;
  std::size_t dedup_tests = 0;
  std::size_t candidates = 0;
  std::uint64_t seed = 0;
  bool operator==(const ScanStats&) const = default;
};

struct ScanReport {
  std::string kind;  // quadratic | cubic
  PolyZ poly;        // normalized input
  Int scale = 1;
  std::vector<Int> candidate_primes;
  bool include_minus_one = false;
  Int gcd_value = 0;
  SieveSummary sieve;
  std::vector<SubfieldEntry> subfields;
  std::vector<ExcludedEntry> excluded;
  ScanStats stats;

  bool has_unproven() const;
  bool operator==(const ScanReport&) const = default;
};

/// Incremental span over F_ell with reduced echelon rows; the residual of a
/// reduction is a canonical coset representative.
class SpanTracker {
 public:
  SpanTracker(unsigned ell, std::size_t width) : ell_(ell), width_(width) {}

  struct Reduction {
    F3Vector residual;
    F3Vector coefficients;  // over the generators, in insertion order
  };
  Reduction reduce(const F3Vector& v) const;
  /// Adds v as a new generator; returns false (no change) if v is in the span.
  bool add(const F3Vector& v);
  std::size_t size() const { return generators_; }
  unsigned ell() const { return ell_; }

 private:
  struct EchelonRow {
    F3Vector vec;
    F3Vector combo;
    std::size_t pivot;
  };
  unsigned ell_;
  std::size_t width_;
  std::size_t generators_ = 0;
  std::vector<EchelonRow> rows_;
};

enum class TwistOutcome { AutoSubfield, AutoExcluded, NeedsTest };

/// Classification of a candidate against the found span and the excluded
/// representatives (for ell = 3 a representative also covers its double).
TwistOutcome twist_closure_step(const SpanTracker& found, const std::vector<F3Vector>& excluded, const F3Vector& candidate);

struct AbsenceResult {
  bool certified = false;
  std::uint64_t witness = 0;
};

/// Frobenius witness against Q(sqrt(delta)) being a subfield.
AbsenceResult absence_certificate_search(const PolyZ& f, const Int& delta, std::uint64_t prime_bound);
/// Frobenius witness against the cubic field of Kummer generator a.
AbsenceResult absence_certificate_search(const PolyZ& f, const EisensteinInt& a, std::uint64_t prime_bound);

/// Squarefree kernel of a nonzero integer.
Int squarefree_part(const Int& d, const FactorBudget& budget = {});

ScanReport quad_subfield_scan(const PolyQ& f_raw, const ScanConfig& config = {});
ScanReport cubic_subfield_scan(const PolyQ& f_raw, const ScanConfig& config = {});

/// Re-verifies every certificate and every witness in a report against f.
bool check_report(const ScanReport& report);

}  // namespace subscan
