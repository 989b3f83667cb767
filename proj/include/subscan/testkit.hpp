#pragma once

// Oracles and corpus entries with known quadratic and cyclic cubic subfields.

#include <string>
#include <vector>

#include <json.hpp>

#include "subscan/arith.hpp"
#include "subscan/poly.hpp"

namespace subscan {

/// (-1)^(n(n-1)/2) Res(f, f') for monic f.
Int disc_poly(const PolyZ& f);
/// Prime divisors of disc(f), by factoring it. Throws BudgetExceeded.
std::vector<Int> ramified_superset_bruteforce(const PolyZ& f, const FactorBudget& budget = {});

/// m-th cyclotomic polynomial by exact division of X^m - 1.
PolyZ cyclotomic(unsigned m);
/// Coded quadratic subfields of Q(zeta_m) for m in {5,7,8,12,15,20,24}.
std::vector<Int> cyclotomic_truth(unsigned m);
/// Squarefree d != 1 whose field discriminant divides m (conductor criterion).
std::vector<Int> quadratic_subfields_by_conductor(unsigned m);

struct CorpusEntry {
  std::string kind;
  std::string params;
  PolyZ poly;
  std::vector<Int> quad;     // sorted
  std::vector<PolyZ> cubic;  // minimal polynomials of the cyclic cubic subfields
  std::string recipe;
};

/// kind: multiquadratic ("2,3,5"), cyclotomic ("12"), cubic-compositum
/// ("7,9", "7,sqrt5"; conductors 9 or primes = 1 mod 3, plus sqrtD factors).
/// Throws InputError for unsupported parameters.
CorpusEntry corpus_generate(const std::string& kind, const std::string& params);

/// Entries used by the test suite and the acceptance run.
std::vector<CorpusEntry> default_corpus(bool include_large = false);

nlohmann::json corpus_sidecar(const CorpusEntry& entry);

/// Minimal polynomial of sum_i shift_i * sqrt(d_i) via iterated compositum,
/// together with explicit roots sqrt(d_i) in Q[X]/(f) found by a linear
/// solve in the tensor algebra (independent of the root finder).
struct Multiquadratic {
  PolyZ poly;
  std::vector<Int> radicands;
  std::vector<PolyQ> roots;
};
Multiquadratic multiquadratic_field(const std::vector<Int>& radicands);

/// True when Q[X]/(a) and Q[X]/(b) are the same cubic field.
bool same_cubic_field(const PolyZ& a, const PolyZ& b);

}  // namespace subscan
