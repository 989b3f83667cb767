#pragma once

// Candidate ramified primes of a cyclic subfield of degree e, read off the
// gcd of f - g^e where g is the e-th root candidate of f.

#include <vector>

#include "subscan/arith.hpp"
#include "subscan/poly.hpp"

namespace subscan {

struct CandidateSet {
  unsigned e = 2;
  std::vector<Int> tame_primes;
  std::vector<Int> wild_primes;
  bool include_minus_one = false;
  Int gcd_value = 0;

  /// tame and wild primes, sorted and deduplicated.
  std::vector<Int> all_primes() const;
};

/// gcd of the absolute numerators (lowest terms) of the nonzero coefficients.
Int numerator_gcd(const PolyQ& p);

/// Throws NotSquarefree, InputIsPower, DegreeNotDivisible, BudgetExceeded.
CandidateSet candidate_ramified_primes(const PolyZ& f, unsigned e, const FactorBudget& budget = {});

}  // namespace subscan
