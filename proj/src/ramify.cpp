#include "subscan/ramify.hpp"

#include <algorithm>

#include "subscan/errors.hpp"

namespace subscan {

std::vector<Int> CandidateSet::all_primes() const {
  std::vector<Int> out = tame_primes;
  out.insert(out.end(), wild_primes.begin(), wild_primes.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Int numerator_gcd(const PolyQ& p) {
  Int g = 0;
  for (const Rat& c : p.coefficients()) {
    if (c == 0) continue;
    // mpq_class is kept canonical, so the numerator is already in lowest terms
    Int num = abs(c.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  return g;
}

CandidateSet candidate_ramified_primes(const PolyZ& f, unsigned e, const FactorBudget& budget) {
  if (e != 2 && e != 3) throw InputError("candidate_ramified_primes: e must be 2 or 3");
  if (f.degree() < 1 || f.degree() % static_cast<int>(e) != 0)
    throw DegreeNotDivisible("candidate_ramified_primes: degree not divisible by e");
  if (!f.is_monic()) throw InputError("candidate_ramified_primes: f must be monic");
  if (!is_squarefree(f)) throw NotSquarefree("candidate_ramified_primes: f is not squarefree");

  PolyQ fq = to_q(f);
  PolyQ g = eth_root_coeffs(fq, e);
  PolyQ diff = fq - pow(g, e);
  if (diff.is_zero()) throw InputIsPower("candidate_ramified_primes: f is an e-th power");

  CandidateSet out;
  out.e = e;
  out.gcd_value = numerator_gcd(diff);
  FactoredInt fac = factor_integer(out.gcd_value, budget);
  for (const auto& [p, mult] : fac.primes) {
    (void)mult;
    if (p == e) continue;
    out.tame_primes.push_back(p);
  }
  if (e == 2) {
    out.wild_primes = {Int(2)};
    out.include_minus_one = true;
  } else {
    out.wild_primes = {Int(3)};
  }
  return out;
}

}  // namespace subscan
