#pragma once

// Frobenius cycle-type sieve: linear constraints over F2 (quadratic) and F3
// (cyclic cubic) on exponent vectors over a fixed place basis.

#include <cstdint>
#include <optional>
#include <vector>

#include "subscan/arith.hpp"
#include "subscan/eisenstein.hpp"
#include "subscan/modp.hpp"
#include "subscan/poly.hpp"
#include "subscan/ramify.hpp"

namespace subscan {

using F3Vector = std::vector<std::uint8_t>;  // entries in [0, ell)

/// Slot 0 is -1 (quadratic) or w (cubic); slot i >= 1 is primes[i-1], with
/// Kummer generator generators[i-1] = pi * conj(pi)^2 in the cubic case.
struct PlaceBasis {
  unsigned e = 2;
  std::vector<Int> primes;
  std::vector<EisensteinInt> generators;

  std::size_t width() const { return primes.size() + 1; }
  bool contains(std::uint64_t p) const;
};

/// [-1, sorted primes of tame and wild sets]. 2 is always present.
PlaceBasis quadratic_basis(const CandidateSet& c);
/// [w, split primes p = 1 mod 3 from the tame set].
PlaceBasis cubic_basis(const CandidateSet& c);

/// Delta = (-1)^v0 * prod primes[i]^v[i+1].
Int quadratic_discriminant(const PlaceBasis& basis, const F3Vector& v);
/// a = w^v0 * prod generators[i]^v[i+1].
EisensteinInt kummer_element(const PlaceBasis& basis, const F3Vector& v);

struct Row {
  F3Vector coeffs;
  std::uint8_t rhs = 0;
  std::uint64_t prime = 0;
};

struct LinearSystem {
  unsigned ell = 2;
  std::size_t width = 0;
  std::vector<Row> rows;
};

struct SolutionSpace {
  bool inconsistent = false;
  F3Vector particular;
  std::vector<F3Vector> kernel;

  /// All 2^d solution vectors (empty when inconsistent), in a fixed order.
  std::vector<F3Vector> enumerate() const;
};

enum class QuadClass { Split, Inert, NoInfo };
enum class CubicClass { SplitsInAllCubic, NoInfo };

QuadClass classify_prime_quadratic(const DegreeMultiset& degrees, int n);
/// Throws PrimeInBasis. Returns nullopt for a trivial 0 = 0 row.
std::optional<Row> quad_constraint(std::uint64_t p, QuadClass cls, const PlaceBasis& basis);
SolutionSpace solve_f2(const LinearSystem& system);

CubicClass classify_prime_cubic(const DegreeMultiset& degrees);
/// Homogeneous row of cubic residue classes; nullopt when all are zero.
/// Throws BadPrime.
std::optional<Row> cubic_constraint(std::uint64_t q, const PlaceBasis& basis);
/// Nonzero kernel vectors, one representative per pair {v, 2v}.
std::vector<F3Vector> solve_f3_kernel(const LinearSystem& system);

struct SieveOptions {
  std::uint64_t prime_bound = 10000;
  std::size_t max_constraints = 40;
};

struct SieveStats {
  std::size_t primes_examined = 0;
  std::size_t primes_skipped = 0;
  std::size_t rows = 0;
};

LinearSystem build_quadratic_system(const PolyZ& f, const PlaceBasis& basis, const Int& gcd_value,
                                    const SieveOptions& opts = {}, SieveStats* stats = nullptr);
LinearSystem build_cubic_system(const PolyZ& f, const PlaceBasis& basis, const Int& gcd_value,
                                const SieveOptions& opts = {}, SieveStats* stats = nullptr);

/// Row-reduced echelon form over F_ell (ell prime, small).
struct Echelon {
  unsigned ell = 2;
  std::size_t width = 0;
  std::vector<F3Vector> rows;  // augmented: width + 1 entries
  std::vector<std::size_t> pivots;
  bool inconsistent = false;
};
Echelon row_reduce(const LinearSystem& system);

}  // namespace subscan
