#pragma once

// Integer and rational utilities: primality, factorization, residue symbols,
// CRT and rational reconstruction.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace subscan {

using Int = mpz_class;
using Rat = mpq_class;

/// Complete factorization: sign times product of prime powers.
struct FactoredInt {
  int sign = 1;
  std::map<Int, unsigned> primes;

  Int value() const;
  std::vector<Int> support() const;
  bool operator==(const FactoredInt&) const = default;
};

struct FactorBudget {
  std::uint64_t trial_bound = 10000;
  std::uint64_t rho_iterations = std::uint64_t{1} << 24;
  std::uint64_t seed = 0x5eed;
};

/// Miller-Rabin with 40 bases drawn from a generator seeded by `seed`,
/// followed by a BPSW confirmation for survivors.
bool is_probable_prime(const Int& n, std::uint64_t seed = 0x5eed);

/// Deterministic primality for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/// Throws BudgetExceeded when a composite cofactor resists Pollard rho.
FactoredInt factor_integer(const Int& n, const FactorBudget& budget = {});

/// All primes <= bound (sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// a mod p as a word, for p < 2^63.
std::uint64_t mod_u64(const Int& a, std::uint64_t p);

/// Legendre symbol (a|p) for an odd prime p; 0 when p | a.
int legendre(const Int& a, std::uint64_t p);
int legendre(const Int& a, const Int& p);

/// A square root of a modulo the odd prime p (Tonelli-Shanks), if one exists.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

struct Residue {
  Int r;
  Int m;
};

/// Throws NonCoprimeModuli.
Residue crt(std::span<const Residue> residues);

/// n/d with |n|, d <= floor(sqrt(m/2)) and n == r*d (mod m), if any.
std::optional<Rat> rational_reconstruction(const Int& r, const Int& m);

/// Symmetric representative of a modulo m, in (-m/2, m/2].
Int centered(const Int& a, const Int& m);

}  // namespace subscan
