#pragma once

// Roots of monic integral polynomials of degree 2 or 3 in L = Q[X]/(f),
// with certificates y = f'(theta) * x in Z[theta] that can be checked without
// division.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "subscan/lattice.hpp"
#include "subscan/modp.hpp"
#include "subscan/poly.hpp"

namespace subscan {

class NumberField {
 public:
  /// f monic integral, squarefree over Q. Throws InputError / NotSquarefree.
  explicit NumberField(PolyZ f);

  const PolyZ& poly() const { return f_; }
  int degree() const { return f_.degree(); }
  const PolyZ& derivative() const { return df_; }
  /// (f')^-1 mod f over Q, computed on first use.
  const PolyQ& derivative_inverse() const;

  PolyZ reduce(const PolyZ& a) const { return rem_monic(a, f_); }
  PolyZ mul(const PolyZ& a, const PolyZ& b) const { return rem_monic(a * b, f_); }
  PolyQ reduce(const PolyQ& a) const { return rem_monic(a, fq_); }
  PolyQ mul(const PolyQ& a, const PolyQ& b) const { return rem_monic(a * b, fq_); }

  /// LLL-reduced basis of {y : deg y < n, y = 0 mod (p^k, F1)}, memoized.
  std::shared_ptr<const IntLattice> local_lattice(std::uint64_t p, unsigned k, const ZnPoly& F1) const;

 private:
  struct Cache;
  PolyZ f_;
  PolyQ fq_;
  PolyZ df_;
  std::shared_ptr<Cache> cache_;
};

struct RootCertificate {
  PolyZ h;
  /// Scaled root y(theta) = f'(theta) * x, degree < n.
  PolyZ y;
  /// x = y / f' mod f; filled by normalize_certificate.
  PolyQ x;
  std::string strategy;
  std::uint64_t prime = 0;
  unsigned precision = 0;
  bool operator==(const RootCertificate&) const = default;
};

/// Division-free check: sum_i h_i y^i f'^(d-i) = 0 mod f over Z.
bool verify_certificate(const NumberField& field, const PolyZ& h, const PolyZ& y);
bool verify_certificate(const NumberField& field, const RootCertificate& cert);
/// Fills cert.x.
void normalize_certificate(const NumberField& field, RootCertificate& cert);
/// Certificate from a root x in L (x integral over Z).
RootCertificate certificate_from_root(const NumberField& field, const PolyZ& h, const PolyQ& x, std::string strategy);

struct PrimeData {
  std::uint64_t p = 0;
  std::vector<PolyFp> factors;
  std::vector<std::uint64_t> roots;  // sorted roots of h mod p
};

enum class RootStrategy { Auto, Combinatorial, Lattice };

struct RootConfig {
  std::size_t combo_limit = 1024;
  /// p^k is raised until it exceeds 10^cap; 0 selects 200 * n / 16.
  unsigned precision_cap_digits = 0;
  RootStrategy strategy = RootStrategy::Auto;
  bool rational_fallback = false;
  std::uint64_t prime_bound = 1000000;
  unsigned qualifying_primes = 25;
};

/// Throws NoPrimeFound.
PrimeData select_prime(const NumberField& field, const PolyZ& h, const RootConfig& config, std::mt19937_64& rng);

/// k = 32, 64, ... up to the first k with p^k > 10^cap.
std::vector<unsigned> precision_schedule(std::uint64_t p, int n, unsigned cap_digits);

/// The root of h in Z_p congruent to s mod p, modulo p^k.
Int lift_root_padic(const PolyZ& h, std::uint64_t s, std::uint64_t p, unsigned k);

/// Joint Newton iteration for x and 1/h'(x) in (Z/p^k)[X]/(f), from x0 mod p.
ZnPoly newton_lift_root(const NumberField& field, const PolyZ& h, const PolyFp& x0, std::uint64_t p, unsigned k);

enum class RootStatus { Found, NotFound, ComboOverflow };

struct RootOutcome {
  RootStatus status = RootStatus::NotFound;
  std::optional<RootCertificate> certificate;
  std::size_t combinations = 0;
};

RootOutcome root_combinatorial(const NumberField& field, const PolyZ& h, const PrimeData& pd, const RootConfig& config);
RootOutcome root_lattice(const NumberField& field, const PolyZ& h, const PrimeData& pd, const RootConfig& config);

/// Strategy selection per config; Auto falls back to the lattice method on
/// ComboOverflow. Returned certificates are verified and normalized.
RootOutcome find_root(const NumberField& field, const PolyZ& h, const RootConfig& config, std::mt19937_64& rng);

}  // namespace subscan
