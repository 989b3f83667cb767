#pragma once

// Arithmetic in F_p[X] for word-sized primes, and in (Z/mZ)[X] for the
// prime-power moduli produced by Hensel lifting.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "subscan/arith.hpp"
#include "subscan/poly.hpp"

namespace subscan {

/// Polynomial over F_p, p < 2^63. Coefficients ascending, trimmed.
class PolyFp {
 public:
  PolyFp() = default;
  PolyFp(std::uint64_t p, std::vector<std::uint64_t> ascending);
  /// Reduction of an integer polynomial.
  PolyFp(std::uint64_t p, const PolyZ& f);

  static PolyFp constant(std::uint64_t p, std::uint64_t c) { return PolyFp(p, std::vector<std::uint64_t>{c}); }
  static PolyFp x(std::uint64_t p) { return PolyFp(p, std::vector<std::uint64_t>{0, 1}); }

  std::uint64_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t leading() const { return c_.back(); }
  const std::vector<std::uint64_t>& coefficients() const { return c_; }

  PolyFp monic() const;
  std::uint64_t evaluate(std::uint64_t x) const;
  PolyZ lift() const;

  friend PolyFp operator+(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator-(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator*(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator*(const PolyFp& a, std::uint64_t s);
  friend bool operator==(const PolyFp& a, const PolyFp& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

 private:
  void trim();
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> c_;
};

std::pair<PolyFp, PolyFp> divrem(const PolyFp& a, const PolyFp& b);
PolyFp rem(const PolyFp& a, const PolyFp& b);
PolyFp derivative(const PolyFp& a);
/// Monic gcd.
PolyFp gcd(const PolyFp& a, const PolyFp& b);
/// (g, s, t) with s*a + t*b = g monic.
struct FpXgcd {
  PolyFp g, s, t;
};
FpXgcd xgcd(const PolyFp& a, const PolyFp& b);
PolyFp mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m);
PolyFp powmod(const PolyFp& base, std::uint64_t e, const PolyFp& m);

/// degree -> number of irreducible factors of that degree.
using DegreeMultiset = std::map<int, int>;

int total_degree(const DegreeMultiset& d);
int factor_count(const DegreeMultiset& d);

/// Throws LeadingCoefficientVanishes when p divides lc(f).
bool squarefree_mod_p(const PolyZ& f, std::uint64_t p);

/// Throws NotSquarefree.
DegreeMultiset ddf_degrees(const PolyZ& f, std::uint64_t p);
DegreeMultiset ddf_degrees(const PolyFp& f);

/// Monic irreducible factors of f mod p, sorted by (degree, coefficients).
/// Requires odd p. Throws NotSquarefree.
std::vector<PolyFp> factor_mod_p(const PolyZ& f, std::uint64_t p, std::mt19937_64& rng);
std::vector<PolyFp> factor_mod_p(const PolyFp& f, std::mt19937_64& rng);

/// Sorted roots of h in F_p.
std::vector<std::uint64_t> roots_mod_p(const PolyZ& h, std::uint64_t p);

/// Polynomial over Z/mZ with coefficients in [0, m).
class ZnPoly {
 public:
  ZnPoly() = default;
  ZnPoly(Int modulus, std::vector<Int> ascending);
  ZnPoly(Int modulus, const PolyZ& f);

  const Int& modulus() const { return m_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Int& operator[](std::size_t i) const;
  const std::vector<Int>& coefficients() const { return c_; }
  /// Coefficients as integers in [0, m).
  PolyZ lift() const;
  /// Coefficients as integers in (-m/2, m/2].
  PolyZ centered_lift() const;
  /// Reinterpret modulo a divisor of the modulus.
  ZnPoly reduce(const Int& divisor) const;

  friend ZnPoly operator+(const ZnPoly& a, const ZnPoly& b);
  friend ZnPoly operator-(const ZnPoly& a, const ZnPoly& b);
  friend ZnPoly operator*(const ZnPoly& a, const ZnPoly& b);
  friend ZnPoly operator*(const ZnPoly& a, const Int& s);
  friend bool operator==(const ZnPoly& a, const ZnPoly& b) { return a.m_ == b.m_ && a.c_ == b.c_; }

 private:
  void normalize();
  Int m_ = 1;
  std::vector<Int> c_;
};

/// Division by a monic divisor over Z/mZ.
std::pair<ZnPoly, ZnPoly> divrem_monic(const ZnPoly& a, const ZnPoly& b);
ZnPoly rem_monic(const ZnPoly& a, const ZnPoly& b);

/// Monic F1 mod p^k with F1 = f1 mod p and F1 | f mod p^k (quadratic Hensel
/// lifting, precision doubling, final step truncated to exactly p^k).
/// Throws NotCoprimeCofactor.
ZnPoly hensel_lift_factor(const PolyZ& f, const PolyFp& f1, std::uint64_t p, unsigned k);

Int int_pow(const Int& base, unsigned long e);
Int int_pow(std::uint64_t base, unsigned long e);

}  // namespace subscan
