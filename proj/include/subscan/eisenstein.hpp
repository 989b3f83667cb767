#pragma once

// Eisenstein integers x + y*w with w^2 + w + 1 = 0, and the cubic residue
// character used by the cubic Frobenius sieve.

#include <cstdint>
#include <string>

#include "subscan/arith.hpp"

namespace subscan {

struct EisensteinInt {
  Int x = 0;
  Int y = 0;

  EisensteinInt() = default;
  EisensteinInt(Int x_, Int y_) : x(std::move(x_)), y(std::move(y_)) {}

  static EisensteinInt omega() { return {0, 1}; }

  Int norm() const { return x * x - x * y + y * y; }
  Int trace() const { return 2 * x - y; }
  /// Image under the nontrivial automorphism w -> w^2.
  EisensteinInt conj() const { return {x - y, -y}; }

  friend EisensteinInt operator+(const EisensteinInt& a, const EisensteinInt& b) { return {a.x + b.x, a.y + b.y}; }
  friend EisensteinInt operator-(const EisensteinInt& a, const EisensteinInt& b) { return {a.x - b.x, a.y - b.y}; }
  friend EisensteinInt operator*(const EisensteinInt& a, const EisensteinInt& b) {
    // (a + bw)(c + dw) = ac - bd + (ad + bc - bd) w
    Int bd = a.y * b.y;
    return {a.x * b.x - bd, a.x * b.y + a.y * b.x - bd};
  }
  friend bool operator==(const EisensteinInt& a, const EisensteinInt& b) = default;

  std::string str() const;
};

EisensteinInt pow(const EisensteinInt& a, unsigned e);

/// pi with N(pi) = p: smallest y >= 0, then smallest x >= 0.
/// Throws NotSplitPrime unless p = 1 mod 3.
EisensteinInt split_prime(std::uint64_t p);

/// m in {0,1,2} with a^((q-1)/3) = w_q^m (q = 1 mod 3, w_q the smaller root of
/// w^2+w+1) or a^((q^2-1)/3) = w^m in F_q[w] (q = 2 mod 3).
/// Throws BadPrime when q = 3 or q | N(a).
int cubic_residue_class(const EisensteinInt& a, std::uint64_t q);

}  // namespace subscan
