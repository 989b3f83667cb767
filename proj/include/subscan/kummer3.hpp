#pragma once

// Cyclic cubic candidates as Kummer classes over Q(w), w^2 + w + 1 = 0.

#include <optional>
#include <vector>

#include "subscan/eisenstein.hpp"
#include "subscan/poly.hpp"
#include "subscan/sieve.hpp"

namespace subscan {

struct CubicCandidate {
  F3Vector exponents;
  EisensteinInt a;
  Int c;  // cube root of N(a)
  Int t;  // Tr(a)
  Int v;  // w-coefficient of a
  PolyZ minpoly;  // X^3 - 3cX - t
};

/// a = w^e0 * prod generators[i]^e(i+1). Throws ZeroExponentVector, and
/// InputError for a degenerate (reducible) result.
CubicCandidate build_generator(const F3Vector& exps, const PlaceBasis& basis);

/// One candidate per kernel representative; degenerate ones are skipped.
std::vector<CubicCandidate> enumerate_cubic_candidates(const PlaceBasis& basis, const std::vector<F3Vector>& kernel);

/// Integer root of X^3 - 3cX - t, if any (exact search over monotone pieces).
std::optional<Int> integer_root_of_depressed_cubic(const Int& c, const Int& t);

}  // namespace subscan
