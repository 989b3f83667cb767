#pragma once

// Exact integral LLL reduction and Babai nearest-plane rounding.

#include <vector>

#include "subscan/arith.hpp"

namespace subscan {

using IntVector = std::vector<Int>;

/// Row basis of an integer lattice.
struct IntLattice {
  std::vector<IntVector> basis;

  std::size_t rank() const { return basis.size(); }
  std::size_t dimension() const { return basis.empty() ? 0 : basis.front().size(); }
};

struct LllResult {
  IntLattice reduced;
  /// reduced.basis[i] = sum_j transform[i][j] * input.basis[j]
  std::vector<IntVector> transform;
};

/// Reduction with parameter delta (1/4 < delta < 1), using integer
/// Gram-Schmidt data only. Throws DependentBasis.
LllResult lll_reduce_with_transform(const IntLattice& lattice, const Rat& delta = Rat(3, 4));
IntLattice lll_reduce(const IntLattice& lattice, const Rat& delta = Rat(3, 4));

/// Lattice vector near target by nearest-plane rounding against an
/// LLL-reduced basis.
IntVector babai_nearest(const IntLattice& reduced, const IntVector& target);

Int dot(const IntVector& a, const IntVector& b);

}  // namespace subscan
