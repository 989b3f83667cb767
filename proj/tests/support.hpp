#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "subscan/arith.hpp"
#include "subscan/poly.hpp"

namespace subscan::test {

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Rat random_rat(std::mt19937_64& rng, std::int64_t num_bound, std::int64_t den_bound) {
  Rat r(Int(static_cast<long>(uniform(rng, -num_bound, num_bound))), Int(static_cast<long>(uniform(rng, 1, den_bound))));
  r.canonicalize();
  return r;
}

inline PolyQ random_monic_q(std::mt19937_64& rng, int degree, std::int64_t num_bound = 9, std::int64_t den_bound = 4) {
  std::vector<Rat> c(degree + 1);
  for (int i = 0; i < degree; ++i) c[i] = random_rat(rng, num_bound, den_bound);
  c[degree] = 1;
  return PolyQ(std::move(c));
}

inline PolyZ random_monic_z(std::mt19937_64& rng, int degree, std::int64_t bound = 9) {
  std::vector<Int> c(degree + 1);
  for (int i = 0; i < degree; ++i) c[i] = static_cast<long>(uniform(rng, -bound, bound));
  c[degree] = 1;
  return PolyZ(std::move(c));
}

inline PolyZ random_z(std::mt19937_64& rng, int degree, std::int64_t bound = 9) {
  std::vector<Int> c(degree + 1);
  for (auto& v : c) v = static_cast<long>(uniform(rng, -bound, bound));
  if (c[degree] == 0) c[degree] = 1;
  return PolyZ(std::move(c));
}

/// Uniform integer in [0, 2^bits).
inline Int random_bits(std::mt19937_64& rng, unsigned bits) {
  Int r = 0;
  for (unsigned done = 0; done < bits; done += 32) {
    r <<= 32;
    r += static_cast<unsigned long>(rng() & 0xffffffffu);
  }
  r >>= (((bits + 31) / 32) * 32 - bits);
  return r;
}

template <class T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace subscan::test
