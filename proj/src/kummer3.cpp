#include "subscan/kummer3.hpp"

#include <algorithm>

#include "subscan/errors.hpp"

namespace subscan {

namespace {

// X^3 - 3cX - t
Int cubic_value(const Int& x, const Int& c, const Int& t) { return x * x * x - 3 * c * x - t; }

std::optional<Int> search_monotone(Int lo, Int hi, bool increasing, const Int& c, const Int& t) {
  while (lo <= hi) {
    Int mid = lo + (hi - lo) / 2;
    if (hi - lo < 2) {
      for (Int x = lo; x <= hi; ++x)
        if (cubic_value(x, c, t) == 0) return x;
      return std::nullopt;
    }
    Int val = cubic_value(mid, c, t);
    if (val == 0) return mid;
    if ((val < 0) == increasing)
      lo = mid + 1;
    else
      hi = mid - 1;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Int> integer_root_of_depressed_cubic(const Int& c, const Int& t) {
  // critical points at +-sqrt(c); real roots bounded by 2*sqrt(|c|) + 2*|t|^(1/3) + 2
  Int ac = abs(c);
  Int s;
  mpz_sqrt(s.get_mpz_t(), ac.get_mpz_t());
  Int tr;
  Int at = abs(t);
  mpz_root(tr.get_mpz_t(), at.get_mpz_t(), 3);
  Int bound = 2 * (s + 1) + 2 * (tr + 1);
  if (c <= 0) return search_monotone(-bound, bound, true, c, t);
  Int s_hi = s * s == c ? s : s + 1;
  if (auto r = search_monotone(-bound, -s_hi, true, c, t)) return r;
  if (auto r = search_monotone(-s, s, false, c, t)) return r;
  return search_monotone(s_hi, bound, true, c, t);
}

CubicCandidate build_generator(const F3Vector& exps, const PlaceBasis& basis) {
  if (exps.size() != basis.width()) throw Error("build_generator: exponent vector has wrong length");
  if (std::all_of(exps.begin(), exps.end(), [](std::uint8_t e) { return e % 3 == 0; }))
    throw ZeroExponentVector("build_generator: zero exponent vector");
  CubicCandidate cand;
  cand.exponents = exps;
  for (auto& e : cand.exponents) e %= 3;
  cand.a = kummer_element(basis, cand.exponents);
  Int norm = cand.a.norm();
  if (mpz_root(cand.c.get_mpz_t(), norm.get_mpz_t(), 3) == 0) throw Error("build_generator: norm is not a cube");
  cand.t = cand.a.trace();
  cand.v = cand.a.y;
  cand.minpoly = PolyZ{-cand.t, -3 * cand.c, Int(0), Int(1)};
  Int disc = 108 * cand.c * cand.c * cand.c - 27 * cand.t * cand.t;
  if (disc != 81 * cand.v * cand.v) throw Error("build_generator: discriminant is not (9v)^2");
  if (integer_root_of_depressed_cubic(cand.c, cand.t)) throw InputError("build_generator: degenerate candidate with a rational root");
  return cand;
}

std::vector<CubicCandidate> enumerate_cubic_candidates(const PlaceBasis& basis, const std::vector<F3Vector>& kernel) {
  std::vector<CubicCandidate> out;
  for (const auto& v : kernel) {
    try {
      out.push_back(build_generator(v, basis));
    } catch (const InputError&) {
    }
  }
  return out;
}

}  // namespace subscan
