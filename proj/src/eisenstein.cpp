#include "subscan/eisenstein.hpp"

#include "subscan/errors.hpp"

namespace subscan {

std::string EisensteinInt::str() const { return "(" + x.get_str() + ")+(" + y.get_str() + ")w"; }

EisensteinInt pow(const EisensteinInt& a, unsigned e) {
  EisensteinInt r{1, 0}, b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

EisensteinInt split_prime(std::uint64_t p) {
  if (p % 3 != 1 || !is_prime_u64(p)) throw NotSplitPrime(std::to_string(p) + " does not split in Z[w]");
  Int P(static_cast<unsigned long>(p));
  Int ybound;
  Int four_p = 4 * P;
  mpz_sqrt(ybound.get_mpz_t(), Int(four_p / 3 + 1).get_mpz_t());
  ybound += 1;
  for (Int y = 0; y <= ybound; ++y) {
    // x^2 - x y + y^2 - p = 0  =>  x = (y + sqrt(4p - 3y^2)) / 2
    Int disc = four_p - 3 * y * y;
    if (disc < 0) break;
    Int r;
    if (!mpz_perfect_square_p(disc.get_mpz_t())) continue;
    mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
    for (Int x : {Int(y - r), Int(y + r)}) {
      if (x < 0 || !mpz_even_p(x.get_mpz_t())) continue;
      Int xx = x / 2;
      return {xx, y};
    }
  }
  throw NotSplitPrime("no element of norm " + std::to_string(p));
}

namespace {

// Elements of F_q[w]/(w^2+w+1) as (a, b) = a + b w.
struct Fq2 {
  std::uint64_t a, b;
};

Fq2 mul(const Fq2& u, const Fq2& v, std::uint64_t q) {
  std::uint64_t bd = mulmod(u.b, v.b, q);
  std::uint64_t re = (mulmod(u.a, v.a, q) + q - bd) % q;
  std::uint64_t im = (mulmod(u.a, v.b, q) + mulmod(u.b, v.a, q)) % q;
  im = (im + q - bd) % q;
  return {re, im};
}

Fq2 pow(Fq2 base, Int e, std::uint64_t q) {
  Fq2 r{1 % q, 0};
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base, q);
    base = mul(base, base, q);
    e >>= 1;
  }
  return r;
}

}  // namespace

int cubic_residue_class(const EisensteinInt& a, std::uint64_t q) {
  if (q == 3 || !is_prime_u64(q)) throw BadPrime("cubic_residue_class: bad prime " + std::to_string(q));
  if (mod_u64(a.norm(), q) == 0) throw BadPrime("cubic_residue_class: " + std::to_string(q) + " divides the norm");
  const std::uint64_t x = mod_u64(a.x, q), y = mod_u64(a.y, q);
  if (q % 3 == 1) {
    // roots of w^2 + w + 1 are (-1 +- sqrt(-3)) / 2
    std::uint64_t s = *sqrt_mod(q - 3, q);
    std::uint64_t inv2 = (q + 1) / 2;
    std::uint64_t r1 = mulmod((q - 1 + s) % q, inv2, q);
    std::uint64_t r2 = mulmod((q - 1 + q - s) % q, inv2, q);
    std::uint64_t w = std::min(r1, r2);
    std::uint64_t v = (x + mulmod(y, w, q)) % q;
    std::uint64_t c = powmod(v, (q - 1) / 3, q);
    if (c == 1) return 0;
    if (c == w) return 1;
    if (c == mulmod(w, w, q)) return 2;
    throw Error("cubic_residue_class: character value outside mu_3");
  }
  Int e = (Int(static_cast<unsigned long>(q)) * static_cast<unsigned long>(q) - 1) / 3;
  Fq2 c = pow(Fq2{x, y}, e, q);
  if (c.a == 1 % q && c.b == 0) return 0;
  if (c.a == 0 && c.b == 1 % q) return 1;
  // w^2 = -1 - w
  if (c.a == q - 1 && c.b == q - 1) return 2;
  throw Error("cubic_residue_class: character value outside mu_3");
}

}  // namespace subscan
