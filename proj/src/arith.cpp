#include "subscan/arith.hpp"

#include <algorithm>
#include <cmath>

#include "subscan/errors.hpp"

namespace subscan {

Int FactoredInt::value() const {
  Int v = sign;
  for (const auto& [p, e] : primes) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

std::vector<Int> FactoredInt::support() const {
  std::vector<Int> out;
  out.reserve(primes.size());
  for (const auto& kv : primes) out.push_back(kv.first);
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::uint64_t r = m, nr = a % m;
  while (nr) {
    std::uint64_t q = r / nr;
    std::int64_t tmp = t - static_cast<std::int64_t>(q) * nt;
    t = nt;
    nt = tmp;
    std::uint64_t rtmp = r - q * nr;
    r = nr;
    nr = rtmp;
  }
  if (r != 1) throw Error("invmod: not invertible");
  return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(m)) : static_cast<std::uint64_t>(t);
}

std::uint64_t mod_u64(const Int& a, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(a.get_mpz_t(), p);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 2^64.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

bool fits_u64(const Int& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 63; }

std::uint64_t to_u64(const Int& n) { return mpz_get_ui(n.get_mpz_t()); }

Int random_below(std::mt19937_64& gen, const Int& bound) {
  // bound > 0; draws enough words to make the modulo bias negligible
  std::size_t words = mpz_sizeinbase(bound.get_mpz_t(), 2) / 64 + 2;
  Int r = 0;
  for (std::size_t i = 0; i < words; ++i) {
    r <<= 64;
    std::uint64_t w = gen();
    r += Int(static_cast<unsigned long>(w));
  }
  return r % bound;
}

bool miller_rabin_round(const Int& n, const Int& d, unsigned s, const Int& a) {
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Int nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
  }
  return false;
}

}  // namespace

bool is_probable_prime(const Int& n, std::uint64_t seed) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  Int d = n - 1;
  unsigned s = static_cast<unsigned>(mpz_scan1(d.get_mpz_t(), 0));
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  std::mt19937_64 gen(seed);
  Int span = n - 3;
  for (int i = 0; i < 40; ++i) {
    Int a = 2 + random_below(gen, span);
    if (!miller_rabin_round(n, d, s, a)) return false;
  }
  // BPSW (strong base-2 plus strong Lucas) as the final check.
  return mpz_probab_prime_p(n.get_mpz_t(), 1) > 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime_u64(c)) ++c;
  return c;
}

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 when the
// iteration allowance runs out.
Int pollard_brent(const Int& n, std::mt19937_64& gen, std::uint64_t& allowance) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (;;) {
    Int y = 1 + random_below(gen, n - 1);
    Int c = 1 + random_below(gen, n - 1);
    const std::uint64_t m = 128;
    Int g = 1, q = 1, x, ys;
    std::uint64_t r = 1;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        std::uint64_t steps = std::min(m, r - k);
        if (steps > allowance) return 0;
        allowance -= steps;
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          Int diff = x - y;
          q = q * abs(diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += steps;
      }
      r *= 2;
    }
    if (g == n) {
      // batch overshot; backtrack one step at a time
      do {
        ys = (ys * ys + c) % n;
        Int diff = x - ys;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
    if (allowance == 0) return 0;
  }
}

void factor_cofactor(const Int& n, const FactorBudget& budget, std::mt19937_64& gen,
                     std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n, budget.seed)) {
    out[n] += 1;
    return;
  }
  // perfect powers defeat rho surprisingly often; peel them first
  for (unsigned k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
    Int root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
      std::map<Int, unsigned> sub;
      factor_cofactor(root, budget, gen, sub);
      for (const auto& [p, e] : sub) out[p] += e * k;
      return;
    }
  }
  std::uint64_t allowance = budget.rho_iterations;
  Int d = pollard_brent(n, gen, allowance);
  if (d == 0) throw BudgetExceeded("factor_integer: cofactor " + n.get_str() + " resisted Pollard rho");
  factor_cofactor(d, budget, gen, out);
  factor_cofactor(Int(n / d), budget, gen, out);
}

}  // namespace

FactoredInt factor_integer(const Int& n, const FactorBudget& budget) {
  if (n == 0) throw Error("factor_integer: zero has no factorization");
  FactoredInt out;
  out.sign = n < 0 ? -1 : 1;
  Int m = abs(n);
  for (std::uint64_t p = 2; p <= budget.trial_bound; p = (p == 2 ? 3 : p + 2)) {
    if (Int(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p) > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      out.primes[Int(static_cast<unsigned long>(p))] += 1;
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  if (m == 1) return out;
  std::mt19937_64 gen(budget.seed);
  factor_cofactor(m, budget, gen, out.primes);
  return out;
}

int legendre(const Int& a, std::uint64_t p) {
  std::uint64_t r = mod_u64(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int legendre(const Int& a, const Int& p) {
  if (fits_u64(p)) return legendre(a, to_u64(p));
  Int r, e = (p - 1) / 2;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  if (r == 0) return 0;
  mpz_powm(r.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return r == 1 ? 1 : -1;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

Residue crt(std::span<const Residue> residues) {
  Residue acc{0, 1};
  for (const auto& [r, m] : residues) {
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), acc.m.get_mpz_t(), m.get_mpz_t());
    if (g != 1) throw NonCoprimeModuli("crt: moduli " + acc.m.get_str() + " and " + m.get_str() + " share a factor");
    // x = acc.r + acc.m * s * (r - acc.r)
    Int M = acc.m * m;
    Int x = acc.r + acc.m * ((s * (r - acc.r)) % m);
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
    acc = {x, M};
  }
  return acc;
}

std::optional<Rat> rational_reconstruction(const Int& r, const Int& m) {
  Int bound;
  Int half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Int r0 = m, r1 = r % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Int g;
  mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return std::nullopt;
  Rat out(r1, t1);
  out.canonicalize();
  return out;
}

Int centered(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

}  // namespace subscan
