#include "subscan/poly.hpp"

#include <stdexcept>

#include "subscan/errors.hpp"
#include "subscan/modp.hpp"

namespace subscan {

PolyQ to_q(const PolyZ& p) {
  std::vector<Rat> c(p.coefficients().begin(), p.coefficients().end());
  return PolyQ(std::move(c));
}

bool is_integral(const PolyQ& p) {
  for (const auto& v : p.coefficients()) {
    if (v.get_den() != 1) return false;
  }
  return true;
}

PolyZ to_z(const PolyQ& p) {
  std::vector<Int> c;
  c.reserve(p.size());
  for (const auto& v : p.coefficients()) {
    if (v.get_den() != 1) throw Error("to_z: non-integral coefficient " + v.get_str());
    c.push_back(v.get_num());
  }
  return PolyZ(std::move(c));
}

Int common_denominator(const PolyQ& p) {
  Int d = 1;
  for (const auto& v : p.coefficients()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
  return d;
}

Int content(const PolyZ& p) {
  Int g = 0;
  for (const auto& v : p.coefficients()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

std::pair<PolyQ, PolyQ> divrem(const PolyQ& a, const PolyQ& b) {
  if (b.is_zero()) throw Error("divrem: division by zero polynomial");
  if (a.degree() < b.degree()) return {PolyQ{}, a};
  std::vector<Rat> r(a.coefficients().begin(), a.coefficients().end());
  const int db = b.degree();
  std::vector<Rat> q(a.degree() - db + 1);
  const Rat inv_lc = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Rat coef = r[i] * inv_lc;
    q[i - db] = coef;
    for (int j = 0; j < db; ++j) r[i - db + j] -= coef * b[j];
    r[i] = 0;
  }
  r.resize(db);
  return {PolyQ(std::move(q)), PolyQ(std::move(r))};
}

PolyQ make_monic(const PolyQ& p) {
  if (p.is_zero()) return p;
  Rat inv = 1 / p.leading();
  return p * inv;
}

PolyQ gcd(const PolyQ& a, const PolyQ& b) {
  PolyQ x = a, y = b;
  while (!y.is_zero()) {
    PolyQ r = divrem(x, y).second;
    x = std::move(y);
    y = make_monic(r);
  }
  return make_monic(x);
}

PolyQ invert_mod(const PolyQ& a, const PolyQ& f) {
  // extended Euclid tracking only the cofactor of a
  PolyQ r0 = f, r1 = divrem(a, f).second;
  PolyQ t0, t1 = PolyQ::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    PolyQ t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
    // keep the remainder monic to slow coefficient growth
    if (!r1.is_zero()) {
      Rat inv = 1 / r1.leading();
      r1 *= inv;
      t1 *= inv;
    }
  }
  if (r0.degree() != 0) throw Error("invert_mod: element is not invertible");
  return divrem(t0 * (1 / r0.leading()), f).second;
}

PolyZ pseudo_remainder(const PolyZ& a, const PolyZ& b) {
  const int db = b.degree();
  if (db < 0) throw Error("pseudo_remainder: zero divisor");
  if (a.degree() < db) return a;
  std::vector<Int> r(a.coefficients().begin(), a.coefficients().end());
  const Int& lc = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Int coef = r[i];
    for (int j = 0; j <= i; ++j) r[j] *= lc;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= coef * b[j];
  }
  r.resize(db);
  PolyZ out(std::move(r));
  return out;
}

namespace {

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

PolyZ exact_div(const PolyZ& p, const Int& d) {
  std::vector<Int> c(p.coefficients().begin(), p.coefficients().end());
  for (auto& v : c) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
  return PolyZ(std::move(c));
}

}  // namespace

Int resultant(const PolyZ& f, const PolyZ& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  PolyZ A = f, B = g;
  int s = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if ((A.degree() & 1) && (B.degree() & 1)) s = -1;
  }
  if (B.degree() == 0) return s * ipow(B.leading(), A.degree());
  Int a = content(A), b = content(B);
  A = exact_div(A, a);
  B = exact_div(B, b);
  Int t = ipow(a, B.degree()) * ipow(b, A.degree());
  Int gg = 1, h = 1;
  for (;;) {
    const int delta = A.degree() - B.degree();
    if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
    PolyZ R = pseudo_remainder(A, B);
    if (R.is_zero()) return 0;
    A = std::move(B);
    B = exact_div(R, gg * ipow(h, delta));
    gg = A.leading();
    // h <- h^(1-delta) g^delta
    if (delta == 0) {
      // h unchanged
    } else {
      Int num = ipow(gg, delta);
      Int den = ipow(h, delta - 1);
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (B.degree() == 0) {
      const int da = A.degree();
      Int num = ipow(B.leading(), da);
      Int out;
      if (da == 0) {
        out = num * h;
      } else {
        Int den = ipow(h, da - 1);
        mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      }
      return s * t * out;
    }
  }
}

Rat resultant(const PolyQ& f, const PolyQ& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  Int df = common_denominator(f), dg = common_denominator(g);
  PolyZ F = to_z(f * Rat(df)), G = to_z(g * Rat(dg));
  // Res(F, G) = df^deg g * dg^deg f * Res(f, g)
  Rat scale(ipow(df, g.degree()) * ipow(dg, f.degree()));
  Rat r(resultant(F, G));
  return r / scale;
}

bool is_squarefree(const PolyZ& f) {
  if (f.degree() <= 0) return !f.is_zero();
  std::uint64_t p = 1000003;
  for (int attempt = 0; attempt < 30; ++attempt) {
    p = next_prime(p);
    if (mod_u64(f.leading(), p) == 0) continue;
    if (squarefree_mod_p(f, p)) return true;
  }
  return resultant(f, derivative(f)) != 0;
}

PolyQ eth_root_coeffs(const PolyQ& f, unsigned e) {
  if (e < 2) throw Error("eth_root_coeffs: e must be at least 2");
  if (!f.is_monic()) throw Error("eth_root_coeffs: f must be monic");
  const int d = f.degree();
  if (d < 1 || d % static_cast<int>(e) != 0) throw DegreeNotDivisible("degree " + std::to_string(d) + " is not divisible by " + std::to_string(e));
  const std::size_t n = static_cast<std::size_t>(d) / e;
  // Work with reversed polynomials: H = rev(g) = 1 + b_{n-1} z + ... must
  // satisfy H^e == rev(f) mod z^{n+1}. powers[j][k] is the z^k coefficient
  // of H^(j+1), filled one column at a time.
  std::vector<Rat> H(n + 1);
  H[0] = 1;
  std::vector<std::vector<Rat>> powers(e, std::vector<Rat>(n + 1));
  for (unsigned j = 0; j < e; ++j) powers[j][0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    // column k of H^j with H_k provisionally zero
    for (unsigned j = 1; j < e; ++j) {
      Rat acc = 0;
      for (std::size_t i = 1; i < k; ++i) acc += H[i] * powers[j - 1][k - i];
      acc += powers[j - 1][k];  // H_0 * coefficient k of H^j-1
      powers[j][k] = acc;
    }
    // H_k enters the z^k coefficient of H^e linearly with factor e
    H[k] = (f[d - k] - powers[e - 1][k]) / Rat(e);
    powers[0][k] = H[k];
    for (unsigned j = 1; j < e; ++j) powers[j][k] += Rat(j + 1) * H[k];
  }
  std::vector<Rat> g(n + 1);
  for (std::size_t k = 0; k <= n; ++k) g[n - k] = H[k];
  return PolyQ(std::move(g));
}

std::vector<Rat> power_sums(const PolyQ& f, std::size_t m) {
  if (!f.is_monic()) throw Error("power_sums: f must be monic");
  const std::size_t d = static_cast<std::size_t>(f.degree());
  // c(i) is the coefficient of X^(d-i)
  auto c = [&](std::size_t i) -> const Rat& { return f[d - i]; };
  std::vector<Rat> s(m + 1);
  for (std::size_t k = 1; k <= m; ++k) {
    Rat acc = 0;
    if (k <= d) acc = -Rat(static_cast<long>(k)) * c(k);
    for (std::size_t i = 1; i < k && i <= d; ++i) acc -= c(i) * s[k - i];
    s[k] = acc;
  }
  s.erase(s.begin());
  return s;
}

PolyQ poly_from_power_sums(std::span<const Rat> s) {
  const std::size_t n = s.size();
  // e[i] is the coefficient of X^(n-i)
  std::vector<Rat> e(n + 1);
  e[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Rat acc = s[k - 1];
    for (std::size_t i = 1; i < k; ++i) acc += e[i] * s[k - i - 1];
    e[k] = -acc / Rat(static_cast<long>(k));
  }
  std::vector<Rat> c(n + 1);
  for (std::size_t i = 0; i <= n; ++i) c[n - i] = e[i];
  return PolyQ(std::move(c));
}

PolyQ eth_root_newton(const PolyQ& f, unsigned e) {
  if (e < 2) throw Error("eth_root_newton: e must be at least 2");
  const int d = f.degree();
  if (d < 1 || d % static_cast<int>(e) != 0) throw DegreeNotDivisible("degree " + std::to_string(d) + " is not divisible by " + std::to_string(e));
  const std::size_t n = static_cast<std::size_t>(d) / e;
  std::vector<Rat> s = power_sums(f, n);
  for (auto& v : s) v /= Rat(e);
  return poly_from_power_sums(s);
}

PolyZ compositum_minpoly(const PolyZ& g, const PolyZ& h, const Int& shift) {
  if (!g.is_monic() || !h.is_monic()) throw Error("compositum_minpoly: inputs must be monic");
  const std::size_t m = static_cast<std::size_t>(g.degree()) * static_cast<std::size_t>(h.degree());
  // evaluate R at X = 0..m, interpolate with Newton divided differences
  std::vector<Rat> xs(m + 1), dd(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    xs[j] = Rat(static_cast<long>(j));
    PolyZ lin{Int(static_cast<long>(j)), Int(-shift)};  // x_j - c*y
    dd[j] = Rat(resultant(g, compose(h, lin)));
  }
  for (std::size_t level = 1; level <= m; ++level) {
    for (std::size_t j = m; j >= level; --j) dd[j] = (dd[j] - dd[j - 1]) / (xs[j] - xs[j - level]);
  }
  PolyQ acc = PolyQ::constant(dd[m]);
  for (std::size_t j = m; j-- > 0;) acc = acc * PolyQ{-xs[j], Rat(1)} + PolyQ::constant(dd[j]);
  PolyZ R = to_z(acc);
  if (!is_squarefree(R)) throw NotSquarefree("compositum_minpoly: resultant is not squarefree for shift " + shift.get_str());
  return R;
}

NormalizedInput normalize_input(const PolyQ& f_raw, const FactorBudget& budget) {
  if (f_raw.degree() < 1) throw InputError("normalize_input: polynomial must have positive degree");
  PolyQ f = make_monic(f_raw);
  const int d = f.degree();
  // v_q(scale) = max over i of ceil(v_q(den a_i) / (d - i))
  std::map<Int, unsigned> need;
  for (int i = 0; i < d; ++i) {
    const Int& den = f[i].get_den();
    if (den == 1) continue;
    FactoredInt fac = factor_integer(den, budget);
    for (const auto& [q, v] : fac.primes) {
      unsigned k = (v + static_cast<unsigned>(d - i) - 1) / static_cast<unsigned>(d - i);
      need[q] = std::max(need[q], k);
    }
  }
  Int scale = 1;
  for (const auto& [q, k] : need) {
    Int qk;
    mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), k);
    scale *= qk;
  }
  std::vector<Int> c(static_cast<std::size_t>(d) + 1);
  Int power = 1;  // scale^(d - i)
  for (int i = d; i >= 0; --i) {
    Rat v = f[i] * Rat(power);
    if (v.get_den() != 1) throw Error("normalize_input: scaling failed to clear denominators");
    c[i] = v.get_num();
    power *= scale;
  }
  return {PolyZ(std::move(c)), scale};
}

}  // namespace subscan
