#include "subscan/modp.hpp"

#include <algorithm>

#include "subscan/errors.hpp"

namespace subscan {

namespace {

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return (s >= p || s < a) ? s - p : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + (p - b); }

}  // namespace

Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int int_pow(std::uint64_t base, unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// ---------------------------------------------------------------- PolyFp

PolyFp::PolyFp(std::uint64_t p, std::vector<std::uint64_t> ascending) : p_(p), c_(std::move(ascending)) {
  for (auto& v : c_) v %= p_;
  trim();
}

PolyFp::PolyFp(std::uint64_t p, const PolyZ& f) : p_(p) {
  c_.reserve(f.size());
  for (const auto& v : f.coefficients()) c_.push_back(mod_u64(v, p));
  trim();
}

void PolyFp::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyFp PolyFp::monic() const {
  if (is_zero() || leading() == 1) return *this;
  return *this * invmod(leading(), p_);
}

std::uint64_t PolyFp::evaluate(std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = addmod(mulmod(acc, x, p_), c_[i], p_);
  return acc;
}

PolyZ PolyFp::lift() const {
  std::vector<Int> c;
  c.reserve(c_.size());
  for (auto v : c_) c.emplace_back(static_cast<unsigned long>(v));
  return PolyZ(std::move(c));
}

PolyFp operator+(const PolyFp& a, const PolyFp& b) {
  std::vector<std::uint64_t> r(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = addmod(a[i], b[i], a.p_);
  return PolyFp(a.p_, std::move(r));
}

PolyFp operator-(const PolyFp& a, const PolyFp& b) {
  std::vector<std::uint64_t> r(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = submod(a[i], b[i], a.p_);
  return PolyFp(a.p_, std::move(r));
}

PolyFp operator*(const PolyFp& a, const PolyFp& b) {
  if (a.is_zero() || b.is_zero()) return PolyFp(a.p_, std::vector<std::uint64_t>{});
  const std::uint64_t p = a.p_;
  std::vector<std::uint64_t> r(a.c_.size() + b.c_.size() - 1, 0);
  if (p < (std::uint64_t{1} << 31)) {
    // products fit in 62 bits; defer reductions
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        r[i + j] += a.c_[i] * b.c_[j];
        if (r[i + j] >= (std::uint64_t{1} << 63)) r[i + j] %= p;
      }
    }
  } else {
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = addmod(r[i + j], mulmod(a.c_[i], b.c_[j], p), p);
    }
  }
  return PolyFp(p, std::move(r));
}

PolyFp operator*(const PolyFp& a, std::uint64_t s) {
  std::vector<std::uint64_t> r(a.c_);
  for (auto& v : r) v = mulmod(v, s % a.p_, a.p_);
  return PolyFp(a.p_, std::move(r));
}

std::pair<PolyFp, PolyFp> divrem(const PolyFp& a, const PolyFp& b) {
  if (b.is_zero()) throw Error("divrem: division by zero polynomial mod p");
  const std::uint64_t p = a.prime();
  if (a.degree() < b.degree()) return {PolyFp(p, std::vector<std::uint64_t>{}), a};
  std::vector<std::uint64_t> r = a.coefficients();
  const int db = b.degree();
  std::vector<std::uint64_t> q(a.degree() - db + 1, 0);
  const std::uint64_t inv = invmod(b.leading(), p);
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    std::uint64_t coef = mulmod(r[i], inv, p);
    q[i - db] = coef;
    for (int j = 0; j <= db; ++j) r[i - db + j] = submod(r[i - db + j], mulmod(coef, b[j], p), p);
  }
  r.resize(db);
  return {PolyFp(p, std::move(q)), PolyFp(p, std::move(r))};
}

PolyFp rem(const PolyFp& a, const PolyFp& b) {
  if (a.degree() < b.degree()) return a;
  return divrem(a, b).second;
}

PolyFp derivative(const PolyFp& a) {
  if (a.degree() < 1) return PolyFp(a.prime(), std::vector<std::uint64_t>{});
  std::vector<std::uint64_t> r(a.coefficients().size() - 1);
  for (std::size_t i = 1; i < a.coefficients().size(); ++i) r[i - 1] = mulmod(a[i], i % a.prime(), a.prime());
  return PolyFp(a.prime(), std::move(r));
}

PolyFp gcd(const PolyFp& a, const PolyFp& b) {
  PolyFp x = a, y = b;
  while (!y.is_zero()) {
    PolyFp r = rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FpXgcd xgcd(const PolyFp& a, const PolyFp& b) {
  const std::uint64_t p = a.prime();
  PolyFp r0 = a, r1 = b;
  PolyFp s0 = PolyFp::constant(p, 1), s1(p, std::vector<std::uint64_t>{});
  PolyFp t0(p, std::vector<std::uint64_t>{}), t1 = PolyFp::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    PolyFp s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  std::uint64_t inv = invmod(r0.leading(), p);
  return {r0 * inv, s0 * inv, t0 * inv};
}

PolyFp mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m) { return rem(a * b, m); }

PolyFp powmod(const PolyFp& base, std::uint64_t e, const PolyFp& m) {
  PolyFp result = rem(PolyFp::constant(base.prime(), 1), m);
  PolyFp b = rem(base, m);
  while (e) {
    if (e & 1) result = mulmod(result, b, m);
    e >>= 1;
    if (e) b = mulmod(b, b, m);
  }
  return result;
}

int total_degree(const DegreeMultiset& d) {
  int s = 0;
  for (const auto& [deg, count] : d) s += deg * count;
  return s;
}

int factor_count(const DegreeMultiset& d) {
  int s = 0;
  for (const auto& kv : d) s += kv.second;
  return s;
}

bool squarefree_mod_p(const PolyZ& f, std::uint64_t p) {
  PolyFp fp(p, f);
  if (fp.degree() != f.degree()) throw LeadingCoefficientVanishes("p = " + std::to_string(p) + " divides the leading coefficient");
  if (fp.degree() <= 0) return true;
  PolyFp d = derivative(fp);
  if (d.is_zero()) return false;
  return gcd(fp, d).degree() == 0;
}

namespace {

bool fp_squarefree(const PolyFp& f) {
  if (f.degree() <= 0) return true;
  PolyFp d = derivative(f);
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

// Distinct-degree split: (d, product of all degree-d factors).
std::vector<std::pair<int, PolyFp>> ddf_split(PolyFp f) {
  const std::uint64_t p = f.prime();
  std::vector<std::pair<int, PolyFp>> out;
  PolyFp X = PolyFp::x(p);
  PolyFp h = rem(X, f);
  int d = 0;
  while (f.degree() >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, p, f);
    PolyFp g = gcd(f, h - X);
    if (g.degree() > 0) {
      out.emplace_back(d, g);
      f = divrem(f, g).first;
      h = rem(h, f);
    }
  }
  if (f.degree() > 0) out.emplace_back(f.degree(), f.monic());
  return out;
}

void equal_degree_split(const PolyFp& g, int d, std::mt19937_64& rng, std::vector<PolyFp>& out) {
  const int n = g.degree();
  if (n == d) {
    out.push_back(g.monic());
    return;
  }
  const std::uint64_t p = g.prime();
  if (p == 2) throw Error("equal_degree_split: characteristic 2 is not supported");
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(n));
    std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
    for (auto& v : coeffs) v = dist(rng);
    PolyFp a(p, std::move(coeffs));
    if (a.degree() < 1) continue;
    PolyFp common = gcd(g, a);
    PolyFp split;
    if (common.degree() > 0) {
      split = common;
    } else {
      // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
      PolyFp norm = a, frob = a;
      for (int i = 1; i < d; ++i) {
        frob = powmod(frob, p, g);
        norm = mulmod(norm, frob, g);
      }
      PolyFp c = powmod(norm, (p - 1) / 2, g) - PolyFp::constant(p, 1);
      split = gcd(g, c);
    }
    if (split.degree() > 0 && split.degree() < n) {
      equal_degree_split(split, d, rng, out);
      equal_degree_split(divrem(g, split).first.monic(), d, rng, out);
      return;
    }
  }
  throw Error("equal_degree_split: no split after 64 attempts");
}

bool factor_less(const PolyFp& a, const PolyFp& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coefficients().rbegin(), a.coefficients().rend(),
                                      b.coefficients().rbegin(), b.coefficients().rend());
}

}  // namespace

DegreeMultiset ddf_degrees(const PolyFp& f) {
  if (f.is_zero()) throw Error("ddf_degrees: zero polynomial");
  PolyFp g = f.monic();
  if (!fp_squarefree(g)) throw NotSquarefree("ddf_degrees: reduction mod " + std::to_string(f.prime()) + " is not squarefree");
  DegreeMultiset out;
  for (const auto& [d, part] : ddf_split(g)) out[d] += part.degree() / d;
  return out;
}

DegreeMultiset ddf_degrees(const PolyZ& f, std::uint64_t p) {
  PolyFp fp(p, f);
  if (fp.degree() != f.degree()) throw LeadingCoefficientVanishes("p = " + std::to_string(p) + " divides the leading coefficient");
  return ddf_degrees(fp);
}

std::vector<PolyFp> factor_mod_p(const PolyFp& f, std::mt19937_64& rng) {
  PolyFp g = f.monic();
  if (!fp_squarefree(g)) throw NotSquarefree("factor_mod_p: reduction mod " + std::to_string(f.prime()) + " is not squarefree");
  std::vector<PolyFp> out;
  for (const auto& [d, part] : ddf_split(g)) equal_degree_split(part, d, rng, out);
  std::sort(out.begin(), out.end(), factor_less);
  return out;
}

std::vector<PolyFp> factor_mod_p(const PolyZ& f, std::uint64_t p, std::mt19937_64& rng) {
  PolyFp fp(p, f);
  if (fp.degree() != f.degree()) throw LeadingCoefficientVanishes("p = " + std::to_string(p) + " divides the leading coefficient");
  return factor_mod_p(fp, rng);
}

std::vector<std::uint64_t> roots_mod_p(const PolyZ& h, std::uint64_t p) {
  PolyFp hp(p, h);
  if (hp.is_zero()) throw Error("roots_mod_p: polynomial vanishes mod p");
  std::vector<std::uint64_t> roots;
  if (hp.degree() == 0) return roots;
  if (p < (std::uint64_t{1} << 16)) {
    for (std::uint64_t x = 0; x < p; ++x) {
      if (hp.evaluate(x) == 0) roots.push_back(x);
    }
    return roots;
  }
  PolyFp g = gcd(hp, powmod(PolyFp::x(p), p, hp) - PolyFp::x(p));
  if (g.degree() <= 0) return roots;
  std::vector<PolyFp> linear;
  std::mt19937_64 rng(p);
  equal_degree_split(g, 1, rng, linear);
  for (const auto& l : linear) roots.push_back((p - l[0]) % p);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---------------------------------------------------------------- ZnPoly

ZnPoly::ZnPoly(Int modulus, std::vector<Int> ascending) : m_(std::move(modulus)), c_(std::move(ascending)) { normalize(); }

ZnPoly::ZnPoly(Int modulus, const PolyZ& f)
    : m_(std::move(modulus)), c_(f.coefficients().begin(), f.coefficients().end()) {
  normalize();
}

void ZnPoly::normalize() {
  for (auto& v : c_) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m_.get_mpz_t());
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Int& ZnPoly::operator[](std::size_t i) const {
  static const Int zero(0);
  return i < c_.size() ? c_[i] : zero;
}

PolyZ ZnPoly::lift() const { return PolyZ(c_); }

PolyZ ZnPoly::centered_lift() const {
  std::vector<Int> c(c_);
  for (auto& v : c) {
    if (2 * v > m_) v -= m_;
  }
  return PolyZ(std::move(c));
}

ZnPoly ZnPoly::reduce(const Int& divisor) const { return ZnPoly(divisor, c_); }

ZnPoly operator+(const ZnPoly& a, const ZnPoly& b) {
  std::vector<Int> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return ZnPoly(a.m_, std::move(r));
}

ZnPoly operator-(const ZnPoly& a, const ZnPoly& b) {
  std::vector<Int> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return ZnPoly(a.m_, std::move(r));
}

ZnPoly operator*(const ZnPoly& a, const ZnPoly& b) {
  if (a.is_zero() || b.is_zero()) return ZnPoly(a.m_, std::vector<Int>{});
  std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
  }
  return ZnPoly(a.m_, std::move(r));
}

ZnPoly operator*(const ZnPoly& a, const Int& s) {
  std::vector<Int> r(a.c_);
  for (auto& v : r) v *= s;
  return ZnPoly(a.m_, std::move(r));
}

std::pair<ZnPoly, ZnPoly> divrem_monic(const ZnPoly& a, const ZnPoly& b) {
  const Int& m = a.modulus();
  const int db = b.degree();
  if (db < 0 || b[static_cast<std::size_t>(db)] != 1) throw Error("divrem_monic: divisor must be monic");
  if (a.degree() < db) return {ZnPoly(m, std::vector<Int>{}), a};
  std::vector<Int> r = a.coefficients();
  std::vector<Int> q(static_cast<std::size_t>(a.degree() - db + 1), Int(0));
  for (int i = a.degree(); i >= db; --i) {
    mpz_fdiv_r(r[i].get_mpz_t(), r[i].get_mpz_t(), m.get_mpz_t());
    if (r[i] == 0) continue;
    Int coef = r[i];
    q[i - db] = coef;
    for (int j = 0; j < db; ++j) mpz_submul(r[i - db + j].get_mpz_t(), coef.get_mpz_t(), b[j].get_mpz_t());
    r[i] = 0;
  }
  r.resize(static_cast<std::size_t>(db));
  return {ZnPoly(m, std::move(q)), ZnPoly(m, std::move(r))};
}

ZnPoly rem_monic(const ZnPoly& a, const ZnPoly& b) {
  if (a.degree() < b.degree()) return a;
  return divrem_monic(a, b).second;
}

ZnPoly hensel_lift_factor(const PolyZ& f, const PolyFp& f1, std::uint64_t p, unsigned k) {
  if (k == 0) throw Error("hensel_lift_factor: precision must be positive");
  PolyFp fp = PolyFp(p, f).monic();
  PolyFp h1 = f1.monic();
  auto [g1, remainder] = divrem(fp, h1);
  if (!remainder.is_zero()) throw Error("hensel_lift_factor: f1 does not divide f mod p");
  FpXgcd eg = xgcd(g1, h1);
  if (eg.g.degree() != 0) throw NotCoprimeCofactor("hensel_lift_factor: factor and cofactor share a root mod p");
  // s*g + t*h = 1 mod p
  Int P(static_cast<unsigned long>(p));
  Int m = P;
  unsigned precision = 1;
  ZnPoly g(m, g1.lift()), h(m, h1.lift()), s(m, eg.s.lift()), t(m, eg.t.lift());
  while (precision < k) {
    unsigned next = std::min(2 * precision, k);
    Int M = int_pow(p, next);
    ZnPoly F(M, f);
    g = g.reduce(M);
    h = h.reduce(M);
    s = s.reduce(M);
    t = t.reduce(M);
    ZnPoly e = F - g * h;
    auto [q, r] = divrem_monic(s * e, h);
    ZnPoly g_new = g + t * e + q * g;
    ZnPoly h_new = h + r;
    if (next < k) {
      ZnPoly one(M, PolyZ::constant(1));
      ZnPoly b = s * g_new + t * h_new - one;
      auto [c, d] = divrem_monic(s * b, h_new);
      ZnPoly s_new = s - d;
      ZnPoly t_new = t - t * b - c * g_new;
      s = std::move(s_new);
      t = std::move(t_new);
    }
    g = std::move(g_new);
    h = std::move(h_new);
    precision = next;
    m = M;
  }
  return h;
}

}  // namespace subscan
