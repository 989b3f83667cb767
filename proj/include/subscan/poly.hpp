#pragma once

// Dense univariate polynomials over Z and Q.
//
// Coefficients are stored in ascending order of degree with trailing zeros
// trimmed, so the zero polynomial has an empty coefficient vector and
// degree() == -1.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "subscan/arith.hpp"

namespace subscan {

template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> ascending) : c_(std::move(ascending)) { trim(); }
  Polynomial(std::initializer_list<T> ascending) : c_(ascending) { trim(); }

  static Polynomial constant(T value) { return Polynomial(std::vector<T>{std::move(value)}); }
  static Polynomial monomial(T coeff, std::size_t k) {
    std::vector<T> c(k + 1, T(0));
    c[k] = std::move(coeff);
    return Polynomial(std::move(c));
  }
  static Polynomial x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  std::size_t size() const { return c_.size(); }

  /// Coefficient of X^i (zero beyond the degree).
  const T& operator[](std::size_t i) const {
    static const T zero(0);
    return i < c_.size() ? c_[i] : zero;
  }
  const T& leading() const { return c_.back(); }
  std::span<const T> coefficients() const { return c_; }
  std::vector<T>& mutable_coefficients() { return c_; }

  void set(std::size_t i, T value) {
    if (i >= c_.size()) c_.resize(i + 1, T(0));
    c_[i] = std::move(value);
    trim();
  }

  /// Restores the canonical form after direct coefficient edits.
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  std::vector<T> c_;
};

using PolyZ = Polynomial<Int>;
using PolyQ = Polynomial<Rat>;

template <class T>
Polynomial<T> derivative(const Polynomial<T>& p) {
  if (p.degree() < 1) return {};
  std::vector<T> d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  return Polynomial<T>(std::move(d));
}

template <class T>
T evaluate(const Polynomial<T>& p, const T& x) {
  T acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

template <class T>
Polynomial<T> pow(const Polynomial<T>& p, unsigned e) {
  Polynomial<T> result = Polynomial<T>::constant(T(1));
  Polynomial<T> base = p;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

/// p(q(X)).
template <class T>
Polynomial<T> compose(const Polynomial<T>& p, const Polynomial<T>& q) {
  Polynomial<T> acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * q + Polynomial<T>::constant(p[i]);
  return acc;
}

/// Quotient and remainder for a monic (or unit-leading) divisor; exact over Z.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divrem_monic(const Polynomial<T>& a, const Polynomial<T>& b) {
  std::vector<T> r(a.coefficients().begin(), a.coefficients().end());
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial<T>{}, a};
  std::vector<T> q(a.degree() - db + 1, T(0));
  for (int i = a.degree(); i >= db; --i) {
    T coef = r[i];
    if (coef == 0) continue;
    q[i - db] = coef;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= coef * b[j];
  }
  r.resize(db);
  return {Polynomial<T>(std::move(q)), Polynomial<T>(std::move(r))};
}

/// Remainder modulo a monic polynomial.
template <class T>
Polynomial<T> rem_monic(const Polynomial<T>& a, const Polynomial<T>& b) {
  return divrem_monic(a, b).second;
}

PolyQ to_q(const PolyZ& p);
/// Requires integral coefficients.
PolyZ to_z(const PolyQ& p);
bool is_integral(const PolyQ& p);
/// Smallest positive integer d with d*p integral.
Int common_denominator(const PolyQ& p);
Int content(const PolyZ& p);

std::pair<PolyQ, PolyQ> divrem(const PolyQ& a, const PolyQ& b);
PolyQ make_monic(const PolyQ& p);
/// Monic gcd over Q (zero if both inputs are zero).
PolyQ gcd(const PolyQ& a, const PolyQ& b);
/// Inverse of a modulo f over Q; throws if gcd(a, f) != 1.
PolyQ invert_mod(const PolyQ& a, const PolyQ& f);

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
PolyZ pseudo_remainder(const PolyZ& a, const PolyZ& b);

/// Res(f, g) via the subresultant PRS over Z.
Int resultant(const PolyZ& f, const PolyZ& g);
Rat resultant(const PolyQ& f, const PolyQ& g);

/// True when gcd(f, f') = 1 over Q. Tries small primes before falling back
/// to an exact resultant.
bool is_squarefree(const PolyZ& f);

/// Unique monic g of degree deg(f)/e whose e-th power agrees with f in the
/// top deg(g)+1 coefficients, via the triangular coefficient recurrence.
PolyQ eth_root_coeffs(const PolyQ& f, unsigned e);

/// s_1..s_m of the roots of monic f, from Newton's identities.
std::vector<Rat> power_sums(const PolyQ& f, std::size_t m);

/// Monic polynomial of degree s.size() with the given power sums.
PolyQ poly_from_power_sums(std::span<const Rat> s);

/// Same candidate as eth_root_coeffs, through power sums divided by e.
PolyQ eth_root_newton(const PolyQ& f, unsigned e);

/// Res_y(g(y), h(X - c*y)); throws NotSquarefree if the result is not squarefree.
PolyZ compositum_minpoly(const PolyZ& g, const PolyZ& h, const Int& shift = 1);

struct NormalizedInput {
  PolyZ f;
  Int scale;
};

/// Monic integral f with f(X) = scale^deg * (f_raw/lc)(X/scale).
NormalizedInput normalize_input(const PolyQ& f_raw, const FactorBudget& budget = {});

}  // namespace subscan
