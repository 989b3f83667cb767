#include "subscan/nfroot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "subscan/errors.hpp"

namespace subscan {

struct NumberField::Cache {
  std::once_flag inverse_once;
  PolyQ inverse;
  std::mutex lattice_mutex;
  std::map<std::tuple<std::uint64_t, unsigned, std::vector<Int>>, std::shared_ptr<const IntLattice>> lattices;
};

NumberField::NumberField(PolyZ f) : f_(std::move(f)), cache_(std::make_shared<Cache>()) {
  if (f_.degree() < 1 || !f_.is_monic()) throw InputError("NumberField: f must be monic of positive degree");
  if (!is_squarefree(f_)) throw NotSquarefree("NumberField: f is not squarefree");
  fq_ = to_q(f_);
  df_ = subscan::derivative(f_);
}

const PolyQ& NumberField::derivative_inverse() const {
  std::call_once(cache_->inverse_once, [this] { cache_->inverse = invert_mod(to_q(df_), fq_); });
  return cache_->inverse;
}

std::shared_ptr<const IntLattice> NumberField::local_lattice(std::uint64_t p, unsigned k, const ZnPoly& F1) const {
  auto key = std::make_tuple(p, k, F1.coefficients());
  {
    std::lock_guard<std::mutex> lock(cache_->lattice_mutex);
    auto it = cache_->lattices.find(key);
    if (it != cache_->lattices.end()) return it->second;
  }
  const int n = degree();
  const int d1 = F1.degree();
  const Int& pk = F1.modulus();
  // Rows p^k e_i (i < d1) and X^j - (X^j mod F1) (d1 <= j < n).
  IntLattice basis;
  for (int i = 0; i < d1; ++i) {
    IntVector row(n, Int(0));
    row[i] = pk;
    basis.basis.push_back(std::move(row));
  }
  ZnPoly xj(pk, PolyZ::monomial(Int(1), d1 - 1));
  ZnPoly x(pk, PolyZ::x());
  for (int j = d1; j < n; ++j) {
    xj = rem_monic(xj * x, F1);
    IntVector row(n, Int(0));
    for (int i = 0; i < d1; ++i) row[i] = centered(-xj[i], pk);
    row[j] = 1;
    basis.basis.push_back(std::move(row));
  }
  auto reduced = std::make_shared<const IntLattice>(lll_reduce(basis));
  std::lock_guard<std::mutex> lock(cache_->lattice_mutex);
  cache_->lattices.emplace(std::move(key), reduced);
  return reduced;
}

bool verify_certificate(const NumberField& field, const PolyZ& h, const PolyZ& y) {
  const int d = h.degree();
  if (d < 1 || !h.is_monic()) return false;
  const PolyZ& df = field.derivative();
  PolyZ yr = field.reduce(y);
  // homogeneous Horner: acc <- acc*y + h_i * f'^(d-i)
  PolyZ acc = PolyZ::constant(1);
  PolyZ dpow = PolyZ::constant(1);
  for (int i = d - 1; i >= 0; --i) {
    dpow = field.mul(dpow, df);
    acc = field.mul(acc, yr) + dpow * h[i];
  }
  return field.reduce(acc).is_zero();
}

bool verify_certificate(const NumberField& field, const RootCertificate& cert) {
  return verify_certificate(field, cert.h, cert.y);
}

void normalize_certificate(const NumberField& field, RootCertificate& cert) {
  cert.x = field.mul(to_q(cert.y), field.derivative_inverse());
}

RootCertificate certificate_from_root(const NumberField& field, const PolyZ& h, const PolyQ& x, std::string strategy) {
  RootCertificate cert;
  cert.h = h;
  PolyQ y = field.mul(to_q(field.derivative()), x);
  if (!is_integral(y)) throw Error("certificate_from_root: scaled root is not integral");
  cert.y = to_z(y);
  cert.x = field.reduce(x);
  cert.strategy = std::move(strategy);
  return cert;
}

std::vector<unsigned> precision_schedule(std::uint64_t p, int n, unsigned cap_digits) {
  if (cap_digits == 0) cap_digits = static_cast<unsigned>(std::max(1, 200 * n / 16));
  const double digits_per_step = std::log10(static_cast<double>(p));
  std::vector<unsigned> out;
  for (unsigned k = 32;; k *= 2) {
    out.push_back(k);
    if (digits_per_step * k > cap_digits || k >= (1u << 24)) break;
  }
  return out;
}

PrimeData select_prime(const NumberField& field, const PolyZ& h, const RootConfig& config, std::mt19937_64& rng) {
  const PolyZ& f = field.poly();
  const int d = h.degree();
  std::uint64_t best_p = 0;
  int best_r = 0;
  std::vector<std::uint64_t> best_roots;
  unsigned found = 0;
  for (std::uint64_t p = 3; p <= config.prime_bound && found < config.qualifying_primes; p = next_prime(p)) {
    if (mod_u64(h.leading(), p) == 0) continue;
    std::vector<std::uint64_t> roots = roots_mod_p(h, p);
    if (static_cast<int>(roots.size()) != d) continue;
    if (!squarefree_mod_p(f, p)) continue;
    int r = factor_count(ddf_degrees(f, p));
    ++found;
    if (best_p == 0 || r < best_r) {
      best_p = p;
      best_r = r;
      best_roots = std::move(roots);
    }
  }
  if (best_p == 0) throw NoPrimeFound("select_prime: no suitable prime below the bound");
  PrimeData pd;
  pd.p = best_p;
  pd.roots = std::move(best_roots);
  pd.factors = factor_mod_p(f, best_p, rng);
  return pd;
}

Int lift_root_padic(const PolyZ& h, std::uint64_t s, std::uint64_t p, unsigned k) {
  Int x(static_cast<unsigned long>(s));
  PolyZ dh = subscan::derivative(h);
  unsigned prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    Int m = int_pow(p, prec);
    Int num = evaluate(h, x);
    Int den = evaluate(dh, x);
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
      throw Error("lift_root_padic: root is not simple mod p");
    x -= num * inv;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  }
  return x;
}

namespace {

ZnPoly eval_mod(const PolyZ& h, const ZnPoly& x, const ZnPoly& f) {
  const Int& m = x.modulus();
  ZnPoly acc(m, std::vector<Int>{});
  for (int i = h.degree(); i >= 0; --i) {
    acc = rem_monic(acc * x, f) + ZnPoly(m, PolyZ::constant(h[i]));
  }
  return acc;
}

ZnPoly fp_to_zn(const PolyFp& a, const Int& m) { return ZnPoly(m, a.lift()); }

}  // namespace

ZnPoly newton_lift_root(const NumberField& field, const PolyZ& h, const PolyFp& x0, std::uint64_t p, unsigned k) {
  const PolyFp fp(p, field.poly());
  const PolyZ dh = subscan::derivative(h);
  // h'(x0)^-1 mod (p, f)
  PolyFp dhx(p, std::vector<std::uint64_t>{});
  for (int i = dh.degree(); i >= 0; --i) dhx = rem(dhx * x0, fp) + PolyFp::constant(p, mod_u64(dh[i], p));
  FpXgcd eg = xgcd(dhx, fp);
  if (eg.g.degree() != 0) throw Error("newton_lift_root: derivative not invertible");
  Int m(static_cast<unsigned long>(p));
  ZnPoly x = fp_to_zn(x0, m);
  ZnPoly inv = fp_to_zn(eg.s, m);
  unsigned prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    m = int_pow(p, prec);
    ZnPoly F(m, field.poly());
    x = x.reduce(m);
    inv = inv.reduce(m);
    x = x - rem_monic(eval_mod(h, x, F) * inv, F);
    ZnPoly two(m, PolyZ::constant(2));
    inv = rem_monic(inv * (two - eval_mod(dh, x, F) * inv), F);
    inv = rem_monic(inv, F);
  }
  return x;
}

namespace {

bool too_wide(const PolyZ& y, std::size_t modulus_bits) {
  for (const Int& c : y.coefficients())
    if (mpz_sizeinbase(c.get_mpz_t(), 2) + 16 > modulus_bits) return true;
  return false;
}

// Orthogonal idempotents of Z_p[X]/(f) for the factors mod p, lifted to p^k.
class IdempotentLift {
 public:
  IdempotentLift(const NumberField& field, const PrimeData& pd) : field_(field), p_(pd.p) {
    PolyFp fp(p_, field.poly());
    for (const PolyFp& fi : pd.factors) {
      PolyFp gi = divrem(fp, fi).first;
      FpXgcd eg = xgcd(rem(gi, fi), fi);
      PolyFp e = rem(gi * eg.s, fp);
      e_.push_back(ZnPoly(Int(static_cast<unsigned long>(p_)), e.lift()));
    }
  }

  const std::vector<ZnPoly>& lift_to(unsigned k) {
    while (prec_ < k) {
      prec_ = std::min(2 * prec_, k);
      Int m = int_pow(p_, prec_);
      ZnPoly F(m, field_.poly());
      for (auto& e : e_) {
        ZnPoly er = e.reduce(m);
        ZnPoly e2 = rem_monic(er * er, F);
        ZnPoly e3 = rem_monic(e2 * er, F);
        e = e2 * Int(3) - e3 * Int(2);
      }
    }
    return e_;
  }

 private:
  const NumberField& field_;
  std::uint64_t p_;
  unsigned prec_ = 1;
  std::vector<ZnPoly> e_;
};

}  // namespace

RootOutcome root_combinatorial(const NumberField& field, const PolyZ& h, const PrimeData& pd, const RootConfig& config) {
  RootOutcome out;
  const std::size_t r = pd.factors.size();
  const std::size_t d = pd.roots.size();
  std::size_t combos = 1;
  for (std::size_t i = 1; i < r; ++i) {
    combos *= d;
    if (combos > config.combo_limit) {
      out.status = RootStatus::ComboOverflow;
      return out;
    }
  }
  out.combinations = combos;
  const int n = field.degree();
  IdempotentLift lift(field, pd);
  std::vector<unsigned> schedule = precision_schedule(pd.p, n, config.precision_cap_digits);
  for (std::size_t si = 0; si < schedule.size(); ++si) {
    const unsigned k = schedule[si];
    const bool last = si + 1 == schedule.size();
    const Int m = int_pow(pd.p, k);
    const std::size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    const ZnPoly F(m, field.poly());
    const ZnPoly df(m, field.derivative());
    const auto& idem = lift.lift_to(k);
    std::vector<ZnPoly> g;  // f' * E_i
    for (const auto& e : idem) g.push_back(rem_monic(df * e.reduce(m), F));
    std::vector<Int> sroots;
    for (std::uint64_t s : pd.roots) sroots.push_back(lift_root_padic(h, s, pd.p, k));

    std::vector<std::size_t> assign(r, 0);
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t t = c;
      for (std::size_t i = 1; i < r; ++i, t /= d) assign[i] = t % d;
      std::vector<Int> acc(n, Int(0));
      for (std::size_t i = 0; i < r; ++i) {
        const Int& s = sroots[assign[i]];
        for (int j = 0; j <= g[i].degree(); ++j) mpz_addmul(acc[j].get_mpz_t(), s.get_mpz_t(), g[i][j].get_mpz_t());
      }
      PolyZ y = ZnPoly(m, std::move(acc)).centered_lift();
      if ((last || !too_wide(y, bits)) && verify_certificate(field, h, y)) {
        RootCertificate cert;
        cert.h = h;
        cert.y = std::move(y);
        cert.strategy = "combinatorial";
        cert.prime = pd.p;
        cert.precision = k;
        out.status = RootStatus::Found;
        out.certificate = std::move(cert);
        return out;
      }
      if (config.rational_fallback) {
        std::vector<Int> xs(n, Int(0));
        for (std::size_t i = 0; i < r; ++i) {
          const Int& s = sroots[assign[i]];
          ZnPoly ei = idem[i].reduce(m);
          for (int j = 0; j <= ei.degree(); ++j) mpz_addmul(xs[j].get_mpz_t(), s.get_mpz_t(), ei[j].get_mpz_t());
        }
        std::vector<Rat> xq;
        bool ok = true;
        for (auto& v : xs) {
          mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
          auto q = rational_reconstruction(v, m);
          if (!q) {
            ok = false;
            break;
          }
          xq.push_back(*q);
        }
        if (ok) {
          PolyQ x(std::move(xq));
          PolyQ yq = field.mul(to_q(field.derivative()), x);
          if (is_integral(yq) && verify_certificate(field, h, to_z(yq))) {
            RootCertificate cert = certificate_from_root(field, h, x, "combinatorial-rational");
            cert.prime = pd.p;
            cert.precision = k;
            out.status = RootStatus::Found;
            out.certificate = std::move(cert);
            return out;
          }
        }
      }
    }
  }
  out.status = RootStatus::NotFound;
  return out;
}

RootOutcome root_lattice(const NumberField& field, const PolyZ& h, const PrimeData& pd, const RootConfig& config) {
  RootOutcome out;
  const int n = field.degree();
  // factor of maximal degree; first in sorted order among ties
  std::size_t best = 0;
  for (std::size_t i = 1; i < pd.factors.size(); ++i)
    if (pd.factors[i].degree() > pd.factors[best].degree()) best = i;
  const PolyFp& f1 = pd.factors[best];
  std::vector<unsigned> schedule = precision_schedule(pd.p, n, config.precision_cap_digits);
  for (unsigned k : schedule) {
    const Int m = int_pow(pd.p, k);
    ZnPoly F1 = f1.degree() == n ? ZnPoly(m, field.poly()) : hensel_lift_factor(field.poly(), f1, pd.p, k);
    Int s = lift_root_padic(h, pd.roots.front(), pd.p, k);
    ZnPoly t = rem_monic(ZnPoly(m, field.derivative()), F1) * s;
    IntVector target(n, Int(0));
    for (int j = 0; j <= t.degree(); ++j) target[j] = t[j];
    auto lattice = field.local_lattice(pd.p, k, F1);
    IntVector v = babai_nearest(*lattice, target);
    std::vector<Int> y(n);
    for (int j = 0; j < n; ++j) y[j] = target[j] - v[j];
    PolyZ yp(std::move(y));
    ++out.combinations;
    if (verify_certificate(field, h, yp)) {
      RootCertificate cert;
      cert.h = h;
      cert.y = std::move(yp);
      cert.strategy = "lattice";
      cert.prime = pd.p;
      cert.precision = k;
      out.status = RootStatus::Found;
      out.certificate = std::move(cert);
      return out;
    }
  }
  out.status = RootStatus::NotFound;
  return out;
}

RootOutcome find_root(const NumberField& field, const PolyZ& h, const RootConfig& config, std::mt19937_64& rng) {
  if (h.degree() < 1 || !h.is_monic()) throw InputError("find_root: h must be monic");
  PrimeData pd = select_prime(field, h, config, rng);
  RootOutcome out;
  if (config.strategy == RootStrategy::Lattice) {
    out = root_lattice(field, h, pd, config);
  } else {
    out = root_combinatorial(field, h, pd, config);
    if (out.status == RootStatus::ComboOverflow && config.strategy == RootStrategy::Auto) out = root_lattice(field, h, pd, config);
  }
  if (out.certificate) {
    if (!verify_certificate(field, *out.certificate)) throw Error("find_root: certificate failed verification");
    normalize_certificate(field, *out.certificate);
  }
  return out;
}

}  // namespace subscan
