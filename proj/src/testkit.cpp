#include "subscan/testkit.hpp"

#include <algorithm>
#include <sstream>

#include "subscan/errors.hpp"
#include "subscan/kummer3.hpp"
#include "subscan/nfroot.hpp"
#include "subscan/polytext.hpp"
#include "subscan/scan.hpp"

namespace subscan {

Int disc_poly(const PolyZ& f) {
  const long n = f.degree();
  Int r = resultant(f, derivative(f));
  return (n * (n - 1) / 2) % 2 ? Int(-r) : r;
}

std::vector<Int> ramified_superset_bruteforce(const PolyZ& f, const FactorBudget& budget) {
  Int d = disc_poly(f);
  if (d == 0) throw NotSquarefree("ramified_superset_bruteforce: zero discriminant");
  return factor_integer(d, budget).support();
}

PolyZ cyclotomic(unsigned m) {
  if (m == 0) throw InputError("cyclotomic: m must be positive");
  PolyZ num = PolyZ::monomial(Int(1), m) - PolyZ::constant(Int(1));
  for (unsigned d = 1; d < m; ++d)
    if (m % d == 0) num = divrem_monic(num, cyclotomic(d)).first;
  return num;
}

std::vector<Int> cyclotomic_truth(unsigned m) {
  std::vector<long> t;
  switch (m) {
    case 5: t = {5}; break;
    case 7: t = {-7}; break;
    case 8: t = {-1, 2, -2}; break;
    case 12: t = {-1, 3, -3}; break;
    case 15: t = {-3, 5, -15}; break;
    case 20: t = {-1, 5, -5}; break;
    case 24: t = {-1, 2, -2, 3, -3, 6, -6}; break;
    default: throw InputError("cyclotomic_truth: m not in the coded table");
  }
  std::vector<Int> out(t.begin(), t.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> quadratic_subfields_by_conductor(unsigned m) {
  std::vector<Int> primes;
  for (std::uint64_t p = 2; p <= m; ++p)
    if (m % p == 0 && is_prime_u64(p)) primes.push_back(Int(static_cast<unsigned long>(p)));
  std::vector<Int> out;
  for (unsigned mask = 0; mask < (1u << primes.size()); ++mask) {
    Int d = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (mask >> i & 1) d *= primes[i];
    for (int sign : {1, -1}) {
      Int ds = sign * d;
      if (ds == 1) continue;
      Int r = ds % 4;
      if (r < 0) r += 4;
      Int disc = abs(ds);
      if (r != 1) disc *= 4;
      if (Int(m) % disc == 0) out.push_back(ds);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Element of Q(sqrt d_1, ..., sqrt d_m) over the basis prod_{i in S} sqrt d_i.
using Tensor = std::vector<Rat>;

Tensor tensor_mul(const Tensor& a, const Tensor& b, const std::vector<Int>& d) {
  Tensor r(a.size(), Rat(0));
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s] == 0) continue;
    for (std::size_t t = 0; t < b.size(); ++t) {
      if (b[t] == 0) continue;
      Int scale = 1;
      for (std::size_t i = 0; i < d.size(); ++i)
        if ((s & t) >> i & 1) scale *= d[i];
      r[s ^ t] += a[s] * b[t] * scale;
    }
  }
  return r;
}

// Solve M x = b over Q for square nonsingular M (columns given).
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> cols, std::vector<Rat> b) {
  const std::size_t n = b.size();
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = cols[j][i];
    m[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw Error("solve_linear: singular system");
    std::swap(m[piv], m[c]);
    Rat inv = 1 / m[c][c];
    for (std::size_t j = c; j <= n; ++j) m[c][j] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rat f = m[r][c];
      for (std::size_t j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

std::vector<std::string> split_params(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

Int parse_int(const std::string& s) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw InputError("corpus: bad integer parameter '" + s + "'");
  return v;
}

// All nonempty subset products, reduced to squarefree parts.
std::vector<Int> subset_discriminants(const std::vector<Int>& d) {
  std::vector<Int> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << d.size()); ++mask) {
    Int prod = 1;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (mask >> i & 1) prod *= d[i];
    out.push_back(squarefree_part(prod));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Multiquadratic multiquadratic_field(const std::vector<Int>& radicands) {
  if (radicands.empty()) throw InputError("multiquadratic: no radicands");
  const std::size_t m = radicands.size();
  const std::size_t n = std::size_t{1} << m;
  Multiquadratic out;
  out.radicands = radicands;
  // theta = sqrt d_m + c_m (sqrt d_{m-1} + c_{m-1} (...)), one shift per step
  PolyZ f{-radicands[0], Int(0), Int(1)};
  std::vector<Int> weight(m, Int(1));
  for (std::size_t i = 1; i < m; ++i) {
    PolyZ h{-radicands[i], Int(0), Int(1)};
    for (Int c = 1;; ++c) {
      try {
        f = compositum_minpoly(f, h, c);
        for (std::size_t j = 0; j < i; ++j) weight[j] *= c;
        break;
      } catch (const NotSquarefree&) {
        if (c > 50) throw;
      }
    }
  }
  out.poly = f;
  Tensor theta(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i) theta[std::size_t{1} << i] = weight[i];
  std::vector<Tensor> powers{Tensor(n, Rat(0))};
  powers[0][0] = 1;
  for (std::size_t j = 1; j <= n; ++j) powers.push_back(tensor_mul(powers.back(), theta, radicands));
  // dual-route check: f(theta) = 0 in the tensor algebra
  Tensor acc = powers[n];
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t s = 0; s < n; ++s) acc[s] += f[j] * powers[j][s];
  if (std::any_of(acc.begin(), acc.end(), [](const Rat& v) { return v != 0; }))
    throw Error("multiquadratic: compositum polynomial does not vanish at theta");
  std::vector<std::vector<Rat>> cols(powers.begin(), powers.begin() + static_cast<long>(n));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rat> rhs(n, Rat(0));
    rhs[std::size_t{1} << i] = 1;
    out.roots.push_back(PolyQ(solve_linear(cols, rhs)));
  }
  return out;
}

bool same_cubic_field(const PolyZ& a, const PolyZ& b) {
  NumberField K(a);
  std::mt19937_64 rng(7);
  return find_root(K, b, RootConfig{}, rng).status == RootStatus::Found;
}

namespace {

PolyZ compositum_with_retry(const PolyZ& g, const PolyZ& h) {
  for (Int c = 1; c <= 50; ++c) {
    try {
      return compositum_minpoly(g, h, c);
    } catch (const NotSquarefree&) {
    }
  }
  throw Error("compositum: no squarefree shift found");
}

}  // namespace

CorpusEntry corpus_generate(const std::string& kind, const std::string& params) {
  CorpusEntry e;
  e.kind = kind;
  e.params = params;
  std::vector<std::string> parts = split_params(params);
  if (parts.empty()) throw InputError("corpus: empty parameters");
  if (kind == "multiquadratic") {
    std::vector<Int> d;
    for (const auto& s : parts) d.push_back(parse_int(s));
    for (const Int& x : d)
      if (squarefree_part(x) != x || x == 1) throw InputError("corpus: radicands must be squarefree and != 1");
    Multiquadratic mq = multiquadratic_field(d);
    for (std::size_t i = 0; i < d.size(); ++i) {
      NumberField L(mq.poly);
      RootCertificate cert = certificate_from_root(L, PolyZ{-d[i], Int(0), Int(1)}, mq.roots[i], "tensor");
      if (!verify_certificate(L, cert)) throw Error("corpus: tensor certificate failed");
    }
    e.poly = mq.poly;
    e.quad = subset_discriminants(d);
    if (e.quad.size() != (std::size_t{1} << d.size()) - 1) throw InputError("corpus: radicands are multiplicatively dependent");
    e.recipe = "iterated compositum of X^2 - d for d in {" + params + "}; roots checked by tensor-algebra solve";
  } else if (kind == "cyclotomic") {
    if (parts.size() != 1) throw InputError("corpus: cyclotomic takes one parameter");
    Int m = parse_int(parts[0]);
    if (m <= 0 || !m.fits_uint_p()) throw InputError("corpus: bad cyclotomic index");
    unsigned mm = static_cast<unsigned>(m.get_ui());
    e.poly = cyclotomic(mm);
    e.quad = cyclotomic_truth(mm);
    if (e.quad != quadratic_subfields_by_conductor(mm)) throw Error("corpus: coded cyclotomic table disagrees with the conductor criterion");
    // the only coded index with 3 | phi(m) is 7: the real cubic subfield
    if (mm == 7) e.cubic = {PolyZ{Int(-1), Int(-2), Int(1), Int(1)}};
    e.recipe = "cyclotomic polynomial Phi_" + parts[0] + "; quadratic subfields by conductor";
  } else if (kind == "cubic-compositum") {
    bool omega = false;
    std::vector<Int> split;
    std::vector<Int> radicands;
    for (const auto& s : parts) {
      if (s.rfind("sqrt", 0) == 0) {
        radicands.push_back(parse_int(s.substr(4)));
        continue;
      }
      Int c = parse_int(s);
      if (c == 9) {
        omega = true;
      } else if (c > 3 && is_probable_prime(c) && c % 3 == 1) {
        split.push_back(c);
      } else {
        throw InputError("corpus: cubic conductor must be 9 or a prime = 1 mod 3");
      }
    }
    std::sort(split.begin(), split.end());
    PlaceBasis basis;
    basis.e = 3;
    for (const Int& p : split) {
      EisensteinInt pi = split_prime(p.get_ui());
      basis.primes.push_back(p);
      basis.generators.push_back(pi * pow(pi.conj(), 2));
    }
    // axes present in the construction: w (if 9 given) and each split prime
    std::vector<F3Vector> axes;
    if (omega) {
      F3Vector v(basis.width(), 0);
      v[0] = 1;
      axes.push_back(v);
    }
    for (std::size_t i = 0; i < split.size(); ++i) {
      F3Vector v(basis.width(), 0);
      v[i + 1] = 1;
      axes.push_back(v);
    }
    if (axes.empty()) throw InputError("corpus: no cubic conductor given");
    PolyZ f;
    for (const auto& v : axes) {
      PolyZ g = build_generator(v, basis).minpoly;
      f = f.is_zero() ? g : compositum_with_retry(f, g);
    }
    for (const Int& d : radicands) f = compositum_with_retry(f, PolyZ{-d, Int(0), Int(1)});
    e.poly = f;
    // all index-3 subgroups of the span of the axes: one per {v, 2v}
    LinearSystem sys;
    sys.ell = 3;
    sys.width = axes.size();
    for (const F3Vector& coeff : solve_f3_kernel(sys)) {
      F3Vector v(basis.width(), 0);
      for (std::size_t a = 0; a < axes.size(); ++a)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint8_t>((v[i] + coeff[a] * axes[a][i]) % 3);
      e.cubic.push_back(build_generator(v, basis).minpoly);
    }
    if (!radicands.empty()) e.quad = subset_discriminants(radicands);
    e.recipe = "compositum of cyclic cubics of conductors {" + params + "} built from Kummer generators";
  } else {
    throw InputError("corpus: unknown kind '" + kind + "'");
  }
  if (disc_poly(e.poly) == 0) throw Error("corpus: polynomial is not squarefree");
  return e;
}

std::vector<CorpusEntry> default_corpus(bool include_large) {
  std::vector<CorpusEntry> out;
  for (unsigned m : {5u, 7u, 8u, 12u, 15u, 20u, 24u}) out.push_back(corpus_generate("cyclotomic", std::to_string(m)));
  out.push_back(corpus_generate("multiquadratic", "2,3"));
  out.push_back(corpus_generate("multiquadratic", "2,3,5"));
  out.push_back(corpus_generate("multiquadratic", "-1,5,13"));
  out.push_back(corpus_generate("multiquadratic", "2,3,5,7"));
  out.push_back(corpus_generate("cubic-compositum", "7"));
  out.push_back(corpus_generate("cubic-compositum", "9"));
  out.push_back(corpus_generate("cubic-compositum", "7,9"));
  out.push_back(corpus_generate("cubic-compositum", "7,sqrt5"));
  out.push_back(corpus_generate("cubic-compositum", "7,13"));
  if (include_large) out.push_back(corpus_generate("multiquadratic", "2,3,5,7,11"));
  return out;
}

nlohmann::json corpus_sidecar(const CorpusEntry& entry) {
  nlohmann::json j;
  j["poly"] = render(entry.poly);
  nlohmann::json q = nlohmann::json::array();
  for (const Int& d : entry.quad) q.push_back(d.get_str());
  j["quad"] = q;
  nlohmann::json c = nlohmann::json::array();
  for (const PolyZ& p : entry.cubic) c.push_back(render(p));
  j["cubic"] = c;
  j["recipe"] = entry.recipe;
  return j;
}

}  // namespace subscan
