#include "subscan/sieve.hpp"

#include <algorithm>

#include "subscan/errors.hpp"

namespace subscan {

bool PlaceBasis::contains(std::uint64_t p) const {
  for (const Int& q : primes)
    if (q == Int(static_cast<unsigned long>(p))) return true;
  return false;
}

PlaceBasis quadratic_basis(const CandidateSet& c) {
  PlaceBasis b;
  b.e = 2;
  b.primes = c.all_primes();
  if (std::find(b.primes.begin(), b.primes.end(), Int(2)) == b.primes.end()) {
    b.primes.push_back(2);
    std::sort(b.primes.begin(), b.primes.end());
  }
  return b;
}

PlaceBasis cubic_basis(const CandidateSet& c) {
  PlaceBasis b;
  b.e = 3;
  for (const Int& p : c.tame_primes) {
    if (mod_u64(p, 3) != 1) continue;
    if (!p.fits_ulong_p()) throw InputError("cubic_basis: ramified prime too large");
    EisensteinInt pi = split_prime(p.get_ui());
    b.primes.push_back(p);
    b.generators.push_back(pi * pow(pi.conj(), 2));
  }
  return b;
}

Int quadratic_discriminant(const PlaceBasis& basis, const F3Vector& v) {
  Int d = (v[0] & 1) ? -1 : 1;
  for (std::size_t i = 0; i < basis.primes.size(); ++i)
    if (v[i + 1] & 1) d *= basis.primes[i];
  return d;
}

EisensteinInt kummer_element(const PlaceBasis& basis, const F3Vector& v) {
  EisensteinInt a = pow(EisensteinInt::omega(), v[0]);
  for (std::size_t i = 0; i < basis.generators.size(); ++i) a = a * pow(basis.generators[i], v[i + 1]);
  return a;
}

std::vector<F3Vector> SolutionSpace::enumerate() const {
  if (inconsistent) return {};
  std::vector<F3Vector> out;
  const std::size_t d = kernel.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    F3Vector v = particular;
    for (std::size_t j = 0; j < d; ++j)
      if (mask >> j & 1)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] ^= kernel[j][i];
    out.push_back(std::move(v));
  }
  return out;
}

QuadClass classify_prime_quadratic(const DegreeMultiset& degrees, int n) {
  for (const auto& [deg, count] : degrees)
    if (deg % 2 == 1 && count > 0) return QuadClass::Split;
  const int half = n / 2;
  std::vector<char> reach(half + 1, 0);
  reach[0] = 1;
  for (const auto& [deg, count] : degrees)
    for (int c = 0; c < count; ++c)
      for (int s = half; s >= deg; --s)
        if (reach[s - deg]) reach[s] = 1;
  return reach[half] ? QuadClass::NoInfo : QuadClass::Inert;
}

std::optional<Row> quad_constraint(std::uint64_t p, QuadClass cls, const PlaceBasis& basis) {
  if (basis.contains(p)) throw PrimeInBasis("quad_constraint: prime lies in the basis");
  if (p % 2 == 0) throw BadPrime("quad_constraint: p must be odd");
  if (cls == QuadClass::NoInfo) return std::nullopt;
  Row row;
  row.prime = p;
  row.rhs = cls == QuadClass::Inert ? 1 : 0;
  row.coeffs.push_back((1 - legendre(Int(-1), p)) / 2);
  for (const Int& m : basis.primes) row.coeffs.push_back((1 - legendre(m, p)) / 2);
  bool trivial = row.rhs == 0 && std::all_of(row.coeffs.begin(), row.coeffs.end(), [](std::uint8_t c) { return c == 0; });
  if (trivial) return std::nullopt;
  return row;
}

namespace {

unsigned inv_mod_small(unsigned a, unsigned ell) {
  for (unsigned x = 1; x < ell; ++x)
    if (a * x % ell == 1) return x;
  return 0;
}

}  // namespace

Echelon row_reduce(const LinearSystem& system) {
  Echelon ech;
  ech.ell = system.ell;
  ech.width = system.width;
  const unsigned ell = system.ell;
  std::vector<F3Vector> m;
  for (const Row& r : system.rows) {
    F3Vector v = r.coeffs;
    v.resize(system.width, 0);
    v.push_back(r.rhs);
    m.push_back(std::move(v));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < system.width && rank < m.size(); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    unsigned inv = inv_mod_small(m[rank][col], ell);
    for (auto& x : m[rank]) x = static_cast<std::uint8_t>(x * inv % ell);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      unsigned factor = m[r][col];
      for (std::size_t c = 0; c <= system.width; ++c)
        m[r][c] = static_cast<std::uint8_t>((m[r][c] + ell * ell - factor * m[rank][c]) % ell);
    }
    ech.pivots.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < m.size(); ++r)
    if (m[r][system.width] != 0) ech.inconsistent = true;
  m.resize(rank);
  ech.rows = std::move(m);
  return ech;
}

namespace {

// Particular solution and kernel basis from a reduced echelon form.
void solve_from_echelon(const Echelon& ech, F3Vector& particular, std::vector<F3Vector>& kernel) {
  const std::size_t w = ech.width;
  const unsigned ell = ech.ell;
  particular.assign(w, 0);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) particular[ech.pivots[r]] = ech.rows[r][w];
  std::vector<char> is_pivot(w, 0);
  for (std::size_t c : ech.pivots) is_pivot[c] = 1;
  kernel.clear();
  for (std::size_t free = 0; free < w; ++free) {
    if (is_pivot[free]) continue;
    F3Vector v(w, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      v[ech.pivots[r]] = static_cast<std::uint8_t>((ell - ech.rows[r][free]) % ell);
    kernel.push_back(std::move(v));
  }
}

}  // namespace

SolutionSpace solve_f2(const LinearSystem& system) {
  LinearSystem sys = system;
  sys.ell = 2;
  Echelon ech = row_reduce(sys);
  SolutionSpace out;
  if (ech.inconsistent) {
    out.inconsistent = true;
    return out;
  }
  solve_from_echelon(ech, out.particular, out.kernel);
  return out;
}

CubicClass classify_prime_cubic(const DegreeMultiset& degrees) {
  for (const auto& [deg, count] : degrees)
    if (deg % 3 != 0 && count > 0) return CubicClass::SplitsInAllCubic;
  return CubicClass::NoInfo;
}

std::optional<Row> cubic_constraint(std::uint64_t q, const PlaceBasis& basis) {
  if (basis.contains(q)) throw BadPrime("cubic_constraint: prime lies in the basis");
  Row row;
  row.prime = q;
  row.coeffs.push_back(static_cast<std::uint8_t>(cubic_residue_class(EisensteinInt::omega(), q)));
  for (const auto& g : basis.generators) row.coeffs.push_back(static_cast<std::uint8_t>(cubic_residue_class(g, q)));
  if (std::all_of(row.coeffs.begin(), row.coeffs.end(), [](std::uint8_t c) { return c == 0; })) return std::nullopt;
  return row;
}

std::vector<F3Vector> solve_f3_kernel(const LinearSystem& system) {
  LinearSystem sys = system;
  sys.ell = 3;
  for (auto& r : sys.rows) r.rhs = 0;
  Echelon ech = row_reduce(sys);
  F3Vector particular;
  std::vector<F3Vector> kernel;
  solve_from_echelon(ech, particular, kernel);
  std::vector<F3Vector> out;
  const std::size_t d = kernel.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= 3;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    // base-3 digits of idx; keep v only if its first nonzero coordinate is 1
    std::vector<unsigned> digits(d);
    std::uint64_t t = idx;
    for (std::size_t j = 0; j < d; ++j, t /= 3) digits[j] = t % 3;
    F3Vector v(sys.width, 0);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < sys.width; ++i) v[i] = static_cast<std::uint8_t>((v[i] + digits[j] * kernel[j][i]) % 3);
    auto first = std::find_if(v.begin(), v.end(), [](std::uint8_t c) { return c != 0; });
    if (first != v.end() && *first == 1) out.push_back(std::move(v));
  }
  return out;
}

namespace {

template <class Classify>
LinearSystem build_system(const PolyZ& f, const PlaceBasis& basis, const Int& gcd_value, const SieveOptions& opts,
                          SieveStats* stats, unsigned ell, std::uint64_t skip_prime, Classify classify) {
  LinearSystem sys;
  sys.ell = ell;
  sys.width = basis.width();
  SieveStats local;
  for (std::uint64_t q = 2; q <= opts.prime_bound && sys.rows.size() < opts.max_constraints; q = next_prime(q)) {
    ++local.primes_examined;
    if (q == 2 && ell == 2) {
      ++local.primes_skipped;
      continue;
    }
    if (q == skip_prime || basis.contains(q) || (gcd_value != 0 && mod_u64(gcd_value, q) == 0) ||
        mod_u64(f.leading(), q) == 0 || !squarefree_mod_p(f, q)) {
      ++local.primes_skipped;
      continue;
    }
    std::optional<Row> row = classify(q, ddf_degrees(f, q));
    if (row) sys.rows.push_back(std::move(*row));
  }
  local.rows = sys.rows.size();
  if (stats) *stats = local;
  return sys;
}

}  // namespace

LinearSystem build_quadratic_system(const PolyZ& f, const PlaceBasis& basis, const Int& gcd_value,
                                    const SieveOptions& opts, SieveStats* stats) {
  const int n = f.degree();
  return build_system(f, basis, gcd_value, opts, stats, 2, 2, [&](std::uint64_t q, const DegreeMultiset& d) {
    return quad_constraint(q, classify_prime_quadratic(d, n), basis);
  });
}

LinearSystem build_cubic_system(const PolyZ& f, const PlaceBasis& basis, const Int& gcd_value,
                                const SieveOptions& opts, SieveStats* stats) {
  return build_system(f, basis, gcd_value, opts, stats, 3, 3, [&](std::uint64_t q, const DegreeMultiset& d) -> std::optional<Row> {
    if (classify_prime_cubic(d) != CubicClass::SplitsInAllCubic) return std::nullopt;
    return cubic_constraint(q, basis);
  });
}

}  // namespace subscan
