#include "subscan/lattice.hpp"

#include "subscan/errors.hpp"

namespace subscan {

Int dot(const IntVector& a, const IntVector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

namespace {

// Integral LLL in the formulation of Cohen (Algorithm 2.6.7). Indices are
// 1-based internally: b[1..n], d[0..n] with d[0] = 1, lam[k][j] for j < k.
class IntegralLll {
 public:
  IntegralLll(const IntLattice& lattice, bool track)
      : n_(lattice.rank()), track_(track), b_(n_ + 1), h_(track ? n_ + 1 : 0), d_(n_ + 1), lam_(n_ + 1, IntVector(n_ + 1)) {
    for (std::size_t i = 0; i < n_; ++i) b_[i + 1] = lattice.basis[i];
    if (track_) {
      for (std::size_t i = 1; i <= n_; ++i) {
        h_[i].assign(n_, Int(0));
        h_[i][i - 1] = 1;
      }
    }
  }

  void run(const Rat& delta) {
    if (n_ == 0) return;
    const Int& a = delta.get_num();
    const Int& den = delta.get_den();
    d_[0] = 1;
    d_[1] = dot(b_[1], b_[1]);
    if (d_[1] == 0) throw DependentBasis("lll_reduce: zero basis vector");
    std::size_t k = 2, kmax = 1;
    Int lhs, rhs;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        gram_schmidt_row(k);
      }
      reduce(k, k - 1);
      // swap when d_k d_{k-2} + lam^2 < delta d_{k-1}^2
      mpz_mul(lhs.get_mpz_t(), d_[k].get_mpz_t(), d_[k - 2].get_mpz_t());
      mpz_addmul(lhs.get_mpz_t(), lam_[k][k - 1].get_mpz_t(), lam_[k][k - 1].get_mpz_t());
      lhs *= den;
      mpz_mul(rhs.get_mpz_t(), d_[k - 1].get_mpz_t(), d_[k - 1].get_mpz_t());
      rhs *= a;
      if (lhs < rhs) {
        swap(k, kmax);
        if (k > 2) --k;
      } else {
        for (std::size_t l = k - 1; l-- > 1;) reduce(k, l);
        ++k;
      }
    }
  }

  LllResult result() const {
    LllResult out;
    out.reduced.basis.assign(b_.begin() + 1, b_.end());
    if (track_) out.transform.assign(h_.begin() + 1, h_.end());
    return out;
  }

 private:
  void gram_schmidt_row(std::size_t k) {
    Int u, tmp;
    for (std::size_t j = 1; j <= k; ++j) {
      u = dot(b_[k], b_[j]);
      for (std::size_t i = 1; i < j; ++i) {
        mpz_mul(tmp.get_mpz_t(), d_[i].get_mpz_t(), u.get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), lam_[k][i].get_mpz_t(), lam_[j][i].get_mpz_t());
        mpz_divexact(u.get_mpz_t(), tmp.get_mpz_t(), d_[i - 1].get_mpz_t());
      }
      if (j < k) {
        lam_[k][j] = u;
      } else {
        d_[k] = u;
        if (u == 0) throw DependentBasis("lll_reduce: basis vectors are linearly dependent");
      }
    }
  }

  void reduce(std::size_t k, std::size_t l) {
    Int twice = 2 * lam_[k][l];
    if (abs(twice) <= d_[l]) return;
    // q = round(lam / d_l)
    Int q;
    Int num = twice + d_[l];
    Int dd = 2 * d_[l];
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), dd.get_mpz_t());
    for (std::size_t c = 0; c < b_[k].size(); ++c) mpz_submul(b_[k][c].get_mpz_t(), q.get_mpz_t(), b_[l][c].get_mpz_t());
    if (track_) {
      for (std::size_t c = 0; c < n_; ++c) mpz_submul(h_[k][c].get_mpz_t(), q.get_mpz_t(), h_[l][c].get_mpz_t());
    }
    mpz_submul(lam_[k][l].get_mpz_t(), q.get_mpz_t(), d_[l].get_mpz_t());
    for (std::size_t i = 1; i < l; ++i) mpz_submul(lam_[k][i].get_mpz_t(), q.get_mpz_t(), lam_[l][i].get_mpz_t());
  }

  void swap(std::size_t k, std::size_t kmax) {
    std::swap(b_[k], b_[k - 1]);
    if (track_) std::swap(h_[k], h_[k - 1]);
    for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    Int lam = lam_[k][k - 1];
    Int B = d_[k - 2] * d_[k];
    mpz_addmul(B.get_mpz_t(), lam.get_mpz_t(), lam.get_mpz_t());
    mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), d_[k - 1].get_mpz_t());
    Int t, tmp;
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      t = lam_[i][k];
      mpz_mul(tmp.get_mpz_t(), d_[k].get_mpz_t(), lam_[i][k - 1].get_mpz_t());
      mpz_submul(tmp.get_mpz_t(), lam.get_mpz_t(), t.get_mpz_t());
      mpz_divexact(lam_[i][k].get_mpz_t(), tmp.get_mpz_t(), d_[k - 1].get_mpz_t());
      mpz_mul(tmp.get_mpz_t(), B.get_mpz_t(), t.get_mpz_t());
      mpz_addmul(tmp.get_mpz_t(), lam.get_mpz_t(), lam_[i][k].get_mpz_t());
      mpz_divexact(lam_[i][k - 1].get_mpz_t(), tmp.get_mpz_t(), d_[k].get_mpz_t());
    }
    d_[k - 1] = B;
  }

  std::size_t n_;
  bool track_;
  std::vector<IntVector> b_;
  std::vector<IntVector> h_;
  IntVector d_;
  std::vector<IntVector> lam_;
};

}  // namespace

LllResult lll_reduce_with_transform(const IntLattice& lattice, const Rat& delta) {
  if (delta <= Rat(1, 4) || delta >= 1) throw Error("lll_reduce: delta must lie in (1/4, 1)");
  IntegralLll lll(lattice, true);
  lll.run(delta);
  return lll.result();
}

IntLattice lll_reduce(const IntLattice& lattice, const Rat& delta) {
  if (delta <= Rat(1, 4) || delta >= 1) throw Error("lll_reduce: delta must lie in (1/4, 1)");
  IntegralLll lll(lattice, false);
  lll.run(delta);
  return lll.result().reduced;
}

IntVector babai_nearest(const IntLattice& reduced, const IntVector& target) {
  const std::size_t n = reduced.rank();
  const auto& b = reduced.basis;
  // integral Gram-Schmidt data of the basis, then of the target against it
  IntVector d(n + 1);
  std::vector<IntVector> lam(n + 1, IntVector(n + 1));
  d[0] = 1;
  Int u, tmp;
  auto row = [&](const IntVector& v, IntVector& lam_row, std::size_t upto) {
    for (std::size_t j = 1; j <= upto; ++j) {
      u = dot(v, b[j - 1]);
      for (std::size_t i = 1; i < j; ++i) {
        mpz_mul(tmp.get_mpz_t(), d[i].get_mpz_t(), u.get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), lam_row[i].get_mpz_t(), lam[j][i].get_mpz_t());
        mpz_divexact(u.get_mpz_t(), tmp.get_mpz_t(), d[i - 1].get_mpz_t());
      }
      lam_row[j] = u;
    }
  };
  for (std::size_t k = 1; k <= n; ++k) {
    row(b[k - 1], lam[k], k);
    d[k] = lam[k][k];
    if (d[k] == 0) throw DependentBasis("babai_nearest: dependent basis");
  }
  IntVector lt(n + 1);
  row(target, lt, n);
  IntVector v(target.size(), Int(0));
  Int q, num, den;
  for (std::size_t l = n; l >= 1; --l) {
    num = 2 * lt[l] + d[l];
    den = 2 * d[l];
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (q == 0) continue;
    for (std::size_t c = 0; c < v.size(); ++c) mpz_addmul(v[c].get_mpz_t(), q.get_mpz_t(), b[l - 1][c].get_mpz_t());
    mpz_submul(lt[l].get_mpz_t(), q.get_mpz_t(), d[l].get_mpz_t());
    for (std::size_t i = 1; i < l; ++i) mpz_submul(lt[i].get_mpz_t(), q.get_mpz_t(), lam[l][i].get_mpz_t());
  }
  return v;
}

}  // namespace subscan
