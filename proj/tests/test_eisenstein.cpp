#include <doctest.h>

#include "subscan/eisenstein.hpp"
#include "subscan/errors.hpp"
#include "support.hpp"

using namespace subscan;
using subscan::test::uniform;

namespace {

EisensteinInt random_eis(std::mt19937_64& rng, long bound) {
  return {Int(static_cast<long>(uniform(rng, -bound, bound))), Int(static_cast<long>(uniform(rng, -bound, bound)))};
}

bool is_unit(const EisensteinInt& a) { return a.norm() == 1; }

}  // namespace

TEST_CASE("basic identities") {
  EisensteinInt w = EisensteinInt::omega();
  CHECK(w * w + w + EisensteinInt(1, 0) == EisensteinInt());
  CHECK(pow(w, 3) == EisensteinInt(1, 0));
  EisensteinInt a(3, 1);
  CHECK(a.norm() == 7);
  CHECK(a.trace() == 5);
  CHECK(a.conj() == EisensteinInt(2, -1));
}

TEST_CASE("split_prime examples") {
  CHECK(split_prime(7) == EisensteinInt(3, 1));
  CHECK(split_prime(13) == EisensteinInt(4, 1));
  CHECK_THROWS_AS(split_prime(5), NotSplitPrime);
  CHECK_THROWS_AS(split_prime(3), NotSplitPrime);
}

TEST_CASE("cubic_residue_class examples") {
  CHECK(cubic_residue_class(EisensteinInt(2, 0), 7) == 2);
  CHECK(cubic_residue_class(EisensteinInt(1, 0), 13) == 0);
  CHECK(cubic_residue_class(EisensteinInt(1, 0), 5) == 0);
  CHECK(cubic_residue_class(EisensteinInt(2, 0), 5) == 0);
  CHECK(cubic_residue_class(EisensteinInt::omega(), 7) == 2);
  CHECK_THROWS_AS(cubic_residue_class(EisensteinInt(2, 0), 3), BadPrime);
  CHECK_THROWS_AS(cubic_residue_class(EisensteinInt(3, 1), 7), BadPrime);
}

TEST_CASE("norm, conjugation and trace are compatible") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 1000; ++i) {
    EisensteinInt a = random_eis(rng, 1000), b = random_eis(rng, 1000);
    CHECK((a * b).norm() == a.norm() * b.norm());
    CHECK((a * b).conj() == a.conj() * b.conj());
    CHECK(a * a.conj() == EisensteinInt(a.norm(), 0));
    CHECK(a + a.conj() == EisensteinInt(a.trace(), 0));
    CHECK(a.norm() >= 0);
  }
}

TEST_CASE("split_prime below 10^4") {
  for (std::uint64_t p : primes_up_to(10000)) {
    if (p % 3 != 1) {
      CHECK_THROWS_AS(split_prime(p), NotSplitPrime);
      continue;
    }
    EisensteinInt pi = split_prime(p);
    CHECK(pi * pi.conj() == EisensteinInt(Int(static_cast<unsigned long>(p)), 0));
    // pi / conj(pi) is a unit iff conj(pi) = u * pi for one of the six units
    EisensteinInt u(1, 0);
    bool associate = false;
    for (int k = 0; k < 6; ++k) {
      if (u * pi == pi.conj()) associate = true;
      u = u * EisensteinInt(1, 1);  // -w^2, a primitive sixth root of unity
    }
    CHECK(!associate);
  }
  CHECK(is_unit(EisensteinInt(1, 1)));
}

TEST_CASE("cubic residue class is a character") {
  std::mt19937_64 rng(59);
  auto primes = primes_up_to(3000);
  int tested = 0;
  for (int i = 0; i < 3000; ++i) {
    std::uint64_t q = primes[rng() % primes.size()];
    if (q == 3) continue;
    EisensteinInt a = random_eis(rng, 500), b = random_eis(rng, 500);
    Int qq = static_cast<unsigned long>(q);
    if (a.norm() % qq == 0 || b.norm() % qq == 0) continue;
    ++tested;
    int ca = cubic_residue_class(a, q), cb = cubic_residue_class(b, q);
    CHECK(cubic_residue_class(a * b, q) == (ca + cb) % 3);
    CHECK(cubic_residue_class(pow(a, 3), q) == 0);
    // Frobenius acts as conjugation on F_q[w] when q = 2 mod 3
    if (q % 3 == 2) CHECK(cubic_residue_class(a.conj(), q) == (2 * ca) % 3);
  }
  CHECK(tested > 2000);
}

TEST_CASE("rational integers are cubes modulo inert primes") {
  for (std::uint64_t q : primes_up_to(500)) {
    if (q % 3 != 2) continue;
    for (long a = 1; a < 40; ++a) {
      if (a % static_cast<long>(q) == 0) continue;
      CHECK(cubic_residue_class(EisensteinInt(a, 0), q) == 0);
    }
  }
}

TEST_CASE("string form") { CHECK(EisensteinInt(14, -7).str().find("14") != std::string::npos); }
