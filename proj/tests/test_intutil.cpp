#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tckit/intutil.hpp"

using namespace tc;

TEST_CASE("factorize examples") {
  CHECK(factorize(1).pairs.empty());
  auto f37 = factorize(37);
  REQUIRE(f37.pairs.size() == 1);
  CHECK(f37.pairs[0] == std::pair<std::uint64_t, std::uint32_t>{37, 1});
  auto f480 = factorize(480);
  REQUIRE(f480.pairs.size() == 3);
  CHECK(f480.pairs[0] == std::pair<std::uint64_t, std::uint32_t>{2, 5});
  CHECK(f480.pairs[1] == std::pair<std::uint64_t, std::uint32_t>{3, 1});
  CHECK(f480.pairs[2] == std::pair<std::uint64_t, std::uint32_t>{5, 1});
  CHECK_THROWS_AS(factorize(0), Error);
}

TEST_CASE("factorization invariants on random inputs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t n = rng() % 1000000 + 1;
    auto f = factorize(n);
    CHECK(f.expand_u64() == n);
    std::uint64_t prev = 0;
    for (auto [p, e] : f.pairs) {
      CHECK(p > prev);
      prev = p;
      CHECK(is_prime(p));
      CHECK(e >= 1);
    }
    CHECK(n % radical(n) == 0);
    std::uint64_t sf = sqfree_part(n);
    CHECK(n % sf == 0);
    CHECK(is_perfect_square(n / sf));
    for (auto [p, e] : factorize(sf).pairs) CHECK(e == 1);
  }
}

TEST_CASE("radical and sqfree_part examples") {
  CHECK(radical(37) == 37);
  CHECK(radical(12) == 6);
  CHECK(radical(1) == 1);
  CHECK(sqfree_part(37) == 37);
  CHECK(sqfree_part(16) == 1);
  CHECK(sqfree_part(12) == 3);
}

TEST_CASE("vp examples and additivity") {
  CHECK(vp(48, 2) == 4);
  CHECK(vp(37, 2) == 0);
  for (std::uint64_t p : {2, 3, 5, 7, 37}) CHECK(vp(p, p) == 1);
  CHECK_THROWS_AS(vp(10, 4), Error);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t m = rng() % 100000 + 1, n = rng() % 100000 + 1;
    std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7, 11}[rng() % 5];
    CHECK(vp(m * n, p) == vp(m, p) + vp(n, p));
  }
}

TEST_CASE("primorial examples and prime jumps") {
  CHECK(primorial_upto(1.5) == BigNat(1));
  CHECK(primorial_upto(2) == BigNat(2));
  CHECK(primorial_upto(10) == BigNat(210));

  // nondecreasing with jumps exactly at primes, against a sieve oracle
  auto primes = oracle::sieve(100);
  BigNat prev = primorial_upto(1);
  for (int x = 1; x <= 100; ++x) {
    BigNat cur = primorial_upto(x);
    CHECK(prev <= cur);
    bool is_p = std::find(primes.begin(), primes.end(), static_cast<std::uint32_t>(x)) != primes.end();
    if (is_p) CHECK(prev < cur);
    else CHECK(prev == cur);
    prev = cur;
  }
}

TEST_CASE("BigNat decimal round-trip beyond 64 bits") {
  BigNat big = BigNat::pow(2, 100);
  CHECK(big.to_string() == "1267650600228229401496703205376");
  BigNat back(big.to_string());
  CHECK(back == big);
  CHECK(!big.fits_u64());
  CHECK(BigNat(18446744073709551615ULL).fits_u64());
  CHECK_THROWS_AS(BigNat("-3"), Error);
  CHECK_THROWS_AS(BigNat("12x"), Error);

  BigNat n = BigNat::pow(2, 15);
  n *= BigNat::pow(3, 7);
  n *= 5;
  n *= 37;
  CHECK(n.to_string() == "13257768960");
  CHECK(n.valuation(2) == 15);
  CHECK(n.valuation(3) == 7);
  CHECK(n.valuation(37) == 1);
  CHECK(n.valuation(11) == 0);
}

TEST_CASE("deterministic primality") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(!is_prime(1));
  CHECK(!is_prime(0));
  CHECK(is_prime(37));
  CHECK(!is_prime(561));          // Carmichael
  CHECK(is_prime(99999999977ULL));
  CHECK(!is_prime(99999999977ULL * 3));
  CHECK_THROWS_AS(is_prime(400000000000000ULL), Error);
  auto primes = oracle::sieve(2000);
  std::set<std::uint64_t> ps(primes.begin(), primes.end());
  for (std::uint64_t n = 1; n <= 2000; ++n) CHECK(is_prime(n) == (ps.count(n) != 0));
}
