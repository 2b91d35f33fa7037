#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tckit/error.hpp"

namespace tc {

// Arbitrary-precision nonnegative integer, GMP-backed.  Values are exact at
// any magnitude and round-trip through decimal strings.
class BigNat {
 public:
  BigNat();
  BigNat(std::uint64_t v);  // NOLINT(google-explicit-constructor)
  explicit BigNat(const std::string& decimal);
  BigNat(const BigNat& other);
  BigNat(BigNat&& other) noexcept;
  BigNat& operator=(const BigNat& other);
  BigNat& operator=(BigNat&& other) noexcept;
  ~BigNat();

  static BigNat pow(std::uint64_t base, std::uint64_t exp);
  BigNat pow(std::uint64_t exp) const;

  BigNat& operator*=(const BigNat& rhs);
  BigNat& operator*=(std::uint64_t rhs);
  friend BigNat operator*(BigNat lhs, const BigNat& rhs) { return lhs *= rhs; }

  bool operator==(const BigNat& rhs) const;
  bool operator!=(const BigNat& rhs) const { return !(*this == rhs); }
  bool operator<(const BigNat& rhs) const;
  bool operator<=(const BigNat& rhs) const;
  bool operator>(const BigNat& rhs) const { return rhs < *this; }
  bool operator>=(const BigNat& rhs) const { return rhs <= *this; }

  bool divisible_by(std::uint64_t d) const;
  // Largest e with p^e dividing the value (value must be nonzero).
  std::uint32_t valuation(std::uint64_t p) const;

  bool fits_u64() const;
  std::uint64_t to_u64() const;
  std::string to_string() const;

 private:
  struct Impl;
  Impl* impl_;
};

struct Factorization {
  // (prime, exponent) pairs with strictly increasing primes, exponents >= 1.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> pairs;

  std::uint64_t expand_u64() const;
  BigNat expand() const;
  bool has_prime(std::uint64_t p) const;
};

// Deterministic Miller-Rabin; valid for n below 3.3e14, rejects larger input.
bool is_prime(std::uint64_t n);

// Trial division with a mod-30 wheel, deterministic.  n >= 1.
Factorization factorize(std::uint64_t n);

// Product of the distinct primes dividing n; radical(1) = 1.
std::uint64_t radical(std::uint64_t n);
std::uint64_t radical(const Factorization& f);

// The square-free m with n/m a perfect square.
std::uint64_t sqfree_part(std::uint64_t n);

// p-adic valuation of n; p must be prime, n >= 1.
std::uint32_t vp(std::uint64_t n, std::uint64_t p);

// Product of all primes <= x; 1 when x < 2.
BigNat primorial_upto(double x);

// Ascending primes <= n by sieve.
std::vector<std::uint32_t> primes_upto(std::uint32_t n);

bool is_perfect_square(std::uint64_t n);

}  // namespace tc
