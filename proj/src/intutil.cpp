#include "tckit/intutil.hpp"

#include <gmp.h>

#include <cmath>
#include <numeric>

namespace tc {

struct BigNat::Impl {
  mpz_t z;
};

BigNat::BigNat() : impl_(new Impl) { mpz_init(impl_->z); }

BigNat::BigNat(std::uint64_t v) : impl_(new Impl) {
  mpz_init_set_ui(impl_->z, v);
}

BigNat::BigNat(const std::string& decimal) : impl_(new Impl) {
  if (decimal.empty() || mpz_init_set_str(impl_->z, decimal.c_str(), 10) != 0 ||
      mpz_sgn(impl_->z) < 0) {
    mpz_clear(impl_->z);
    delete impl_;
    throw_bad_input("BigNat: not a nonnegative decimal integer: '" + decimal + "'");
  }
}

BigNat::BigNat(const BigNat& other) : impl_(new Impl) {
  mpz_init_set(impl_->z, other.impl_->z);
}

BigNat::BigNat(BigNat&& other) noexcept : impl_(other.impl_) { other.impl_ = nullptr; }

BigNat& BigNat::operator=(const BigNat& other) {
  if (this != &other) mpz_set(impl_->z, other.impl_->z);
  return *this;
}

BigNat& BigNat::operator=(BigNat&& other) noexcept {
  if (this != &other) {
    if (impl_) {
      mpz_clear(impl_->z);
      delete impl_;
    }
    impl_ = other.impl_;
    other.impl_ = nullptr;
  }
  return *this;
}

BigNat::~BigNat() {
  if (impl_) {
    mpz_clear(impl_->z);
    delete impl_;
  }
}

BigNat BigNat::pow(std::uint64_t base, std::uint64_t exp) {
  BigNat r;
  mpz_set_ui(r.impl_->z, base);
  mpz_pow_ui(r.impl_->z, r.impl_->z, exp);
  return r;
}

BigNat BigNat::pow(std::uint64_t exp) const {
  BigNat r;
  mpz_pow_ui(r.impl_->z, impl_->z, exp);
  return r;
}

BigNat& BigNat::operator*=(const BigNat& rhs) {
  mpz_mul(impl_->z, impl_->z, rhs.impl_->z);
  return *this;
}

BigNat& BigNat::operator*=(std::uint64_t rhs) {
  mpz_mul_ui(impl_->z, impl_->z, rhs);
  return *this;
}

bool BigNat::operator==(const BigNat& rhs) const {
  return mpz_cmp(impl_->z, rhs.impl_->z) == 0;
}
bool BigNat::operator<(const BigNat& rhs) const {
  return mpz_cmp(impl_->z, rhs.impl_->z) < 0;
}
bool BigNat::operator<=(const BigNat& rhs) const {
  return mpz_cmp(impl_->z, rhs.impl_->z) <= 0;
}

bool BigNat::divisible_by(std::uint64_t d) const {
  return mpz_divisible_ui_p(impl_->z, d) != 0;
}

std::uint32_t BigNat::valuation(std::uint64_t p) const {
  if (mpz_sgn(impl_->z) == 0) throw_bad_input("valuation of zero");
  mpz_t q;
  mpz_init(q);
  std::uint32_t e = static_cast<std::uint32_t>(mpz_remove(q, impl_->z, BigNat(p).impl_->z));
  mpz_clear(q);
  return e;
}

bool BigNat::fits_u64() const { return mpz_fits_ulong_p(impl_->z) != 0; }

std::uint64_t BigNat::to_u64() const {
  if (!fits_u64()) throw_bad_input("BigNat does not fit in 64 bits");
  return mpz_get_ui(impl_->z);
}

std::string BigNat::to_string() const {
  char* s = mpz_get_str(nullptr, 10, impl_->z);
  std::string out(s);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(s, out.size() + 1);
  return out;
}

std::uint64_t Factorization::expand_u64() const {
  std::uint64_t n = 1;
  for (auto [p, e] : pairs)
    for (std::uint32_t i = 0; i < e; ++i) n *= p;
  return n;
}

BigNat Factorization::expand() const {
  BigNat n(1);
  for (auto [p, e] : pairs) n *= BigNat::pow(p, e);
  return n;
}

bool Factorization::has_prime(std::uint64_t p) const {
  for (auto [q, e] : pairs)
    if (q == p) return true;
  return false;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// The first seven prime bases certify primality below 3.4e14.
constexpr std::uint64_t kMillerRabinCeiling = 330000000000000ULL;
constexpr std::uint64_t kMrBases[] = {2, 3, 5, 7, 11, 13, 17};

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n >= kMillerRabinCeiling)
    throw_bad_input("is_prime: input beyond deterministic Miller-Rabin range");
  if (n < 2) return false;
  for (std::uint64_t p : kMrBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kMrBases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw_bad_input("factorize: n must be positive");
  Factorization f;
  auto strip = [&](std::uint64_t p) {
    if (n % p) return;
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.pairs.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  strip(5);
  // wheel mod 30
  static constexpr std::uint64_t inc[] = {4, 2, 4, 2, 4, 6, 2, 6};
  std::uint64_t d = 7;
  int i = 0;
  while (d * d <= n) {
    strip(d);
    d += inc[i];
    i = (i + 1) & 7;
  }
  if (n > 1) f.pairs.emplace_back(n, 1);  // cofactor has no divisor <= sqrt, hence prime
  return f;
}

std::uint64_t radical(std::uint64_t n) { return radical(factorize(n)); }

std::uint64_t radical(const Factorization& f) {
  std::uint64_t r = 1;
  for (auto [p, e] : f.pairs) r *= p;
  return r;
}

std::uint64_t sqfree_part(std::uint64_t n) {
  std::uint64_t r = 1;
  for (auto [p, e] : factorize(n).pairs)
    if (e & 1) r *= p;
  return r;
}

std::uint32_t vp(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw_bad_input("vp: n must be positive");
  if (!is_prime(p)) throw_bad_input("vp: p is not prime");
  std::uint32_t e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

BigNat primorial_upto(double x) {
  BigNat r(1);
  if (!(x >= 2.0)) return r;
  auto cutoff = static_cast<std::uint32_t>(std::floor(x));
  for (std::uint32_t p : primes_upto(cutoff)) r *= p;
  return r;
}

std::vector<std::uint32_t> primes_upto(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

bool is_perfect_square(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  for (std::uint64_t c = (r > 1 ? r - 1 : 0); c <= r + 1; ++c)
    if (c * c == n) return true;
  return false;
}

}  // namespace tc
