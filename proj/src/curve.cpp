#include "tckit/curve.hpp"

#include <gmp.h>

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace tc {

namespace {

// Signed bignum scratch for the invariant formulas; inputs are arbitrary
// int64 but every stored invariant must fit back into int64.
class Int {
 public:
  Int() { mpz_init(z); }
  explicit Int(std::int64_t v) { mpz_init_set_si(z, v); }
  Int(const Int& o) { mpz_init_set(z, o.z); }
  Int& operator=(const Int& o) {
    mpz_set(z, o.z);
    return *this;
  }
  ~Int() { mpz_clear(z); }

  friend Int operator+(const Int& a, const Int& b) {
    Int r;
    mpz_add(r.z, a.z, b.z);
    return r;
  }
  friend Int operator-(const Int& a, const Int& b) {
    Int r;
    mpz_sub(r.z, a.z, b.z);
    return r;
  }
  friend Int operator*(const Int& a, const Int& b) {
    Int r;
    mpz_mul(r.z, a.z, b.z);
    return r;
  }
  friend Int operator*(std::int64_t k, const Int& a) { return Int(k) * a; }
  friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.z, b.z) == 0; }

  bool is_zero() const { return mpz_sgn(z) == 0; }
  bool fits_i64() const { return mpz_fits_slong_p(z) != 0; }
  std::int64_t to_i64() const { return mpz_get_si(z); }

  mpz_t z;
};

std::uint64_t umod(std::int64_t v, std::uint64_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r);
}

}  // namespace

WeierstrassCurve make_curve(std::int64_t a1, std::int64_t a2, std::int64_t a3,
                            std::int64_t a4, std::int64_t a6) {
  Int A1(a1), A2(a2), A3(a3), A4(a4), A6(a6);
  Int b2 = A1 * A1 + 4 * A2;
  Int b4 = 2 * A4 + A1 * A3;
  Int b6 = A3 * A3 + 4 * A6;
  Int b8 = A1 * A1 * A6 + 4 * (A2 * A6) - A1 * A3 * A4 + A2 * (A3 * A3) - A4 * A4;
  Int c4 = b2 * b2 - 24 * b4;
  Int c6 = Int(0) - b2 * b2 * b2 + 36 * (b2 * b4) - 216 * b6;
  Int disc = Int(0) - b8 * (b2 * b2) - 8 * (b4 * b4 * b4) - 27 * (b6 * b6) + 9 * (b2 * b4 * b6);

  if (disc.is_zero()) throw_bad_input("singular model: discriminant is zero");
  if (!(4 * b8 == b2 * b6 - b4 * b4)) throw_internal("b-invariant identity failed");
  if (!(c4 * c4 * c4 - c6 * c6 == 1728 * disc)) throw_internal("c-invariant identity failed");
  for (const Int* v : {&b2, &b4, &b6, &b8, &c4, &c6, &disc})
    if (!v->fits_i64()) throw_bad_input("derived invariant exceeds 64 bits; model too large");

  WeierstrassCurve e;
  e.a1 = a1;
  e.a2 = a2;
  e.a3 = a3;
  e.a4 = a4;
  e.a6 = a6;
  e.b2 = b2.to_i64();
  e.b4 = b4.to_i64();
  e.b6 = b6.to_i64();
  e.b8 = b8.to_i64();
  e.c4 = c4.to_i64();
  e.c6 = c6.to_i64();
  e.disc = disc.to_i64();
  return e;
}

ReductionType reduction_type(const WeierstrassCurve& e, std::uint64_t p) {
  if (umod(e.disc, p) != 0) return ReductionType::Good;
  if (umod(e.c4, p) != 0) return ReductionType::Multiplicative;
  return ReductionType::Additive;
}

const char* reduction_type_name(ReductionType t) {
  switch (t) {
    case ReductionType::Good: return "good";
    case ReductionType::Multiplicative: return "multiplicative";
    case ReductionType::Additive: return "additive";
  }
  return "?";
}

bool is_semistable(const WeierstrassCurve& e) {
  std::uint64_t d = static_cast<std::uint64_t>(std::llabs(e.disc));
  for (auto [p, exp] : factorize(d).pairs)
    if (reduction_type(e, p) == ReductionType::Additive) return false;
  return true;
}

std::uint64_t count_points(const WeierstrassCurve& e, std::uint64_t p, std::uint64_t ceiling) {
  if (p > ceiling) throw_resource("count_points: prime exceeds point-counting ceiling");
  if (!is_prime(p)) throw_bad_input("count_points: p is not prime");
  if (reduction_type(e, p) != ReductionType::Good)
    throw_bad_input("count_points: bad reduction at p");

  if (p == 2) {
    std::uint64_t n = 1;
    for (std::uint64_t x = 0; x < 2; ++x)
      for (std::uint64_t y = 0; y < 2; ++y) {
        std::int64_t lhs = static_cast<std::int64_t>(y * y) + e.a1 * static_cast<std::int64_t>(x * y) +
                           e.a3 * static_cast<std::int64_t>(y);
        std::int64_t rhs = static_cast<std::int64_t>(x * x * x) + e.a2 * static_cast<std::int64_t>(x * x) +
                           e.a4 * static_cast<std::int64_t>(x) + e.a6;
        if (umod(lhs - rhs, 2) == 0) ++n;
      }
    return n;
  }

  // Complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6,
  // so each x contributes 1 + chi(g(x)) points.
  std::vector<std::uint8_t> qr(p, 0);
  for (std::uint64_t z = 1; z < p; ++z) qr[z * z % p] = 1;
  std::uint64_t B2 = umod(e.b2, p), B4 = umod(e.b4, p), B6 = umod(e.b6, p);
  std::int64_t chi_sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t g = (((4 * x + B2) % p) * x % p * x % p + (2 * B4 % p) * x % p + B6) % p;
    if (g != 0) chi_sum += qr[g] ? 1 : -1;
  }
  return p + 1 + chi_sum;
}

std::int64_t trace_ap(const WeierstrassCurve& e, std::uint64_t p, std::uint64_t ceiling) {
  std::int64_t ap = static_cast<std::int64_t>(p) + 1 -
                    static_cast<std::int64_t>(count_points(e, p, ceiling));
  if (ap * ap > static_cast<std::int64_t>(4 * p)) throw_internal("Hasse bound violated");
  return ap;
}

std::vector<FrobeniusSample> frobenius_samples(const WeierstrassCurve& e, std::uint64_t limit,
                                               std::uint64_t ceiling) {
  if (limit > ceiling) throw_resource("frobenius_samples: limit exceeds ceiling");
  std::vector<FrobeniusSample> out;
  for (std::uint32_t p : primes_upto(static_cast<std::uint32_t>(limit))) {
    if (reduction_type(e, p) != ReductionType::Good) continue;
    out.push_back({p, trace_ap(e, p, ceiling)});
  }
  return out;
}

std::uint64_t conductor_semistable(const WeierstrassCurve& e) {
  if (!is_semistable(e))
    throw_bad_input("conductor requires a semi-stable curve; supply it explicitly otherwise");
  return radical(static_cast<std::uint64_t>(std::llabs(e.disc)));
}

}  // namespace tc
