#pragma once

// Coefficient fields for the elimination kernels. A field object carries the
// arithmetic; values are plain `value_type`s so kernels stay generic.

#include <cstdint>
#include <random>
#include <string>

#include "schurweyl/errors.hpp"
#include "schurweyl/rational.hpp"

namespace schurweyl {

/// Exact rational arithmetic.
struct RationalField {
  using value_type = Rational;

  static value_type zero() { return 0; }
  static value_type one() { return 1; }
  static bool is_zero(const value_type& a) { return sgn(a) == 0; }
  static value_type from(const Rational& q) { return q; }
  static value_type add(const value_type& a, const value_type& b) { return a + b; }
  static value_type sub(const value_type& a, const value_type& b) { return a - b; }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static value_type neg(const value_type& a) { return -a; }
  static value_type inv(const value_type& a) { return 1 / a; }
  /// acc -= factor * x
  static void sub_mul(value_type& acc, const value_type& factor, const value_type& x) {
    thread_local Rational tmp;
    mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), x.get_mpq_t());
    mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
  }
  /// acc += factor * x
  static void add_mul(value_type& acc, const value_type& factor, const value_type& x) {
    thread_local Rational tmp;
    mpq_mul(tmp.get_mpq_t(), factor.get_mpq_t(), x.get_mpq_t());
    mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
  }
  static void scale(value_type& a, const value_type& f) { a *= f; }
  std::string name() const { return "exact"; }
  bool exact() const { return true; }
};

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin, valid for every 64-bit input.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Arithmetic modulo a prime below 2^62.
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < 3 || p >= (1ULL << 62) || !is_prime_u64(p))
      throw InvalidArgument("modulus must be an odd prime below 2^62");
  }

  std::uint64_t modulus() const { return p_; }
  static value_type zero() { return 0; }
  static value_type one() { return 1; }
  static bool is_zero(value_type a) { return a == 0; }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }

  /// Product via the floating-point quotient estimate; exact for p < 2^62.
  value_type mul(value_type a, value_type b) const {
    const auto q = static_cast<std::uint64_t>(static_cast<long double>(a) * b / p_);
    auto r = static_cast<std::int64_t>(a * b - q * p_);
    while (r < 0) r += static_cast<std::int64_t>(p_);
    while (r >= static_cast<std::int64_t>(p_)) r -= static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw InvalidArgument("inverse of zero modulo p");
    return detail::powmod_u64(a, p_ - 2, p_);
  }
  void sub_mul(value_type& acc, value_type factor, value_type x) const { acc = sub(acc, mul(factor, x)); }
  void add_mul(value_type& acc, value_type factor, value_type x) const { acc = add(acc, mul(factor, x)); }
  void scale(value_type& a, value_type f) const { a = mul(a, f); }

  value_type from(const Rational& q) const {
    const value_type num = reduce(q.get_num());
    const value_type den = reduce(q.get_den());
    if (den == 0) throw InvalidArgument("denominator vanishes modulo " + std::to_string(p_));
    return mul(num, inv(den));
  }
  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<value_type>(r < 0 ? r + static_cast<long long>(p_) : r);
  }

  std::string name() const { return "mod-p(" + std::to_string(p_) + ")"; }
  bool exact() const { return false; }

 private:
  value_type reduce(const Integer& z) const {
    static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long required");
    return mpz_fdiv_ui(z.get_mpz_t(), p_);
  }

  std::uint64_t p_;
};

/// Largest primes below 2^62; used when no seed is given.
inline constexpr std::uint64_t kDefaultPrimeA = 4611686018427387847ULL;
inline constexpr std::uint64_t kDefaultPrimeB = 4611686018427387817ULL;

/// Deterministic 62-bit prime drawn from `seed`.
inline std::uint64_t prime_from_seed(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (;;) {
    std::uint64_t c = (gen() >> 2) | (1ULL << 61) | 1ULL;
    if (is_prime_u64(c)) return c;
  }
}

}  // namespace schurweyl
