#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace padicval {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for all
/// 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t b : kBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t b : kBases) {
    std::uint64_t x = detail::powmod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// A prime below 2^64. Primality is checked once, at construction; every
/// downstream formula assumes it.
class Prime {
 public:
  explicit Prime(std::uint64_t p) : value_(p), big_(static_cast<unsigned long>(p)) {
    static_assert(sizeof(unsigned long) >= sizeof(std::uint64_t));
    if (!is_prime_u64(p)) {
      throw std::invalid_argument("p must be prime (got " + std::to_string(p) + ")");
    }
  }

  static Prime from_big(const mpz_class& p) {
    if (sgn(p) <= 0 || !mpz_fits_ulong_p(p.get_mpz_t())) {
      throw std::invalid_argument("p must be a prime below 2^64 (got " + p.get_str() + ")");
    }
    return Prime(p.get_ui());
  }

  std::uint64_t value() const noexcept { return value_; }
  const mpz_class& big() const noexcept { return big_; }

  friend bool operator==(const Prime& a, const Prime& b) noexcept { return a.value_ == b.value_; }

 private:
  std::uint64_t value_;
  mpz_class big_;
};

}  // namespace padicval
