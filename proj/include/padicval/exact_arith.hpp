#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "padicval/prime.hpp"

namespace padicval {

/// Arbitrary-precision signed integer. GMP keeps it canonical (no negative
/// zero, no leading zero limbs).
using BigInt = mpz_class;

inline BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

/// Exact rational in lowest terms, denominator strictly positive, zero as 0/1.
/// Every constructor normalizes; arithmetic goes through GMP's mpq routines,
/// which preserve the canonical form.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)

  BigRational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    q_.get_num() = num;
    q_.get_den() = den;
    q_.canonicalize();
  }

  /// Parses "n", "-n" or "n/d" in base 10.
  static BigRational parse(std::string_view text) {
    const auto slash = text.find('/');
    auto to_int = [](std::string_view s) {
      BigInt v;
      if (s.empty() || v.set_str(std::string(s), 10) != 0) {
        throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
      }
      return v;
    };
    if (slash == std::string_view::npos) return BigRational(to_int(text));
    return BigRational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
  }

  const BigInt& num() const { return q_.get_num(); }
  const BigInt& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  /// Always "num/den", including integers ("4/1").
  std::string str() const { return num().get_str() + "/" + den().get_str(); }

  BigRational& operator+=(const BigRational& o) {
    q_ += o.q_;
    return *this;
  }
  BigRational& operator-=(const BigRational& o) {
    q_ -= o.q_;
    return *this;
  }
  BigRational& operator*=(const BigRational& o) {
    q_ *= o.q_;
    return *this;
  }
  BigRational& operator/=(const BigRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
  }

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a) { return from_raw(-a.q_); }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  BigRational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    return from_raw(1 / q_);
  }

  /// Integer power; negative exponents need a nonzero base.
  BigRational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    BigRational out;
    mpz_pow_ui(out.q_.get_num_mpz_t(), num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(out.q_.get_den_mpz_t(), den().get_mpz_t(), static_cast<unsigned long>(e));
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.str(); }

 private:
  static BigRational from_raw(mpq_class q) {
    BigRational r;
    r.q_ = std::move(q);
    return r;
  }

  mpq_class q_;
};

/// ν_p of a rational: a signed integer, or Infinite for zero.
class Valuation {
 public:
  constexpr explicit Valuation(std::int64_t v) : v_(v) {}
  static constexpr Valuation infinite() { return Valuation(); }

  constexpr bool is_finite() const { return v_.has_value(); }
  std::int64_t value() const {
    if (!v_) throw std::logic_error("finite value requested from infinite valuation");
    return *v_;
  }

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.v_ && b.v_) return *a.v_ <=> *b.v_;
    if (!a.v_ && !b.v_) return std::strong_ordering::equal;
    return a.v_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (!a.v_ || !b.v_) return infinite();
    return Valuation(*a.v_ + *b.v_);
  }

  std::string str() const { return v_ ? std::to_string(*v_) : std::string("inf"); }
  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

 private:
  constexpr Valuation() = default;
  std::optional<std::int64_t> v_;
};

/// Position of a valuation relative to the real-valued bound it is checked
/// against.
enum class BoundCmp { Below, Equal, Above };

inline std::string_view to_string(BoundCmp c) {
  switch (c) {
    case BoundCmp::Below: return "Below";
    case BoundCmp::Equal: return "Equal";
    case BoundCmp::Above: return "Above";
  }
  return "?";
}

/// Multiplicity of p in a nonzero integer.
inline std::int64_t multiplicity(const BigInt& n, const Prime& p) {
  if (n == 0) throw std::domain_error("multiplicity of p in zero");
  BigInt rest;
  return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.big().get_mpz_t()));
}

inline Valuation val_p(const BigInt& n, const Prime& p) {
  if (n == 0) return Valuation::infinite();
  return Valuation(multiplicity(n, p));
}

inline Valuation val_p(const BigRational& r, const Prime& p) {
  if (r.is_zero()) return Valuation::infinite();
  return Valuation(multiplicity(r.num(), p) - multiplicity(r.den(), p));
}

/// lcm(1, 2, ..., n).
inline BigInt lcm_upto(std::int64_t n) {
  if (n < 1) throw std::domain_error("lcm_upto needs n >= 1");
  BigInt acc = 1;
  for (std::int64_t i = 2; i <= n; ++i) acc = big_lcm(acc, BigInt(static_cast<long>(i)));
  return acc;
}

/// Largest e with p^e <= n.
inline std::int64_t floor_log(const Prime& p, const BigInt& n) {
  if (n < 1) throw std::domain_error("floor_log needs n >= 1");
  std::int64_t e = 0;
  BigInt power = p.big();
  while (power <= n) {
    power *= p.big();
    ++e;
  }
  return e;
}

inline std::int64_t floor_log(const Prime& p, std::int64_t n) {
  return floor_log(p, BigInt(static_cast<long>(n)));
}

namespace detail {

/// Sign of (mult * p^e - target) for e >= 0, without building p^e past target.
inline std::strong_ordering scaled_power_cmp(std::int64_t mult, const Prime& p, std::int64_t e,
                                             std::int64_t target) {
  BigInt lhs = mult;
  const BigInt rhs = static_cast<long>(target);
  for (std::int64_t i = 0; i < e && lhs <= rhs; ++i) lhs *= p.big();
  const int c = cmp(lhs, rhs);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace detail

/// Where nu sits relative to (n+1) - log_p((n+1)/2). Decided exactly:
/// nu >= n+2 is always Above, otherwise compare 2 p^(n+1-nu) against n+1.
inline BoundCmp bound_compare(std::int64_t nu, std::int64_t n, const Prime& p) {
  if (n < 1) throw std::domain_error("bound_compare needs n >= 1");
  if (nu >= n + 2) return BoundCmp::Above;
  const auto c = detail::scaled_power_cmp(2, p, n + 1 - nu, n + 1);
  if (c < 0) return BoundCmp::Above;
  if (c > 0) return BoundCmp::Below;
  return BoundCmp::Equal;
}

}  // namespace padicval
