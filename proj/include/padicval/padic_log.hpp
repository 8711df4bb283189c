#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "padicval/bound_engine.hpp"
#include "padicval/exact_arith.hpp"
#include "padicval/series.hpp"

namespace padicval {

/// A p-adic integer known modulo p^N, stored as its residue in [0, p^N).
/// Values combine only at equal (p, N).
class TruncatedPadic {
 public:
  TruncatedPadic(Prime p, std::int64_t precision, const BigInt& residue)
      : p_(std::move(p)), precision_(precision) {
    if (precision < 1) throw std::domain_error("precision must be >= 1");
    modulus_ = ipow(p_.big(), static_cast<unsigned long>(precision));
    mpz_mod(residue_.get_mpz_t(), residue.get_mpz_t(), modulus_.get_mpz_t());
  }

  static TruncatedPadic zero(Prime p, std::int64_t precision) { return {std::move(p), precision, 0}; }

  const Prime& p() const { return p_; }
  std::int64_t precision() const { return precision_; }
  const BigInt& residue() const { return residue_; }
  const BigInt& modulus() const { return modulus_; }
  bool is_zero() const { return residue_ == 0; }

  /// Image at a coarser precision.
  TruncatedPadic reduce(std::int64_t precision) const {
    if (precision > precision_) throw std::domain_error("cannot raise precision of a truncated value");
    return {p_, precision, residue_};
  }

  TruncatedPadic& operator+=(const TruncatedPadic& o) {
    require_compatible(o);
    residue_ += o.residue_;
    if (residue_ >= modulus_) residue_ -= modulus_;
    return *this;
  }
  TruncatedPadic& operator-=(const TruncatedPadic& o) {
    require_compatible(o);
    residue_ -= o.residue_;
    if (residue_ < 0) residue_ += modulus_;
    return *this;
  }
  TruncatedPadic& operator*=(const TruncatedPadic& o) {
    require_compatible(o);
    residue_ *= o.residue_;
    mpz_mod(residue_.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
    return *this;
  }
  friend TruncatedPadic operator+(TruncatedPadic a, const TruncatedPadic& b) { return a += b; }
  friend TruncatedPadic operator-(TruncatedPadic a, const TruncatedPadic& b) { return a -= b; }
  friend TruncatedPadic operator*(TruncatedPadic a, const TruncatedPadic& b) { return a *= b; }
  friend TruncatedPadic operator-(const TruncatedPadic& a) { return {a.p_, a.precision_, -a.residue_}; }

  friend bool operator==(const TruncatedPadic& a, const TruncatedPadic& b) {
    a.require_compatible(b);
    return a.residue_ == b.residue_;
  }

  std::string str() const {
    return residue_.get_str() + " mod " + p_.big().get_str() + "^" + std::to_string(precision_);
  }

 private:
  void require_compatible(const TruncatedPadic& o) const {
    if (!(p_ == o.p_) || precision_ != o.precision_) {
      throw std::invalid_argument("truncated p-adic values at different (p, N)");
    }
  }

  Prime p_;
  std::int64_t precision_;
  BigInt modulus_;
  BigInt residue_;
};

/// num * den^-1 mod p^N; the denominator must be prime to p.
inline TruncatedPadic to_truncated(const BigRational& r, const Prime& p, std::int64_t precision) {
  if (mpz_divisible_p(r.den().get_mpz_t(), p.big().get_mpz_t())) {
    throw std::domain_error("rational " + r.str() + " is not a p-adic integer");
  }
  TruncatedPadic zero = TruncatedPadic::zero(p, precision);
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), r.den().get_mpz_t(), zero.modulus().get_mpz_t());
  return {p, precision, r.num() * inv};
}

/// A rational x with v_p(x) >= 1, i.e. |x|_p < 1; zero is allowed.
class LogArgument {
 public:
  LogArgument(BigRational x, Prime p) : x_(std::move(x)), p_(std::move(p)), v_(val_p(x_, p_)) {
    if (v_ < Valuation(1)) {
      throw std::domain_error("log argument " + x_.str() + " has v_p = " + v_.str() + " < 1");
    }
  }

  const BigRational& value() const { return x_; }
  const Prime& p() const { return p_; }
  Valuation valuation() const { return v_; }

 private:
  BigRational x_;
  Prime p_;
  Valuation v_;
};

/// Smallest K >= 2 such that every k > K has k v - floor(log_p k) >= N, so each
/// omitted x^k / k vanishes mod p^N. k v - floor(log_p k) is nondecreasing in
/// k for v >= 1, so testing k = K + 1 decides "for all k > K".
inline std::int64_t truncation_index(const Prime& p, std::int64_t v, std::int64_t precision) {
  if (v < 1) throw std::domain_error("truncation_index needs v >= 1");
  std::int64_t K = 2;
  while ((K + 1) * v - floor_log(p, K + 1) < precision) ++K;
  return K;
}

/// -L_p(1 - x) = sum_{k>=1} x^k / k mod p^N, summed exactly up to the
/// truncation index and reduced once.
inline TruncatedPadic log1m(const LogArgument& x, std::int64_t precision, std::int64_t extra_terms = 0) {
  const Prime& p = x.p();
  if (!x.valuation().is_finite()) return TruncatedPadic::zero(p, precision);
  const std::int64_t K = truncation_index(p, x.valuation().value(), precision) + extra_terms;
  BigRational sum;
  BigRational power = 1;
  for (std::int64_t k = 1; k <= K; ++k) {
    power *= x.value();
    BigRational term = power / BigRational(static_cast<long>(k));
    if (val_p(term, p) < Valuation(0)) {
      throw std::logic_error("series term x^k/k with negative valuation at k=" + std::to_string(k));
    }
    sum += term;
  }
  return to_truncated(sum, p, precision);
}

/// Same value as log1m, computed in residues: x = p^v w with w a unit, and
/// x^k / k = p^(k v - v_p(k)) w^k (k / p^v_p(k))^-1.
inline TruncatedPadic log1m_residue(const LogArgument& x, std::int64_t precision) {
  const Prime& p = x.p();
  TruncatedPadic sum = TruncatedPadic::zero(p, precision);
  if (!x.valuation().is_finite()) return sum;
  const std::int64_t v = x.valuation().value();
  const BigRational unit = x.value() / BigRational(ipow(p.big(), static_cast<unsigned long>(v)));
  const TruncatedPadic w = to_truncated(unit, p, precision);
  const std::int64_t K = truncation_index(p, v, precision);
  TruncatedPadic w_pow(p, precision, 1);
  for (std::int64_t k = 1; k <= K; ++k) {
    w_pow *= w;
    BigInt k_unit = static_cast<long>(k);
    const auto kv = static_cast<std::int64_t>(
        mpz_remove(k_unit.get_mpz_t(), k_unit.get_mpz_t(), p.big().get_mpz_t()));
    const std::int64_t shift = k * v - kv;
    if (shift >= precision) continue;
    const TruncatedPadic scale = to_truncated(
        BigRational(ipow(p.big(), static_cast<unsigned long>(shift)), k_unit), p, precision);
    sum += w_pow * scale;
  }
  return sum;
}

/// L_p(uv) = L_p(u) + L_p(v) mod p^N for u, v = 1 mod p, written with
/// L_p(w) = -log1m(1 - w). Sums are formed in residue arithmetic.
inline bool verify_functional_eq(const BigRational& u, const BigRational& v, const Prime& p,
                                 std::int64_t precision) {
  const BigRational one = 1;
  if (val_p(u - one, p) < Valuation(1) || val_p(v - one, p) < Valuation(1)) {
    throw std::domain_error("functional equation needs v_p(u - 1) >= 1 and v_p(v - 1) >= 1");
  }
  const TruncatedPadic lhs = log1m_residue(LogArgument(one - u * v, p), precision);
  const TruncatedPadic rhs =
      log1m_residue(LogArgument(one - u, p), precision) + log1m_residue(LogArgument(one - v, p), precision);
  return lhs == rhs;
}

/// Finite-precision certificate that sum_k r_k = 0 in Q_p.
///
/// threshold: first n with (n+1) - log_p((n+1)/2) >= N, from which the
///            valuation bound alone forces v_p(s_n) >= N.
/// n0:        first n such that v_p(s_m) >= N for every m in [n, horizon],
///            horizon = threshold + window. Empirical, not a proof.
/// series_limit: log1m(p/a) + log1m(p/(p-a)) mod p^N, which must be 0 since
///            ((a-p)/a) ((-a)/(p-a)) = 1 and L_p(1) = 0.
struct Eq14Certificate {
  std::int64_t precision = 0;
  std::int64_t n0 = 0;
  std::int64_t threshold = 0;
  std::int64_t horizon = 0;
  std::vector<std::int64_t> violations;  // n >= threshold with v_p(s_n) < N
  bool product_is_one = false;
  TruncatedPadic series_limit;

  bool ok() const { return violations.empty() && n0 <= threshold && product_is_one && series_limit.is_zero(); }
};

inline Eq14Certificate verify_eq14(const SeriesParams& params, std::int64_t precision, std::int64_t window = 50) {
  if (precision < 1) throw std::domain_error("precision must be >= 1");
  if (window < 0) throw std::domain_error("window must be >= 0");
  const Prime& p = params.p();

  std::int64_t threshold = 1;
  while (bound_compare(precision, threshold, p) == BoundCmp::Above) ++threshold;
  const std::int64_t horizon = threshold + window;

  std::vector<Valuation> nus;
  nus.reserve(static_cast<std::size_t>(horizon));
  PrefixSumStream stream(params);
  for (std::int64_t n = 1; n <= horizon; ++n) nus.push_back(val_p(stream.next().value, p));

  std::int64_t n0 = horizon + 1;
  while (n0 > 1 && nus[static_cast<std::size_t>(n0 - 2)] >= Valuation(precision)) --n0;

  std::vector<std::int64_t> violations;
  for (std::int64_t n = threshold; n <= horizon; ++n) {
    if (nus[static_cast<std::size_t>(n - 1)] < Valuation(precision)) violations.push_back(n);
  }

  const BigRational pr(p.big());
  const BigRational a(params.a());
  const BigRational b(params.complement());
  const bool product_is_one = ((a - pr) / a) * (-a / (pr - a)) == BigRational(1);
  TruncatedPadic limit =
      log1m(LogArgument(pr / a, p), precision) + log1m(LogArgument(pr / b, p), precision);

  return Eq14Certificate{precision, n0, threshold, horizon, std::move(violations), product_is_one, std::move(limit)};
}

}  // namespace padicval
