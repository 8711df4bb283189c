#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "padicval/exact_arith.hpp"

namespace padicval {

/// Dense polynomial over Z; coeffs[i] is the coefficient of X^i.
/// Trailing zero coefficients are stripped, so the zero polynomial has no
/// coefficients at all.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// X^k.
  static IntPolynomial monomial(std::size_t k, BigInt c = 1) {
    std::vector<BigInt> v(k + 1);
    v[k] = std::move(c);
    return IntPolynomial(std::move(v));
  }

  /// (X + c)^n by the binomial theorem.
  static IntPolynomial linear_power(const BigInt& c, std::int64_t n) {
    if (n < 0) throw std::domain_error("negative exponent");
    std::vector<BigInt> v(static_cast<std::size_t>(n) + 1);
    BigInt binom = 1;
    for (std::int64_t i = 0; i <= n; ++i) {
      v[static_cast<std::size_t>(i)] = binom * ipow(c, static_cast<unsigned long>(n - i));
      binom *= static_cast<long>(n - i);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(i + 1));
    }
    return IntPolynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
      }
    }
    return IntPolynomial(std::move(out));
  }

  friend IntPolynomial operator*(const BigInt& c, const IntPolynomial& a) {
    std::vector<BigInt> out = a.coeffs_;
    for (auto& x : out) x *= c;
    return IntPolynomial(std::move(out));
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += coeffs_[i].get_str();
      if (i > 0) out += "*X^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

/// Integer polynomial obtained by clearing the denominators of
///   R_n(X) = sum_{k=1}^{n} (X/a)^k / k + sum_{k=1}^{n} (X/(X-a))^k / k,
/// i.e. P_n(X) = R_n(X) a^n (X-a)^n lcm(1..n)
///            = lcm(1..n) sum_k (1/k) [a^(n-k) (X-a)^n + a^n (X-a)^(n-k)] X^k.
inline IntPolynomial clearing_polynomial(const BigInt& a, std::int64_t n) {
  if (a == 0) throw std::domain_error("clearing polynomial needs a != 0");
  if (n < 1) throw std::domain_error("clearing polynomial needs n >= 1");

  const BigInt lcm = lcm_upto(n);
  const BigInt minus_a = -a;
  std::vector<IntPolynomial> shifted;  // (X - a)^j
  shifted.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t j = 0; j <= n; ++j) shifted.push_back(IntPolynomial::linear_power(minus_a, j));
  const BigInt a_n = ipow(a, static_cast<unsigned long>(n));

  std::vector<BigInt> out(2 * static_cast<std::size_t>(n) + 1);
  const auto& full = shifted[static_cast<std::size_t>(n)].coeffs();
  for (std::int64_t k = 1; k <= n; ++k) {
    BigInt weight = lcm;
    mpz_divexact_ui(weight.get_mpz_t(), weight.get_mpz_t(), static_cast<unsigned long>(k));
    const auto shift = static_cast<std::size_t>(k);

    const BigInt c1 = weight * ipow(a, static_cast<unsigned long>(n - k));
    for (std::size_t i = 0; i < full.size(); ++i) {
      mpz_addmul(out[i + shift].get_mpz_t(), c1.get_mpz_t(), full[i].get_mpz_t());
    }
    const BigInt c2 = weight * a_n;
    const auto& part = shifted[static_cast<std::size_t>(n - k)].coeffs();
    for (std::size_t i = 0; i < part.size(); ++i) {
      mpz_addmul(out[i + shift].get_mpz_t(), c2.get_mpz_t(), part[i].get_mpz_t());
    }
  }
  return IntPolynomial(std::move(out));
}

/// Order of vanishing at X = 0; Infinite for the zero polynomial.
inline Valuation vanishing_order(const IntPolynomial& poly) {
  const auto& c = poly.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] != 0) return Valuation(static_cast<std::int64_t>(i));
  }
  return Valuation::infinite();
}

inline BigRational eval_polynomial(const IntPolynomial& poly, const BigRational& x) {
  BigRational acc;
  const auto& c = poly.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + BigRational(c[i]);
  return acc;
}

}  // namespace padicval
