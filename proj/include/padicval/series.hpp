#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padicval/exact_arith.hpp"

namespace padicval {

/// The pair (p, a) with p prime and p not dividing a. Also caches the
/// complement b = p - a, which is nonzero and prime to p as well.
class SeriesParams {
 public:
  SeriesParams(Prime p, BigInt a) : p_(std::move(p)), a_(std::move(a)), b_(p_.big() - a_) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), a_.get_mpz_t(), p_.big().get_mpz_t());
    if (r == 0) {
      throw std::invalid_argument("a must not be a multiple of p (a=" + a_.get_str() +
                                  ", p=" + p_.big().get_str() + ")");
    }
  }

  const Prime& p() const { return p_; }
  const BigInt& a() const { return a_; }
  const BigInt& complement() const { return b_; }

 private:
  Prime p_;
  BigInt a_;
  BigInt b_;
};

struct SeriesTerm {
  std::int64_t k;
  BigRational value;
};

struct PrefixSum {
  std::int64_t n;
  BigRational value;
};

/// r_k = (1/a^k + 1/(p-a)^k) p^k / k, assembled as a single fraction
/// (a^k + b^k) p^k / (k (a b)^k).
inline SeriesTerm term_r(const SeriesParams& params, std::int64_t k) {
  if (k < 1) throw std::domain_error("term index k must be >= 1");
  const auto e = static_cast<unsigned long>(k);
  const BigInt num = (ipow(params.a(), e) + ipow(params.complement(), e)) * ipow(params.p().big(), e);
  const BigInt den = BigInt(static_cast<long>(k)) * ipow(params.a() * params.complement(), e);
  return {k, BigRational(num, den)};
}

/// Resumable producer of s_1, s_2, ...; each step is one rational addition.
/// Single consumer; distinct streams are independent.
class PrefixSumStream {
 public:
  explicit PrefixSumStream(SeriesParams params) : params_(std::move(params)) {}

  PrefixSum next() {
    ++n_;
    sum_ += term_r(params_, n_).value;
    return {n_, sum_};
  }

  std::int64_t index() const { return n_; }
  const BigRational& value() const { return sum_; }
  const SeriesParams& params() const { return params_; }

 private:
  SeriesParams params_;
  std::int64_t n_ = 0;
  BigRational sum_;
};

inline std::vector<PrefixSum> prefix_sums(const SeriesParams& params, std::int64_t n_max) {
  if (n_max < 1) throw std::domain_error("n_max must be >= 1");
  PrefixSumStream stream(params);
  std::vector<PrefixSum> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) out.push_back(stream.next());
  return out;
}

/// Row C(n, 0..n) by the running product C(n,k+1) = C(n,k) (n-k) / (k+1).
inline std::vector<BigInt> binomial_row(std::int64_t n) {
  if (n < 0) throw std::domain_error("binomial row needs n >= 0");
  std::vector<BigInt> row;
  row.reserve(static_cast<std::size_t>(n) + 1);
  row.emplace_back(1);
  for (std::int64_t k = 0; k < n; ++k) {
    BigInt next = row.back() * static_cast<long>(n - k);
    mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(k + 1));
    row.push_back(std::move(next));
  }
  return row;
}

struct IdentitySides {
  BigRational lhs;
  BigRational rhs;
};

/// Both sides of
///   sum_{k=0}^{n} x^k y^(n-k) / C(n,k)
///     = (n+1) / ((x+y) (1/x+1/y)^(n+1)) * sum_{k=1}^{n+1} (x^k+y^k) (1/x+1/y)^k / k.
/// The two sides share no intermediate values.
inline IdentitySides mansour_sides(const BigRational& x, const BigRational& y, std::int64_t n) {
  if (x.is_zero() || y.is_zero()) throw std::domain_error("mansour identity needs x, y nonzero");
  if ((x + y).is_zero()) throw std::domain_error("mansour identity needs x + y != 0");
  if (n < 0) throw std::domain_error("mansour identity needs n >= 0");

  BigRational lhs;
  {
    const auto row = binomial_row(n);
    BigRational x_pow = 1;
    BigRational y_pow = y.pow(n);
    const BigRational y_inv = y.inverse();
    for (std::int64_t k = 0; k <= n; ++k) {
      lhs += x_pow * y_pow / BigRational(row[static_cast<std::size_t>(k)]);
      x_pow *= x;
      y_pow *= y_inv;
    }
  }

  BigRational rhs;
  {
    const BigRational q = x.inverse() + y.inverse();
    BigRational inner;
    BigRational xk = 1;
    BigRational yk = 1;
    BigRational qk = 1;
    for (std::int64_t k = 1; k <= n + 1; ++k) {
      xk *= x;
      yk *= y;
      qk *= q;
      inner += (xk + yk) * qk / BigRational(static_cast<long>(k));
    }
    rhs = BigRational(static_cast<long>(n + 1)) / ((x + y) * q.pow(n + 1)) * inner;
  }
  return {std::move(lhs), std::move(rhs)};
}

/// lcm{C(n,0), ..., C(n,n)} * (n+1) == lcm(1, ..., n+1).
inline bool verify_lcm_binom(std::int64_t n) {
  if (n < 0) throw std::domain_error("verify_lcm_binom needs n >= 0");
  BigInt acc = 1;
  for (const auto& c : binomial_row(n)) acc = big_lcm(acc, c);
  return acc * static_cast<long>(n + 1) == lcm_upto(n + 1);
}

/// Closed form of s_n through the binomial-reciprocal sum:
///   p^(n+1) / (n (a b)^n) * sum_{k=0}^{n-1} a^k b^(n-1-k) / C(n-1,k).
inline BigRational identity11_rhs(const SeriesParams& params, std::int64_t n) {
  if (n < 1) throw std::domain_error("identity11_rhs needs n >= 1");
  const BigInt& a = params.a();
  const BigInt& b = params.complement();
  const auto row = binomial_row(n - 1);
  BigRational inner;
  for (std::int64_t k = 0; k <= n - 1; ++k) {
    const BigInt term = ipow(a, static_cast<unsigned long>(k)) *
                        ipow(b, static_cast<unsigned long>(n - 1 - k));
    inner += BigRational(term, row[static_cast<std::size_t>(k)]);
  }
  const auto e = static_cast<unsigned long>(n);
  const BigRational scale(ipow(params.p().big(), e + 1),
                          BigInt(static_cast<long>(n)) * ipow(a * b, e));
  return scale * inner;
}

}  // namespace padicval
