#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "padicval/exact_arith.hpp"
#include "padicval/parallel.hpp"
#include "padicval/series.hpp"

namespace padicval {

/// Sign of l_k - c where l_k = k - log_p(k/2), via 2 p^(k-c) against k.
inline std::strong_ordering ell_compare(const Prime& p, std::int64_t k, std::int64_t c) {
  if (k < 2) throw std::domain_error("ell sequence starts at k = 2");
  // k - c < 0 means 2 p^(k-c) <= 2/p <= 1 < k.
  if (k - c < 0) return std::strong_ordering::less;
  return detail::scaled_power_cmp(2, p, k - c, k);
}

/// v_p(r_k) = v_p(a^k + (p-a)^k) + k - v_p(k).
inline std::int64_t term_valuation(const SeriesParams& params, std::int64_t k) {
  if (k < 1) throw std::domain_error("term index k must be >= 1");
  const auto e = static_cast<unsigned long>(k);
  const BigInt head = ipow(params.a(), e) + ipow(params.complement(), e);
  return multiplicity(head, params.p()) + k - multiplicity(BigInt(static_cast<long>(k)), params.p());
}

/// Raised when an oracle breaks the guarantee the tail-min window relies on.
class ContractViolation : public std::logic_error {
 public:
  ContractViolation(std::int64_t k, const std::string& what)
      : std::logic_error(what + " at k=" + std::to_string(k)), k_(k) {}
  std::int64_t index() const noexcept { return k_; }

 private:
  std::int64_t k_;
};

/// A sequence of term valuations k -> v_p(r_k) together with a lower bound
/// l_k (k >= 2) that must be strictly increasing and unbounded, with
/// l_k <= v_p(r_k).
///   ell_compare(k, c): sign of l_k - c
///   ell_step(k):       sign of l_{k+1} - l_k
template <class O>
concept TermOracle = requires(const O& o, std::int64_t k, std::int64_t c) {
  { o.term_valuation(k) } -> std::convertible_to<Valuation>;
  { o.ell_compare(k, c) } -> std::convertible_to<std::strong_ordering>;
  { o.ell_step(k) } -> std::convertible_to<std::strong_ordering>;
};

/// The terms r_k with l_k = k - log_p(k/2).
class SeriesOracle {
 public:
  explicit SeriesOracle(SeriesParams params) : params_(std::move(params)) {}

  Valuation term_valuation(std::int64_t k) const { return Valuation(padicval::term_valuation(params_, k)); }
  std::strong_ordering ell_compare(std::int64_t k, std::int64_t c) const {
    return padicval::ell_compare(params_.p(), k, c);
  }
  // l_{k+1} - l_k = 1 - log_p((k+1)/k), positive iff p k > k + 1.
  std::strong_ordering ell_step(std::int64_t k) const {
    const BigInt lhs = params_.p().big() * static_cast<long>(k);
    const BigInt rhs = static_cast<long>(k + 1);
    const int c = cmp(lhs, rhs);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const SeriesParams& params() const { return params_; }

 private:
  SeriesParams params_;
};

struct TailMin {
  Valuation min = Valuation::infinite();
  std::int64_t witness = 0;     // smallest k attaining min
  std::int64_t window_end = 0;  // last k scanned
};

struct TailScanOptions {
  std::int64_t widen = 1;  // scan widen * (escape window length) terms
  std::int64_t max_scan = 1'000'000;
};

/// Exact min of v_p(r_k) over k >= n+1. The scan stops at the first K with
/// l_{K+1} above the running minimum; every later term is at least l_{K+1}.
/// n = 0 takes the minimum over all k >= 1.
template <TermOracle O>
TailMin tail_min(const O& oracle, std::int64_t n, TailScanOptions opts = {}) {
  if (n < 0) throw std::domain_error("tail_min needs n >= 0");
  const std::int64_t start = n + 1;
  TailMin out;

  auto visit = [&](std::int64_t k) {
    const Valuation v = oracle.term_valuation(k);
    if (k >= 2) {
      if (v.is_finite() && oracle.ell_compare(k, v.value()) > 0) {
        throw ContractViolation(k, "lower bound l_k exceeds term valuation " + v.str());
      }
      if (oracle.ell_step(k) <= 0) throw ContractViolation(k, "lower bound is not strictly increasing");
    }
    if (v < out.min) {
      out.min = v;
      out.witness = k;
    }
  };

  std::int64_t k = start;
  for (;; ++k) {
    if (k - start >= opts.max_scan) throw ContractViolation(k, "escape window not reached within scan limit");
    visit(k);
    if (out.min.is_finite() && oracle.ell_compare(k + 1, out.min.value()) > 0) break;
  }
  const std::int64_t widened_end = start - 1 + opts.widen * (k - start + 1);
  for (++k; k <= widened_end; ++k) visit(k);
  out.window_end = std::max(k - 1, widened_end);
  return out;
}

struct Theorem2Violation {
  std::int64_t n;
  std::string what;
};

/// Checks, for n = 1..n_max, that v_p(s_n) >= tailmin(n) >= l_{n+1} and that
/// v_p(s_n) = l_{n+1} exactly when tailmin(n) = l_{n+1}. sums[n-1] holds
/// v_p(s_n). Violations (including oracle contract breaches) are returned.
template <TermOracle O>
std::vector<Theorem2Violation> check_theorem2_prefix(const O& oracle, std::span<const Valuation> sums,
                                                     std::int64_t n_max, unsigned jobs = 1) {
  if (n_max < 1 || static_cast<std::size_t>(n_max) > sums.size()) {
    throw std::domain_error("check_theorem2_prefix needs 1 <= n_max <= sums.size()");
  }
  std::vector<std::vector<Theorem2Violation>> per_n(static_cast<std::size_t>(n_max));
  parallel_for(per_n.size(), jobs, [&](std::size_t i) {
    const auto n = static_cast<std::int64_t>(i) + 1;
    auto& out = per_n[i];
    TailMin tm;
    try {
      tm = tail_min(oracle, n);
    } catch (const ContractViolation& e) {
      out.push_back({n, std::string("oracle contract violated: ") + e.what()});
      return;
    }
    const Valuation nu = sums[i];
    if (nu < tm.min) {
      out.push_back({n, "v_p(s_n)=" + nu.str() + " below tail minimum " + tm.min.str()});
    }
    if (!tm.min.is_finite()) return;
    const auto tail_vs_ell = oracle.ell_compare(n + 1, tm.min.value());
    if (tail_vs_ell > 0) {
      out.push_back({n, "tail minimum " + tm.min.str() + " below l_{n+1}"});
    }
    const bool nu_on_ell = nu.is_finite() && oracle.ell_compare(n + 1, nu.value()) == 0;
    const bool tail_on_ell = tail_vs_ell == 0;
    if (nu_on_ell != tail_on_ell) {
      out.push_back({n, "equality mismatch: v_p(s_n) on l_{n+1} is " + std::string(nu_on_ell ? "true" : "false") +
                            ", tail minimum on l_{n+1} is " + (tail_on_ell ? "true" : "false")});
    }
  });
  std::vector<Theorem2Violation> all;
  for (auto& v : per_n) all.insert(all.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  return all;
}

/// Some(alpha) iff n + 1 = 2 p^alpha.
inline std::optional<std::int64_t> equality_case(const Prime& p, std::int64_t n) {
  if (n < 1) throw std::domain_error("equality_case needs n >= 1");
  if ((n + 1) % 2 != 0) return std::nullopt;
  BigInt m = static_cast<long>((n + 1) / 2);
  std::int64_t alpha = 0;
  while (m > 1) {
    if (!mpz_divisible_p(m.get_mpz_t(), p.big().get_mpz_t())) return std::nullopt;
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.big().get_mpz_t());
    ++alpha;
  }
  return alpha;
}

struct BoundReport {
  std::int64_t n = 0;
  Valuation nu = Valuation::infinite();
  BoundCmp cmp = BoundCmp::Above;
  Valuation tail_min = Valuation::infinite();
  std::int64_t tail_witness = 0;
  bool equality_predicted = false;
  std::optional<std::int64_t> alpha;
  std::int64_t first_method_bound = 0;  // n + 1 - floor(log_p n)
  std::optional<BigRational> value;     // s_n, kept on request
};

struct Theorem1Options {
  unsigned jobs = 1;
  bool keep_values = false;
};

struct Theorem1Run {
  std::vector<BoundReport> reports;
  std::vector<Theorem2Violation> failures;
  bool ok() const { return failures.empty(); }
};

/// Scans n = 1..n_max: v_p(s_n) against (n+1) - log_p((n+1)/2), the
/// equality characterization n = 2p^alpha - 1, the tail-min sandwich, and
/// the weaker lcm bound n + 1 - floor(log_p n). s_n is produced sequentially;
/// the per-n tail scans run on `jobs` threads.
inline Theorem1Run check_theorem1(const SeriesParams& params, std::int64_t n_max, Theorem1Options opts = {}) {
  if (n_max < 1) throw std::domain_error("n_max must be >= 1");
  const Prime& p = params.p();
  Theorem1Run run;
  run.reports.resize(static_cast<std::size_t>(n_max));

  PrefixSumStream stream(params);
  for (auto& r : run.reports) {
    const PrefixSum s = stream.next();
    r.n = s.n;
    r.nu = val_p(s.value, p);
    if (opts.keep_values) r.value = s.value;
  }

  const SeriesOracle oracle(params);
  std::vector<std::vector<Theorem2Violation>> per_n(run.reports.size());
  parallel_for(run.reports.size(), opts.jobs, [&](std::size_t i) {
    BoundReport& r = run.reports[i];
    auto& fail = per_n[i];
    const std::int64_t n = r.n;
    const TailMin tm = tail_min(oracle, n);
    r.tail_min = tm.min;
    r.tail_witness = tm.witness;
    r.alpha = equality_case(p, n);
    r.equality_predicted = r.alpha.has_value();
    r.first_method_bound = n + 1 - floor_log(p, n);

    if (!r.nu.is_finite()) {
      r.cmp = BoundCmp::Above;
      fail.push_back({n, "s_n vanished"});
      return;
    }
    r.cmp = bound_compare(r.nu.value(), n, p);
    if (r.cmp == BoundCmp::Below) fail.push_back({n, "v_p(s_n)=" + r.nu.str() + " below the bound"});
    if ((r.cmp == BoundCmp::Equal) != r.equality_predicted) {
      fail.push_back({n, "equality verdict " + std::string(to_string(r.cmp)) + " disagrees with n = 2p^alpha - 1 test"});
    }
    const bool tail_on_ell = tm.min.is_finite() && ell_compare(p, n + 1, tm.min.value()) == 0;
    if ((r.cmp == BoundCmp::Equal) != tail_on_ell) {
      fail.push_back({n, "tail minimum " + tm.min.str() + " disagrees with equality verdict"});
    }
    if (r.nu < tm.min) fail.push_back({n, "v_p(s_n) below tail minimum " + tm.min.str()});
    if (r.nu.value() < r.first_method_bound) {
      fail.push_back({n, "v_p(s_n) below n + 1 - floor(log_p n) = " + std::to_string(r.first_method_bound)});
    }
  });
  for (auto& v : per_n) run.failures.insert(run.failures.end(), v.begin(), v.end());
  return run;
}

struct DyadicRow {
  std::int64_t n;
  Valuation nu;  // v_2(sum_{k<=n} 2^k / k)
  BoundCmp cmp;  // against (n+1) - log_2(n+1)
};

struct DyadicRun {
  std::vector<DyadicRow> rows;
  std::vector<std::int64_t> equality_set;
  std::vector<Theorem2Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// The p = 2, a = 1 specialization stated on t_n = sum_{k<=n} 2^k / k:
/// v_2(t_n) >= (n+1) - log_2(n+1), tight exactly at n = 2^alpha - 1, and the
/// older v_2(t_n) >= n - floor(log_2 n). t_n is summed on its own and also
/// checked against s_n(2, 1) = 2 t_n.
inline DyadicRun dubickas_corollary(std::int64_t n_max) {
  if (n_max < 1) throw std::domain_error("n_max must be >= 1");
  const Prime two(2);
  DyadicRun run;
  PrefixSumStream paired(SeriesParams(two, 1));
  BigRational t;
  BigInt pow2 = 1;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    pow2 *= 2;
    t += BigRational(pow2, BigInt(static_cast<long>(n)));
    const Valuation nu = val_p(t, two);
    const Valuation nu_s = val_p(paired.next().value, two);

    if (!nu.is_finite()) {
      run.violations.push_back({n, "t_n vanished"});
      run.rows.push_back({n, nu, BoundCmp::Above});
      continue;
    }
    const std::int64_t mu = nu.value();
    BoundCmp c = BoundCmp::Above;
    if (mu < n + 2) {
      const auto o = detail::scaled_power_cmp(1, two, n + 1 - mu, n + 1);
      c = o < 0 ? BoundCmp::Above : (o > 0 ? BoundCmp::Below : BoundCmp::Equal);
    }
    run.rows.push_back({n, nu, c});
    if (c == BoundCmp::Equal) run.equality_set.push_back(n);

    const bool predicted = ((n + 1) & n) == 0;  // n + 1 is a power of two
    if (c == BoundCmp::Below) run.violations.push_back({n, "v_2(t_n) below (n+1) - log_2(n+1)"});
    if ((c == BoundCmp::Equal) != predicted) {
      run.violations.push_back({n, "equality verdict disagrees with n = 2^alpha - 1 test"});
    }
    if (mu < n - floor_log(two, n)) run.violations.push_back({n, "v_2(t_n) below n - floor(log_2 n)"});
    if (nu_s != nu + Valuation(1)) run.violations.push_back({n, "v_2(s_n(2,1)) != v_2(t_n) + 1"});
  }
  return run;
}

}  // namespace padicval
