#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "padicval/padicval.hpp"

namespace padicval::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kClaimViolated = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;
  std::string check;
  std::uint64_t p = 2;
  std::string a = "1";
  std::int64_t n_max = -1;  // -1: per-command default
  std::int64_t precision = 12;
  std::string format = "human";
  std::uint64_t seed = 7;
  std::int64_t samples = 100;
  std::int64_t window = 50;
  unsigned jobs = 0;  // 0: all cores
  std::string x;
  bool p_given = false;
};

struct Claim {
  std::string anchor;
  Json params = Json::object();
  bool verdict = true;
  Json witness;  // null when absent
};

struct Report {
  Json config = Json::object();
  std::vector<Claim> claims;
  Json extra = Json::object();  // merged into summary

  bool ok() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.verdict; });
  }
};

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::string flatten(const Json& obj) {
  if (obj.is_null()) return "";
  if (!obj.is_object()) return scalar_text(obj);
  std::string out;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!out.empty()) out += ';';
    out += it.key() + '=' + scalar_text(it.value());
  }
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline Json summary(const Report& r) {
  Json s = Json::object();
  const auto passed = std::count_if(r.claims.begin(), r.claims.end(), [](const Claim& c) { return c.verdict; });
  s["claims"] = r.claims.size();
  s["passed"] = passed;
  s["failed"] = static_cast<std::int64_t>(r.claims.size()) - passed;
  s["verdict"] = r.ok() ? "pass" : "fail";
  for (auto it = r.extra.begin(); it != r.extra.end(); ++it) s[it.key()] = it.value();
  return s;
}

inline void emit(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    Json doc = Json::object();
    doc["config"] = r.config;
    Json claims = Json::array();
    for (const auto& c : r.claims) {
      Json j = Json::object();
      j["anchor"] = c.anchor;
      j["params"] = c.params;
      j["verdict"] = c.verdict ? "pass" : "fail";
      if (!c.witness.is_null()) j["witness"] = c.witness;
      claims.push_back(std::move(j));
    }
    doc["claims"] = std::move(claims);
    doc["summary"] = summary(r);
    out << doc.dump(2) << '\n';
  } else if (format == "csv") {
    out << "anchor,params,verdict,witness\n";
    for (const auto& c : r.claims) {
      out << csv_field(c.anchor) << ',' << csv_field(flatten(c.params)) << ',' << (c.verdict ? "pass" : "fail")
          << ',' << csv_field(flatten(c.witness)) << '\n';
    }
  } else {
    for (const auto& c : r.claims) {
      out << (c.verdict ? "[pass] " : "[FAIL] ") << c.anchor << "  " << flatten(c.params);
      if (!c.witness.is_null()) out << "  | " << flatten(c.witness);
      out << '\n';
    }
    out << "summary: " << flatten(summary(r)) << '\n';
  }
}

inline Json to_json(const std::vector<std::int64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

inline Json violations_json(const std::vector<Theorem2Violation>& v, std::size_t limit = 20) {
  Json a = Json::array();
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) a.push_back(std::to_string(v[i].n) + ": " + v[i].what);
  return a;
}

inline std::vector<std::int64_t> predicted_equality_set(const Prime& p, std::int64_t n_max) {
  std::vector<std::int64_t> out;
  BigInt m = 2;
  while (m - 1 <= n_max) {
    out.push_back(static_cast<std::int64_t>(m.get_si()) - 1);
    m *= p.big();
  }
  return out;
}

// Nonzero rational with |num| <= 50 and 1 <= den <= 50 (den prime to `avoid` if given).
inline BigRational random_rational(std::mt19937_64& rng, std::optional<std::uint64_t> avoid = std::nullopt) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 50);
  for (;;) {
    const long n = num(rng);
    const long d = den(rng);
    if (n == 0) continue;
    if (avoid && d % static_cast<long>(*avoid) == 0) continue;
    return BigRational(BigInt(n), BigInt(d));
  }
}

}  // namespace detail

struct Context {
  RunConfig cfg;
  std::optional<Prime> p;
  BigInt a;
  std::optional<SeriesParams> params;  // set when the command needs p not dividing a
  unsigned jobs = 1;
};

inline bool needs_series(const RunConfig& cfg) {
  if (cfg.command != "verify") return true;
  return cfg.check == "identity11" || cfg.check == "theorem2" || cfg.check == "eq14";
}

inline Context validate(const RunConfig& cfg) {
  Context ctx{cfg, std::nullopt, 0, std::nullopt, cfg.jobs == 0 ? default_jobs() : cfg.jobs};
  try {
    ctx.p.emplace(cfg.p);
    if (ctx.a.set_str(cfg.a, 10) != 0) throw std::invalid_argument("a must be an integer (got '" + cfg.a + "')");
    if (ctx.a == 0) throw std::invalid_argument("a must be nonzero");
    if (needs_series(cfg)) ctx.params.emplace(*ctx.p, ctx.a);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (cfg.n_max == 0 || cfg.n_max < -1) throw ConfigError("n-max must be >= 1");
  if (cfg.precision < 1) throw ConfigError("precision must be >= 1");
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  if (cfg.window < 0) throw ConfigError("window must be >= 0");
  return ctx;
}

inline Json config_json(const RunConfig& cfg, std::int64_t n_max) {
  Json c = Json::object();
  c["command"] = cfg.command;
  if (!cfg.check.empty()) c["check"] = cfg.check;
  c["p"] = cfg.p;
  c["a"] = cfg.a;
  c["n_max"] = n_max;
  c["precision"] = cfg.precision;
  c["seed"] = cfg.seed;
  c["samples"] = cfg.samples;
  c["window"] = cfg.window;
  if (!cfg.x.empty()) c["x"] = cfg.x;
  return c;
}

inline std::int64_t n_max_or(const RunConfig& cfg, std::int64_t fallback) { return cfg.n_max > 0 ? cfg.n_max : fallback; }

inline Report cmd_sum(const Context& ctx) {
  const std::int64_t n_max = n_max_or(ctx.cfg, 20);
  const Prime& p = *ctx.p;
  Report rep;
  rep.config = config_json(ctx.cfg, n_max);
  const Theorem1Run run = check_theorem1(*ctx.params, n_max, {ctx.jobs, true});
  std::vector<std::vector<std::string>> failures(run.reports.size());
  for (const auto& f : run.failures) failures[static_cast<std::size_t>(f.n - 1)].push_back(f.what);

  std::vector<std::int64_t> equal;
  for (const auto& r : run.reports) {
    Claim c{"valuation-bound", Json::object(), failures[static_cast<std::size_t>(r.n - 1)].empty(), Json::object()};
    c.params["n"] = r.n;
    c.witness["s_n"] = r.value->str();
    c.witness["nu"] = r.nu.str();
    c.witness["bound"] = std::to_string(r.n + 1) + " - log_" + p.big().get_str() + "(" + std::to_string(r.n + 1) + "/2)";
    c.witness["cmp"] = std::string(to_string(r.cmp));
    c.witness["tail_min"] = r.tail_min.str();
    c.witness["tail_witness"] = r.tail_witness;
    c.witness["equality_predicted"] = r.equality_predicted;
    if (r.alpha) c.witness["alpha"] = *r.alpha;
    if (!c.verdict) {
      Json why = Json::array();
      for (const auto& w : failures[static_cast<std::size_t>(r.n - 1)]) why.push_back(w);
      c.witness["violations"] = why;
    }
    if (r.cmp == BoundCmp::Equal) equal.push_back(r.n);
    rep.claims.push_back(std::move(c));
  }
  rep.extra["equality_set"] = detail::to_json(equal);
  rep.extra["predicted_equality_set"] = detail::to_json(detail::predicted_equality_set(p, n_max));
  return rep;
}

inline Report cmd_scan_equality(const Context& ctx) {
  const std::int64_t n_max = n_max_or(ctx.cfg, 60);
  const Prime& p = *ctx.p;
  Report rep;
  rep.config = config_json(ctx.cfg, n_max);
  const Theorem1Run run = check_theorem1(*ctx.params, n_max, {ctx.jobs, false});
  std::vector<std::int64_t> observed;
  for (const auto& r : run.reports) {
    if (r.cmp == BoundCmp::Equal) observed.push_back(r.n);
  }
  const auto predicted = detail::predicted_equality_set(p, n_max);
  Claim c{"equality-characterization", Json::object(), observed == predicted && run.ok(), Json::object()};
  c.params["p"] = ctx.cfg.p;
  c.params["a"] = ctx.cfg.a;
  c.params["n_max"] = n_max;
  c.witness["observed"] = detail::to_json(observed);
  c.witness["predicted"] = detail::to_json(predicted);
  if (!run.ok()) c.witness["violations"] = detail::violations_json(run.failures);
  rep.claims.push_back(std::move(c));
  return rep;
}

inline Report verify_mansour(const Context& ctx) {
  const std::int64_t n_max = n_max_or(ctx.cfg, 30);
  Report rep;
  rep.config = config_json(ctx.cfg, n_max);
  std::mt19937_64 rng(ctx.cfg.seed);
  std::uniform_int_distribution<std::int64_t> pick_n(0, n_max);
  std::int64_t failures = 0;
  Json first = nullptr;
  for (std::int64_t i = 0; i < ctx.cfg.samples; ++i) {
    BigRational x = detail::random_rational(rng);
    BigRational y = detail::random_rational(rng);
    while ((x + y).is_zero()) y = detail::random_rational(rng);
    const std::int64_t n = pick_n(rng);
    const auto sides = mansour_sides(x, y, n);
    if (sides.lhs != sides.rhs) {
      ++failures;
      if (first.is_null()) {
        first = Json::object();
        first["x"] = x.str();
        first["y"] = y.str();
        first["n"] = n;
        first["lhs"] = sides.lhs.str();
        first["rhs"] = sides.rhs.str();
      }
    }
  }
  Claim c{"mansour-identity", Json::object(), failures == 0, first};
  c.params["samples"] = ctx.cfg.samples;
  c.params["seed"] = ctx.cfg.seed;
  c.params["n_max"] = n_max;
  rep.claims.push_back(std::move(c));
  return rep;
}

inline Report verify_lcm_binom_cmd(const Context& ctx) {
  const std::int64_t n_max = n_max_or(ctx.cfg, 500);
  Report rep;
  rep.config = config_json(ctx.cfg, n_max);
  std::vector<char> good(static_cast<std::size_t>(n_max) + 1);
  parallel_for(good.size(), ctx.jobs, [&](std::size_t n) { good[n] = verify_lcm_binom(static_cast<std::int64_t>(n)); });
  std::vector<std::int64_t> bad;
  for (std::size_t n = 0; n < good.size(); ++n) {
    if (!good[n]) bad.push_back(static_cast<std::int64_t>(n));
  }
  Claim c{"lcm-binomial-identity", Json::object(), bad.empty(), nullptr};
  c.params["n_range"] = "0.." + std::to_string(n_max);
  if (!bad.empty()) c.witness = Json{{"failing_n", detail::to_json(bad)}};
  rep.claims.push_back(std::move(c));
  return rep;
}

inline Report verify_identity11(const Context& ctx) {
  const std::int64_t n_max = n_max_or(ctx.cfg, 100);
  Report rep;
  rep.config = config_json(ctx.cfg, n_max);
  const auto sums = prefix_sums(*ctx.params, n_max);
  std::vector<char> good(sums.size());
  parallel_for(sums.size(), ctx.jobs, [&](std::size_t i) {
    good[i] = identity11_rhs(*ctx.params, sums[i].n) == sums[i].value;
  });
  std::vector<std::int64_t> bad;
  for (std::size_t i = 0; i < good.size(); ++i) {
    if (!good[i]) bad.push_back(static_cast<std::int64_t>(i) + 1);
  }
  Claim c{"closed-form-sum", Json::object(), bad.empty(), nullptr};
  c.params["p"] = ctx.cfg.p;
  c.params["a"] = ctx.cfg.a;
  c.params["n_range"] = "1.." + std::to_string(n_max);
  if (!bad.empty()) c.witness = Json{{"failing_n", detail::to_json(bad)}};
  rep.claims.push_back(std::move(c));
  return rep;
}

inline Report verify_taylor(const Context& ctx) {
  const std::int64_t n_max = n_max_or(ctx.cfg, 60);
  Report rep;
  rep.config = config_json(ctx.cfg, n_max);
  const BigInt& a = ctx.a;

  std::vector<Prime> primes;
  if (ctx.cfg.p_given) {
    if (mpz_divisible_ui_p(a.get_mpz_t(), ctx.cfg.p)) throw ConfigError("a must not be a multiple of p");
    primes.push_back(*ctx.p);
  } else {
    for (std::uint64_t q : {2U, 3U, 5U}) {
      if (!mpz_divisible_ui_p(a.get_mpz_t(), q)) primes.emplace_back(q);
    }
  }

  std::vector<IntPolynomial> polys(static_cast<std::size_t>(n_max));
  parallel_for(polys.size(), ctx.jobs, [&](std::size_t i) {
    polys[i] = clearing_polynomial(a, static_cast<std::int64_t>(i) + 1);
  });

  std::vector<std::int64_t> low;
  std::int64_t min_excess = -1;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto n = static_cast<std::int64_t>(i) + 1;
    const Valuation order = vanishing_order(polys[i]);
    if (order < Valuation(n + 1)) low.push_back(n);
    if (order.is_finite()) {
      const std::int64_t excess = order.value() - (n + 1);
      min_excess = (min_excess < 0 || excess < min_excess) ? excess : min_excess;
    }
  }
  Claim vanish{"taylor-vanishing", Json::object(), low.empty(), Json::object()};
  vanish.params["a"] = ctx.cfg.a;
  vanish.params["n_range"] = "1.." + std::to_string(n_max);
  vanish.witness["min_multiplicity_minus_n_plus_1"] = min_excess;
  if (!low.empty()) vanish.witness["failing_n"] = detail::to_json(low);
  rep.claims.push_back(std::move(vanish));

  for (const Prime& q : primes) {
    const SeriesParams params(q, a);
    PrefixSumStream stream(params);
    const BigRational x(q.big());
    std::vector<std::int64_t> bad;
    for (std::size_t i = 0; i < polys.size(); ++i) {
      const auto n = static_cast<std::int64_t>(i) + 1;
      const auto e = static_cast<unsigned long>(n);
      const BigRational scale(ipow(a, e) * ipow(params.complement(), e) * lcm_upto(n));
      if (eval_polynomial(polys[i], x) / scale != stream.next().value) bad.push_back(n);
    }
    Claim ev{"clearing-polynomial-evaluation", Json::object(), bad.empty(), nullptr};
    ev.params["p"] = q.value();
    ev.params["a"] = ctx.cfg.a;
    ev.params["n_range"] = "1.." + std::to_string(n_max);
    if (!bad.empty()) ev.witness = Json{{"failing_n", detail::to_json(bad)}};
    rep.claims.push_back(std::move(ev));
  }
  return rep;
}

inline Report verify_theorem2(const Context& ctx) {
  const std::int64_t n_max = n_max_or(ctx.cfg, 100);
  Report rep;
  rep.config = config_json(ctx.cfg, n_max);
  const SeriesOracle oracle(*ctx.params);
  std::vector<Valuation> nus;
  for (const auto& s : prefix_sums(*ctx.params, n_max)) nus.push_back(val_p(s.value, *ctx.p));
  const auto violations = check_theorem2_prefix(oracle, std::span<const Valuation>(nus), n_max, ctx.jobs);

  Claim sandwich{"tail-min-sandwich", Json::object(), violations.empty(), nullptr};
  sandwich.params["p"] = ctx.cfg.p;
  sandwich.params["a"] = ctx.cfg.a;
  sandwich.params["n_range"] = "1.." + std::to_string(n_max);
  if (!violations.empty()) sandwich.witness = Json{{"violations", detail::violations_json(violations)}};
  rep.claims.push_back(std::move(sandwich));

  std::vector<char> stable(static_cast<std::size_t>(n_max));
  parallel_for(stable.size(), ctx.jobs, [&](std::size_t i) {
    const auto n = static_cast<std::int64_t>(i) + 1;
    try {
      const TailMin base = tail_min(oracle, n);
      const TailMin wide = tail_min(oracle, n, {2, 1'000'000});
      stable[i] = base.min == wide.min && base.witness == wide.witness;
    } catch (const ContractViolation&) {
      stable[i] = 0;
    }
  });
  std::vector<std::int64_t> unstable;
  for (std::size_t i = 0; i < stable.size(); ++i) {
    if (!stable[i]) unstable.push_back(static_cast<std::int64_t>(i) + 1);
  }
  Claim window{"tail-min-window", Json::object(), unstable.empty(), nullptr};
  window.params["p"] = ctx.cfg.p;
  window.params["a"] = ctx.cfg.a;
  window.params["widen"] = 2;
  if (!unstable.empty()) window.witness = Json{{"failing_n", detail::to_json(unstable)}};
  rep.claims.push_back(std::move(window));
  return rep;
}

inline Report verify_eqint(const Context& ctx) {
  const std::int64_t n_max = n_max_or(ctx.cfg, 1000);
  Report rep;
  rep.config = config_json(ctx.cfg, n_max);
  const DyadicRun run = dubickas_corollary(n_max);
  std::vector<std::int64_t> predicted;
  for (std::int64_t m = 2; m - 1 <= n_max; m *= 2) predicted.push_back(m - 1);
  Claim c{"dyadic-corollary", Json::object(), run.ok() && run.equality_set == predicted, Json::object()};
  c.params["n_range"] = "1.." + std::to_string(n_max);
  c.witness["equality_set"] = detail::to_json(run.equality_set);
  if (!run.ok()) c.witness["violations"] = detail::violations_json(run.violations);
  rep.claims.push_back(std::move(c));
  return rep;
}

inline Report verify_functional(const Context& ctx) {
  Report rep;
  rep.config = config_json(ctx.cfg, 0);
  const Prime& p = *ctx.p;
  std::mt19937_64 rng(ctx.cfg.seed);
  const BigRational pr(p.big());
  std::int64_t failures = 0;
  Json first = nullptr;
  for (std::int64_t i = 0; i < ctx.cfg.samples; ++i) {
    const BigRational u = BigRational(1) + pr * detail::random_rational(rng, p.value());
    const BigRational v = BigRational(1) + pr * detail::random_rational(rng, p.value());
    if (!verify_functional_eq(u, v, p, ctx.cfg.precision)) {
      ++failures;
      if (first.is_null()) first = Json{{"u", u.str()}, {"v", v.str()}};
    }
  }
  Claim c{"log-functional-equation", Json::object(), failures == 0, first};
  c.params["p"] = ctx.cfg.p;
  c.params["precision"] = ctx.cfg.precision;
  c.params["samples"] = ctx.cfg.samples;
  c.params["seed"] = ctx.cfg.seed;
  rep.claims.push_back(std::move(c));
  return rep;
}

inline Json certificate_json(const Eq14Certificate& cert) {
  Json w = Json::object();
  w["n0"] = cert.n0;
  w["threshold"] = cert.threshold;
  w["horizon"] = cert.horizon;
  w["series_limit"] = cert.series_limit.str();
  w["product_is_one"] = cert.product_is_one;
  w["n0_kind"] = "empirical";
  if (!cert.violations.empty()) w["failing_n"] = detail::to_json(cert.violations);
  return w;
}

inline Report verify_eq14_cmd(const Context& ctx) {
  Report rep;
  rep.config = config_json(ctx.cfg, 0);
  const Eq14Certificate cert = verify_eq14(*ctx.params, ctx.cfg.precision, ctx.cfg.window);
  Claim c{"log-series-vanishing", Json::object(), cert.ok(), certificate_json(cert)};
  c.params["p"] = ctx.cfg.p;
  c.params["a"] = ctx.cfg.a;
  c.params["precision"] = ctx.cfg.precision;
  c.params["window"] = ctx.cfg.window;
  rep.claims.push_back(std::move(c));
  return rep;
}

inline Report cmd_padic_log(const Context& ctx) {
  Report rep;
  rep.config = config_json(ctx.cfg, 0);
  const Prime& p = *ctx.p;
  const std::int64_t N = ctx.cfg.precision;
  const BigRational pr(p.big());

  auto log_claim = [&](const std::string& label, const BigRational& x) {
    const LogArgument arg(x, p);
    const TruncatedPadic exact = log1m(arg, N);
    const TruncatedPadic residue = log1m_residue(arg, N);
    Claim c{"log-series-value", Json::object(), exact == residue, Json::object()};
    c.params["x"] = label;
    c.params["precision"] = N;
    c.witness["residue"] = exact.residue().get_str();
    if (arg.valuation().is_finite()) {
      c.witness["terms"] = truncation_index(p, arg.valuation().value(), N);
    }
    if (!(exact == residue)) c.witness["residue_route"] = residue.residue().get_str();
    rep.claims.push_back(std::move(c));
    return exact;
  };

  if (!ctx.cfg.x.empty()) {
    BigRational x;
    try {
      x = BigRational::parse(ctx.cfg.x);
      LogArgument check(x, p);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    log_claim(x.str(), x);
  }

  const BigRational a(ctx.params->a());
  const BigRational b(ctx.params->complement());
  const TruncatedPadic la = log_claim((pr / a).str(), pr / a);
  const TruncatedPadic lb = log_claim((pr / b).str(), pr / b);
  const Eq14Certificate cert = verify_eq14(*ctx.params, N, ctx.cfg.window);
  Claim sum{"log-series-vanishing", Json::object(), (la + lb).is_zero() && cert.ok(), certificate_json(cert)};
  sum.params["p"] = ctx.cfg.p;
  sum.params["a"] = ctx.cfg.a;
  sum.params["precision"] = N;
  rep.claims.push_back(std::move(sum));
  return rep;
}

inline Report dispatch(const Context& ctx) {
  const auto& cmd = ctx.cfg.command;
  if (cmd == "sum") return cmd_sum(ctx);
  if (cmd == "scan-equality") return cmd_scan_equality(ctx);
  if (cmd == "padic-log") return cmd_padic_log(ctx);
  const auto& check = ctx.cfg.check;
  if (check == "mansour") return verify_mansour(ctx);
  if (check == "lcm-binom") return verify_lcm_binom_cmd(ctx);
  if (check == "identity11") return verify_identity11(ctx);
  if (check == "taylor") return verify_taylor(ctx);
  if (check == "theorem2") return verify_theorem2(ctx);
  if (check == "eqint") return verify_eqint(ctx);
  if (check == "functional-eq") return verify_functional(ctx);
  if (check == "eq14") return verify_eq14_cmd(ctx);
  throw ConfigError("unknown check '" + check + "'");
}

/// Parses argv, runs the selected command and writes the report.
/// Returns 0 when every claim holds, 1 when one is violated, 2 on usage errors.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact p-adic valuation checks for sums of (1/a^k + 1/(p-a)^k) p^k / k", "padicval"};
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "prime p (< 2^64)")->envname("PADICVAL_P");
    sub->add_option("--a", cfg.a, "integer a not divisible by p")->envname("PADICVAL_A");
    sub->add_option("--n-max", cfg.n_max, "largest n scanned")->envname("PADICVAL_N_MAX");
    sub->add_option("--precision", cfg.precision, "p-adic precision N")->envname("PADICVAL_PRECISION");
    sub->add_option("--format", cfg.format, "output format")
        ->envname("PADICVAL_FORMAT")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    sub->add_option("--seed", cfg.seed, "seed for random sampling")->envname("PADICVAL_SEED");
    sub->add_option("--samples", cfg.samples, "number of random samples")->envname("PADICVAL_SAMPLES");
    sub->add_option("--window", cfg.window, "extra indices scanned past the threshold")->envname("PADICVAL_WINDOW");
    sub->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)")->envname("PADICVAL_JOBS");
  };

  auto* sum = app.add_subcommand("sum", "prefix sums s_n with valuation and bound verdicts");
  auto* verify = app.add_subcommand("verify", "run one identity or theorem check");
  auto* scan = app.add_subcommand("scan-equality", "indices n where the valuation bound is tight");
  auto* plog = app.add_subcommand("padic-log", "truncated p-adic logarithms and the vanishing series");
  for (auto* sub : {sum, verify, scan, plog}) add_common(sub);
  verify->add_option("check", cfg.check, "which check")
      ->required()
      ->check(CLI::IsMember(
          {"mansour", "lcm-binom", "identity11", "taylor", "theorem2", "eqint", "functional-eq", "eq14"}));
  plog->add_option("--x", cfg.x, "extra argument x (v_p(x) >= 1) for -L_p(1-x)")->envname("PADICVAL_X");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  for (auto* sub : {sum, verify, scan, plog}) {
    if (sub->parsed()) {
      cfg.command = sub->get_name();
      cfg.p_given = sub->count("--p") > 0;
    }
  }

  try {
    const Context ctx = validate(cfg);
    const Report rep = dispatch(ctx);
    detail::emit(rep, cfg.format, out);
    return rep.ok() ? kOk : kClaimViolated;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kClaimViolated;
  }
}

}  // namespace padicval::cli
