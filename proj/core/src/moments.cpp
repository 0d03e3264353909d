#include "bessel_lab/moments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>

#include "bessel_lab/bessel_series.hpp"
#include "bessel_lab/combinatorics.hpp"
#include "bessel_lab/errors.hpp"
#include "bessel_lab/moment_cache.hpp"
#include "bessel_lab/quadrature.hpp"

namespace bessel_lab {

namespace {

constexpr double kLn10 = 2.302585092994046;
constexpr int kMaxLevel = 12;

std::atomic<MomentCache*> g_cache{nullptr};

int k_prime_of(int k) { return (k - 1) / 2; }

void validate(const MomentIntegrand& m) {
  if (m.k < 1) throw DomainError("moment: k must be positive");
  if (m.i < 0 || 2 * m.i > m.k) {
    throw DomainError("moment diverges: need 0 <= 2i <= k (k=" + std::to_string(m.k) + ", i=" + std::to_string(m.i) + ")");
  }
  if (m.poly.empty()) throw DomainError("moment: empty polynomial");
  if (m.log_regularized) {
    if (m.poly.size() != 1 || m.poly.begin()->first != -1 || m.poly.begin()->second != Rational(1)) {
      throw DomainError("log regularization expects the integrand I0^i K0^(k-i) / t");
    }
    if (2 * m.i >= m.k) throw DomainError("log regularization needs 2i < k");
  } else if (m.poly.begin()->first < 0) {
    throw DomainError("moment diverges at 0: t-exponent must be >= 0");
  }
}

// Point where the dropped tail of an exponentially decaying integrand falls
// below 10^-work_digits; for 2i = k, where the asymptotic expansion of the
// integrand is accurate to about exp(-2T).
double required_end(const MomentIntegrand& m, int work_digits) {
  const double target = work_digits * kLn10 + 10.0;
  if (2 * m.i == m.k) return 0.75 * target + 10.0;
  const double rate = m.k - 2 * m.i;
  const double p = std::max(0.0, m.poly.rbegin()->first - m.k / 2.0);
  double t = target / rate;
  for (int it = 0; it < 5; ++it) t = (target + p * std::log(std::max(t, 1.0))) / rate;
  return std::max(t, 1.0);
}

// Decimal digits lost to cancellation between a growing integral and its tail.
int cancellation_digits(const MomentIntegrand& m, double end) {
  if (2 * m.i != m.k) return 0;
  const double p1 = m.poly.rbegin()->first - m.k / 2.0 + 1.0;
  if (p1 <= 0) return 0;
  return static_cast<int>(std::ceil(p1 * std::log10(end)));
}

// Finite part of the tail over [b, inf) for 2i = k, from the exact expansion
// (I0 K0)^(k/2) ~ sum_n F_n 2^(2n-k/2) t^(-k/2-2n).
BigReal asymptotic_tail(const MomentIntegrand& m, long b, mpfr_prec_t prec, int work_digits) {
  const int k = m.k;
  const int e_max = m.poly.rbegin()->first;
  const int half = k / 2;
  std::map<int, Rational> coef;  // power p of t -> exact coefficient
  BigReal total(prec);
  BigReal bb(b, prec);
  BigReal tol = pow(BigReal(10, prec), -work_digits);
  int next_p = e_max - half;  // highest power not yet summed
  int small_run = 0;
  BigReal last_abs(prec);
  bool have_last = false;
  for (int n = 0; n < 4000; ++n) {
    const Rational fn = bessel_power_coefficients(k, n + 1).back();
    const Rational scale = fn * pow2(2 * n - half);
    for (const auto& [e, c] : m.poly) coef[e - half - 2 * n] += c * scale;
    const int complete_down_to = e_max - half - 2 * n;
    for (; next_p >= complete_down_to; --next_p) {
      auto it = coef.find(next_p);
      Rational cp = it == coef.end() ? Rational(0) : it->second;
      if (next_p == -1) {
        if (!cp.is_zero()) throw DomainError("moment has a logarithmic divergence at infinity");
        continue;
      }
      if (cp.is_zero()) continue;
      // integral_b^X c t^p dt, with the X-dependent part dropped
      BigReal term = -(BigReal(cp, prec) * pow(bb, next_p + 1) / BigReal(next_p + 1, prec));
      total += term;
      BigReal a = abs(term);
      if (have_last && a > last_abs && small_run == 0 && next_p < -1) {
        throw ConvergenceError("asymptotic tail diverges before reaching target accuracy; cut-off too small");
      }
      have_last = true;
      last_abs = a;
      BigReal ref = std::max(abs(total), BigReal(1, prec), [](const BigReal& x, const BigReal& y) { return x < y; });
      if (next_p < -1 && a < tol * ref) {
        if (++small_run >= 3) return total;
      } else {
        small_run = 0;
      }
    }
  }
  throw ConvergenceError("asymptotic tail did not converge");
}

// Integrand value at a node for one member of the batch.
struct NodeContext {
  std::vector<BigReal> i0_pow;
  std::vector<BigReal> k0_pow;
  std::map<int, BigReal> t_pow;
};

BigReal log_regularized_value(const MomentIntegrand& m, const BesselNode& node, const NodeContext& ctx) {
  const mpfr_prec_t prec = node.t.precision();
  const int mm = m.k - m.i;
  const auto& s = *node.small;
  BigReal a = -s.log_term;               // K0 = a + delta, a^m = (-1)^m L^m
  BigReal k0 = a + s.delta;
  BigReal one(1, prec);
  // (a+delta)^m - a^m = delta * sum_r a^r (a+delta)^(m-1-r)
  BigReal diff(prec);
  {
    BigReal acc(prec);
    BigReal ap(1, prec);
    for (int r = 0; r < mm; ++r) {
      acc += ap * pow(k0, mm - 1 - r);
      ap *= a;
    }
    diff = s.delta * acc;
  }
  // I0^i - 1 = e * sum_r (1+e)^r
  BigReal i0 = one + s.i0_minus_one;
  BigReal i0m1_pow(prec);
  {
    BigReal acc(prec);
    BigReal p(1, prec);
    for (int r = 0; r < m.i; ++r) {
      acc += p;
      p *= i0;
    }
    i0m1_pow = s.i0_minus_one * acc;
  }
  BigReal i0_pow = one + i0m1_pow;
  BigReal val = i0_pow * diff + i0m1_pow * pow(a, mm);
  (void)ctx;
  return val / node.t;
}

BigReal node_value(const MomentIntegrand& m, const BesselNode& node, const NodeContext& ctx, bool subtract_log) {
  if (subtract_log && node.small) return log_regularized_value(m, node, ctx);
  BigReal poly(node.t.precision());
  for (const auto& [e, c] : m.poly) poly += BigReal(c, node.t.precision()) * ctx.t_pow.at(e);
  return ctx.i0_pow[m.i] * ctx.k0_pow[m.k - m.i] * poly;
}

struct Plan {
  int work_digits = 0;
  int tol_digits = 0;
  mpfr_prec_t prec = 0;
  std::vector<double> ends;
  std::vector<long> breakpoints;
};

Plan make_plan(const std::vector<MomentIntegrand>& batch, int digits, std::optional<long> cut) {
  Plan plan;
  int extra = 0;
  for (int round = 0; round < 3; ++round) {
    plan.work_digits = ((digits + 20 + extra + 9) / 10) * 10;
    double end = 1.0;
    plan.ends.clear();
    for (const auto& m : batch) {
      plan.ends.push_back(required_end(m, plan.work_digits));
      end = std::max(end, plan.ends.back());
    }
    plan.breakpoints = quadrature_breakpoints(end);
    int new_extra = 0;
    for (const auto& m : batch) new_extra = std::max(new_extra, cancellation_digits(m, plan.breakpoints.back()));
    if (new_extra <= extra) break;
    extra = new_extra;
  }
  plan.tol_digits = digits + 10 + extra;
  plan.prec = bits_for_digits(plan.work_digits);
  if (cut) {
    auto& bp = plan.breakpoints;
    if (*cut > 0 && *cut < bp.back() && std::find(bp.begin(), bp.end(), *cut) == bp.end()) {
      bp.insert(std::upper_bound(bp.begin(), bp.end(), *cut), *cut);
    }
  }
  return plan;
}

std::vector<MomentValue> integrate_batch(const std::vector<MomentIntegrand>& batch, int digits,
                                         std::optional<long> cut = std::nullopt,
                                         std::optional<long> hard_end = std::nullopt) {
  for (const auto& m : batch) validate(m);
  Plan plan = make_plan(batch, digits, cut);
  if (hard_end) {
    plan.breakpoints = quadrature_breakpoints(static_cast<double>(*hard_end));
    plan.breakpoints.back() = *hard_end;
    if (plan.breakpoints.size() >= 2 && plan.breakpoints[plan.breakpoints.size() - 2] >= *hard_end) {
      plan.breakpoints.erase(plan.breakpoints.end() - 2);
    }
  }
  const mpfr_prec_t prec = plan.prec;
  const size_t n = batch.size();

  int max_i = 0, max_kmi = 0;
  std::set<int> exps;
  for (const auto& m : batch) {
    max_i = std::max(max_i, m.i);
    max_kmi = std::max(max_kmi, m.k - m.i);
    for (const auto& [e, c] : m.poly) exps.insert(e);
  }

  std::vector<BigReal> total(n, BigReal(prec));
  std::vector<BigReal> abs_total(n, BigReal(prec));
  std::vector<BigReal> err_total(n, BigReal(prec));
  const BigReal tol = pow(BigReal(10, prec), -plan.tol_digits);

  for (size_t seg = 0; seg + 1 < plan.breakpoints.size(); ++seg) {
    const long a = plan.breakpoints[seg];
    const long b = plan.breakpoints[seg + 1];
    std::vector<size_t> active;
    for (size_t c = 0; c < n; ++c)
      if (hard_end || 2 * batch[c].i == batch[c].k || plan.ends[c] > static_cast<double>(a)) active.push_back(c);
    if (active.empty()) continue;
    auto table = BesselNodeTable::get(a, b, prec);
    std::vector<BigReal> sums(n, BigReal(prec)), est(n, BigReal(prec)), prev(n, BigReal(prec)), err(n, BigReal(prec));
    bool converged = false;
    for (int level = 0; level <= kMaxLevel && !converged; ++level) {
      for (const auto& node : table->level(level)) {
        NodeContext ctx;
        ctx.i0_pow.assign(max_i + 1, BigReal(1, prec));
        ctx.k0_pow.assign(max_kmi + 1, BigReal(1, prec));
        for (int p = 1; p <= max_i; ++p) ctx.i0_pow[p] = ctx.i0_pow[p - 1] * node.bessel.i0;
        for (int p = 1; p <= max_kmi; ++p) ctx.k0_pow[p] = ctx.k0_pow[p - 1] * node.bessel.k0;
        for (int e : exps) ctx.t_pow.emplace(e, pow(node.t, e));
        for (size_t c : active) sums[c] += node_value(batch[c], node, ctx, batch[c].log_regularized) * node.weight;
      }
      const BigReal h = tanh_sinh_step(level, prec);
      converged = level >= 3;
      for (size_t c : active) {
        est[c] = sums[c] * h;
        err[c] = abs(est[c] - prev[c]);
        BigReal scale = std::max(abs(est[c]), abs_total[c], [](const BigReal& x, const BigReal& y) { return x < y; });
        if (level >= 3 && !(err[c] <= tol * scale || scale.is_zero())) converged = false;
        prev[c] = est[c];
      }
    }
    for (size_t c : active) {
      total[c] += est[c];
      abs_total[c] += abs(est[c]);
      err_total[c] += err[c];
    }
  }

  std::vector<MomentValue> out;
  out.reserve(n);
  for (size_t c = 0; c < n; ++c) {
    const auto& m = batch[c];
    BigReal value = total[c];
    if (2 * m.i == m.k && !hard_end) value += asymptotic_tail(m, plan.breakpoints.back(), prec, plan.work_digits);
    if (m.log_regularized) {
      // (-1)^m (gamma - log 2)^(m+1) / (m+1), the exact part of the subtraction on (0, 1]
      const int mm = m.k - m.i;
      BigReal l0 = const_euler(prec) - log(BigReal(2, prec));
      BigReal extra = pow(l0, mm + 1) / BigReal(mm + 1, prec);
      value += (mm % 2 == 0) ? extra : -extra;
    }
    int cert = digits;
    if (!value.is_zero() && !err_total[c].is_zero()) {
      double d = neg_log10(err_total[c] / value);
      cert = std::min(digits, static_cast<int>(std::floor(d)));
    }
    out.push_back({value.with_precision(bits_for_digits(digits + 5)), std::max(cert, 0)});
  }
  return out;
}

}  // namespace

std::string to_string(MomentKind kind) {
  switch (kind) {
    case MomentKind::kIkm: return "ikm";
    case MomentKind::kRegMinus1: return "ikm_reg_minus1";
    case MomentKind::kRegHalf: return "ikm_reg_half";
    case MomentKind::kCp: return "ikm_cp";
  }
  return "?";
}

MomentKind moment_kind_from_string(const std::string& s) {
  if (s == "ikm") return MomentKind::kIkm;
  if (s == "ikm_reg_minus1") return MomentKind::kRegMinus1;
  if (s == "ikm_reg_half") return MomentKind::kRegHalf;
  if (s == "ikm_cp") return MomentKind::kCp;
  throw DomainError("unknown moment kind '" + s + "'");
}

MomentIntegrand ikm_integrand(int k, int i, int c) {
  MomentIntegrand m{k, i, {{c, Rational(1)}}, false, MomentKey{MomentKind::kIkm, k, i, c}};
  if (c < 0) throw DomainError("ikm: t-exponent must be >= 0");
  if (2 * i == k && c - k / 2 >= -1) {
    throw DomainError("ikm diverges at infinity for i = k/2 and c = " + std::to_string(c) + "; use ikm_reg_half");
  }
  validate(m);
  return m;
}

MomentIntegrand reg_minus1_integrand(int k, int i) {
  if (i < 1 || i > k_prime_of(k)) throw DomainError("ikm_reg_minus1: i must lie in [1, k']");
  return {k, i, {{-1, Rational(1)}}, true, MomentKey{MomentKind::kRegMinus1, k, i, -1}};
}

MomentIntegrand reg_half_integrand(int k, int j) {
  if (k % 2 != 0 || k < 2) throw DomainError("ikm_reg_half needs even k");
  if (j <= k / 4 || j > k_prime_of(k)) {
    throw DomainError("ikm_reg_half: j=" + std::to_string(j) + " outside the divergent range; use ikm");
  }
  MomentIntegrand m{k, k / 2, {{2 * j - 1, Rational(1)}}, false, MomentKey{MomentKind::kRegHalf, k, k / 2, 2 * j - 1}};
  if (k % 4 == 0) m.poly[k_prime_of(k)] -= gamma_constant(k, j) * pow2(2 * j - k / 2);
  return m;
}

MomentIntegrand cp_integrand(int k, int i, int j) {
  if (k % 2 != 0) throw DomainError("ikm_cp needs even k");
  const int kp = k_prime_of(k);
  if (j < 1 || j > kp || i < 0 || i > k / 2) throw DomainError("ikm_cp: index out of range");
  if (i == k / 2 && j > k / 4) {
    MomentIntegrand m = reg_half_integrand(k, j);
    m.key = MomentKey{MomentKind::kCp, k, i, 2 * j - 1};
    return m;
  }
  MomentIntegrand m{k, i, {{2 * j - 1, Rational(1)}}, false, MomentKey{MomentKind::kCp, k, i, 2 * j - 1}};
  if (k % 4 == 0 && i <= kp) m.poly[kp] -= gamma_constant(k, j) * pow2(2 * j - k / 2);
  if (m.poly[kp].is_zero()) m.poly.erase(kp);
  if (2 * i == k) {
    for (const auto& [e, c] : m.poly)
      if (e - k / 2 >= -1) throw DomainError("ikm_cp: divergent combination");
  }
  validate(m);
  return m;
}

std::vector<MomentValue> evaluate_moments(const std::vector<MomentIntegrand>& batch, int digits) {
  if (digits < 5) throw DomainError("digits must be at least 5");
  MomentCache* cache = g_cache.load();
  std::vector<std::optional<MomentValue>> found(batch.size());
  std::vector<MomentIntegrand> todo;
  std::vector<size_t> todo_index;
  for (size_t c = 0; c < batch.size(); ++c) {
    if (cache && batch[c].key) found[c] = cache->lookup(*batch[c].key, digits);
    if (!found[c]) {
      todo.push_back(batch[c]);
      todo_index.push_back(c);
    }
  }
  if (!todo.empty()) {
    auto values = integrate_batch(todo, digits);
    for (size_t t = 0; t < todo.size(); ++t) {
      if (values[t].certified_digits < digits) {
        throw ConvergenceError("moment certified to only " + std::to_string(values[t].certified_digits) + " of " +
                               std::to_string(digits) + " digits");
      }
      if (cache && todo[t].key) cache->store(*todo[t].key, digits, values[t]);
      found[todo_index[t]] = std::move(values[t]);
    }
  }
  std::vector<MomentValue> out;
  out.reserve(batch.size());
  for (auto& f : found) out.push_back(std::move(*f));
  return out;
}

MomentValue ikm(int k, int i, int c, int digits) { return evaluate_moments({ikm_integrand(k, i, c)}, digits)[0]; }

MomentValue ikm_reg_minus1(int k, int i, int digits) {
  return evaluate_moments({reg_minus1_integrand(k, i)}, digits)[0];
}

MomentValue ikm_reg_half(int k, int j, int digits) { return evaluate_moments({reg_half_integrand(k, j)}, digits)[0]; }

MomentValue ikm_cp(int k, int i, int j, int digits) { return evaluate_moments({cp_integrand(k, i, j)}, digits)[0]; }

MomentValue evaluate_moment_with_cut(const MomentIntegrand& m, long cut, int digits) {
  return integrate_batch({m}, digits, cut)[0];
}

BigReal reg_half_counterterm_form(int k, int j, long cutoff, int digits) {
  MomentIntegrand m = reg_half_integrand(k, j);
  MomentValue body = integrate_batch({m}, digits, std::nullopt, cutoff)[0];
  const mpfr_prec_t prec = bits_for_digits(digits + 30);
  BigReal h = body.value.with_precision(prec);
  BigReal x(cutoff, prec);
  BigReal four_eps2 = BigReal(4, prec) / (x * x);  // 4 eps^2 with eps = 1/cutoff
  BigReal pref = mul_2exp(BigReal(1, prec), -(k - 2 * j + 1));
  BigReal ct(prec);
  if (k % 4 == 0) {
    for (int n = 1; n <= j; ++n) {
      Rational g = gamma_constant(k, j - n);
      if (g.is_zero()) continue;
      ct += BigReal(g, prec) / (BigReal(n, prec) * pow(four_eps2, n));
    }
  } else {
    for (int n = 0; n <= j; ++n) {
      Rational g = gamma_prime_or_zero(k, Rational(2 * (j - n) - 1, 2));
      if (g.is_zero()) continue;
      ct += BigReal(g, prec) / (BigReal(2 * n + 1, prec) * pow(four_eps2, n));
    }
    ct *= x;
  }
  return h - pref * ct;
}

void set_moment_cache(MomentCache* cache) { g_cache.store(cache); }
MomentCache* moment_cache() { return g_cache.load(); }

}  // namespace bessel_lab
