#include "bessel_lab/quadrature.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "bessel_lab/errors.hpp"

namespace bessel_lab {

namespace {

std::mutex g_tables_mutex;
std::map<std::tuple<long, long, mpfr_prec_t>, std::shared_ptr<BesselNodeTable>> g_tables;

QuadratureNode make_node(const BigReal& a, const BigReal& b, const BigReal& s, const BigReal& half_pi) {
  const mpfr_prec_t prec = s.precision();
  BigReal sh(prec), ch(prec);
  mpfr_sinh_cosh(sh.raw(), ch.raw(), s.raw(), MPFR_RNDN);
  BigReal u = half_pi * sh;
  // E = exp(-2|u|); distance to the nearer endpoint is (b-a) E / (1+E).
  BigReal e = exp(mul_2exp(-abs(u), 1));
  BigReal one(1, prec);
  BigReal onep = one + e;
  BigReal len = b - a;
  BigReal dist = len * e / onep;
  BigReal x = u.sign() < 0 ? a + dist : b - dist;
  // dx/ds = (b-a)/2 * (pi/2) cosh(s) * sech^2(u), sech^2(u) = 4E/(1+E)^2
  BigReal w = mul_2exp(len * half_pi * ch * e / (onep * onep), 1);
  return {std::move(x), std::move(w)};
}

}  // namespace

double tanh_sinh_max_abscissa(mpfr_prec_t prec) {
  // exp(-pi sinh s) below 2^-(prec + 160) leaves room for log^m t growth.
  return std::asinh((static_cast<double>(prec) + 160.0) * 0.6931471805599453 / 3.141592653589793);
}

BigReal tanh_sinh_step(int level, mpfr_prec_t prec) { return mul_2exp(BigReal(1, prec), -level); }

std::vector<QuadratureNode> tanh_sinh_level(const BigReal& a, const BigReal& b, int level, mpfr_prec_t prec) {
  const double smax = tanh_sinh_max_abscissa(prec);
  const BigReal half_pi = mul_2exp(const_pi(prec), -1);
  std::vector<QuadratureNode> out;
  const long scale = 1L << level;
  const long jmax = static_cast<long>(std::floor(smax * static_cast<double>(scale)));
  for (long j = -jmax; j <= jmax; ++j) {
    if (level > 0 && (j % 2 == 0)) continue;
    BigReal s = mul_2exp(BigReal(j, prec), -level);
    out.push_back(make_node(a.with_precision(prec), b.with_precision(prec), s, half_pi));
  }
  return out;
}

QuadratureResult tanh_sinh(const std::function<BigReal(const BigReal&)>& f, const BigReal& a, const BigReal& b,
                           mpfr_prec_t prec, int target_digits, int max_level) {
  BigReal sum(prec);
  BigReal prev(prec);
  BigReal tol = pow(BigReal(10, prec), -target_digits);
  for (int level = 0; level <= max_level; ++level) {
    for (const auto& node : tanh_sinh_level(a, b, level, prec)) sum += f(node.x) * node.weight;
    BigReal estimate = sum * tanh_sinh_step(level, prec);
    if (level >= 3) {
      BigReal err = abs(estimate - prev);
      if (err <= tol * abs(estimate) || estimate.is_zero()) return {estimate, err, level};
    }
    prev = estimate;
  }
  throw ConvergenceError("tanh-sinh did not converge within " + std::to_string(max_level) + " levels");
}

std::shared_ptr<BesselNodeTable> BesselNodeTable::get(long a, long b, mpfr_prec_t prec) {
  std::lock_guard lock(g_tables_mutex);
  auto& slot = g_tables[{a, b, prec}];
  if (!slot) slot = std::make_shared<BesselNodeTable>(a, b, prec);
  return slot;
}

void BesselNodeTable::clear_all() {
  std::lock_guard lock(g_tables_mutex);
  g_tables.clear();
}

const std::vector<BesselNode>& BesselNodeTable::level(int m) {
  std::lock_guard lock(mutex_);
  while (static_cast<int>(levels_.size()) <= m) {
    const int lv = static_cast<int>(levels_.size());
    std::vector<BesselNode> nodes;
    const BigReal one(1, prec_);
    for (auto& q : tanh_sinh_level(BigReal(a_, prec_), BigReal(b_, prec_), lv, prec_)) {
      if (q.x.sign() <= 0) continue;  // underflowed onto the endpoint; weight is negligible there
      BesselNode node{q.x, q.weight, bessel_i0_k0(q.x, prec_), std::nullopt};
      if (q.x <= one) node.small = bessel_small_arg(q.x, prec_);
      nodes.push_back(std::move(node));
    }
    levels_.push_back(std::move(nodes));
  }
  return levels_[m];
}

std::vector<long> quadrature_breakpoints(double end) {
  std::vector<long> pts{0};
  long next = 1;
  while (true) {
    pts.push_back(next);
    if (static_cast<double>(next) >= end) break;
    next = next < 64 ? next * 4 : next + 64;
  }
  return pts;
}

}  // namespace bessel_lab
