#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "bessel_lab/bessel_functions.hpp"
#include "bessel_lab/bigreal.hpp"

namespace bessel_lab {

struct QuadratureNode {
  BigReal x;
  BigReal weight;  // Jacobian only; the step h is applied by the caller
};

// Largest |s| kept by the tanh-sinh rule at this precision.
double tanh_sinh_max_abscissa(mpfr_prec_t prec);

// Step of a level: h = 2^-level.
BigReal tanh_sinh_step(int level, mpfr_prec_t prec);

// Nodes first used at `level` for x = (a+b)/2 + (b-a)/2 tanh(pi/2 sinh s):
// every integer s at level 0, odd multiples of 2^-level afterwards.
std::vector<QuadratureNode> tanh_sinh_level(const BigReal& a, const BigReal& b, int level, mpfr_prec_t prec);

struct QuadratureResult {
  BigReal value;
  BigReal error_estimate;
  int level = 0;
};

// Scalar adaptive tanh-sinh; refines until two successive levels agree to
// 10^-target_digits relative. Throws ConvergenceError past max_level.
QuadratureResult tanh_sinh(const std::function<BigReal(const BigReal&)>& f, const BigReal& a, const BigReal& b,
                           mpfr_prec_t prec, int target_digits, int max_level = 12);

struct BesselNode {
  BigReal t;
  BigReal weight;
  BesselValues bessel;
  std::optional<BesselSmallArg> small;  // only for nodes with t <= 1
};

// Tanh-sinh nodes on [a, b] with I0 and K0 attached. Tables are shared
// process-wide per (a, b, precision) and grow one level at a time.
class BesselNodeTable {
 public:
  static std::shared_ptr<BesselNodeTable> get(long a, long b, mpfr_prec_t prec);

  BesselNodeTable(long a, long b, mpfr_prec_t prec) : a_(a), b_(b), prec_(prec) {}

  const std::vector<BesselNode>& level(int m);
  long a() const { return a_; }
  long b() const { return b_; }
  mpfr_prec_t precision() const { return prec_; }

  // Drops every cached table (tests and benchmarks).
  static void clear_all();

 private:
  long a_;
  long b_;
  mpfr_prec_t prec_;
  std::mutex mutex_;
  std::deque<std::vector<BesselNode>> levels_;
};

// Segment boundaries 0, 1, 4, 16, 64, then every 64, up to the first one >= end.
std::vector<long> quadrature_breakpoints(double end);

}  // namespace bessel_lab
