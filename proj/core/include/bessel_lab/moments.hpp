#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bessel_lab/bigreal.hpp"
#include "bessel_lab/rational.hpp"

namespace bessel_lab {

enum class MomentKind { kIkm, kRegMinus1, kRegHalf, kCp };

std::string to_string(MomentKind kind);
MomentKind moment_kind_from_string(const std::string& s);

struct MomentKey {
  MomentKind kind = MomentKind::kIkm;
  int k = 0;
  int i = 0;
  int c = 0;  // t-exponent: 2j-1 for the half and cp kinds, -1 for reg_minus1

  friend auto operator<=>(const MomentKey&, const MomentKey&) = default;
};

// Finite part of the integral over (0, inf) of I0^i K0^(k-i) sum_e c_e t^e.
// With log_regularized the integrand is I0^i K0^(k-i) / t and the
// log^(k-i+1) divergence at 0 is removed as in the regularized moments.
struct MomentIntegrand {
  int k = 0;
  int i = 0;
  std::map<int, Rational> poly;
  bool log_regularized = false;
  std::optional<MomentKey> key;  // consulted in the moment cache when set
};

struct MomentValue {
  BigReal value;
  int certified_digits = 0;
};

// Integrands of the four moment families. The cp and half variants use the
// normalization IKM = (-1)^(k-i) 2^(k-2j+1) (pi i)^i * value, so that
// ikm_cp(k, i, j) = int I0^i K0^(k-i) (t^(2j-1) - gamma_(k,j) 2^(2j-k/2) t^k').
MomentIntegrand ikm_integrand(int k, int i, int c);
MomentIntegrand reg_minus1_integrand(int k, int i);
MomentIntegrand reg_half_integrand(int k, int j);
MomentIntegrand cp_integrand(int k, int i, int j);

// Evaluates a batch sharing one set of quadrature nodes. Throws
// ConvergenceError if any member cannot be certified to `digits`.
std::vector<MomentValue> evaluate_moments(const std::vector<MomentIntegrand>& batch, int digits);

MomentValue ikm(int k, int i, int c, int digits);
MomentValue ikm_reg_minus1(int k, int i, int digits);
MomentValue ikm_reg_half(int k, int j, int digits);
MomentValue ikm_cp(int k, int i, int j, int digits);

// H_(k,j)(eps) at eps = 1/cutoff: the truncated integral minus the closed-form
// counterterms. Tends to ikm_reg_half as cutoff grows.
BigReal reg_half_counterterm_form(int k, int j, long cutoff, int digits);

// Same integrand with every quadrature segment split at `cut` as well; used
// to cross-check segment independence.
MomentValue evaluate_moment_with_cut(const MomentIntegrand& m, long cut, int digits);

class MomentCache;
// Process-wide cache consulted by evaluate_moments; nullptr disables it.
void set_moment_cache(MomentCache* cache);
MomentCache* moment_cache();

}  // namespace bessel_lab
