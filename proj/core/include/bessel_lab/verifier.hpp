#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bessel_lab/bigreal.hpp"
#include "bessel_lab/rational.hpp"

namespace bessel_lab {

struct VerificationReport {
  std::string name;
  int k = 0;
  int digits = 0;
  BigReal residual;  // relative, or 0 for exact checks that pass
  BigReal tolerance;
  bool passed = false;
  nlohmann::json details = nlohmann::json::object();
};

// 10^-(digits - 10).
BigReal verification_tolerance(int digits);

// (-2 pi i)^(k+1) B^mid = P^mid (S^mid)^-1 tP^mid. Vacuous for k = 4.
VerificationReport verify_quadratic(int k, int digits);
// The same relation on the full matrices P^(rd,mod), S, P^(mod,rd) and the
// Betti pairing on the rows of P^(mod,rd).
VerificationReport verify_full_quadratic(int k, int digits);
// Exact det S, det S^mid and det B^mid against their closed forms; for k = 8
// also det A = 5 pi^4 / 6144 with positive sign.
VerificationReport verify_det_identities(int k, int digits);
// Even k >= 6: sum_i binom(k/2, 2i+1) IKM^cp(2i+1, 2j-1) = 0 over all valid j.
VerificationReport verify_sum_rules(int k, int digits);
// Valid j of the sum rules, in increasing order.
std::vector<int> sum_rule_indices(int k);
// P^BR D tP^BR = B^BR and exact integrality of k! (S^mid)^-1.
VerificationReport verify_br(int k, int digits);
// The regularized k = 3 product identity and the k = 4 identity with pi^4/120.
VerificationReport verify_reg_examples(int digits);
// Every c_n equals pi^a times its determinant, and the determinants agree
// with a recomputation at higher precision.
VerificationReport verify_deligne(int k, int digits);

// Best continued-fraction convergent p/q with q <= max_den and
// |x - p/q| < 10^-(certified_digits - 5).
std::optional<Rational> rational_recognize(const BigReal& x, const BigInt& max_den, int certified_digits);

// Names accepted by run_verifications: quadratic, full_quadratic, det,
// sum_rules, br, reg_examples, deligne.
std::vector<std::string> verification_names();
bool verification_applies(const std::string& name, int k);
VerificationReport run_verification(const std::string& name, int k, int digits);

// Runs every applicable check over ks on `jobs` threads. A check that throws
// yields a failed report carrying the message. Sorted by (name, k).
std::vector<VerificationReport> run_verifications(const std::vector<int>& ks, int digits,
                                                  const std::vector<std::string>& names, int jobs);

nlohmann::json to_json_value(const VerificationReport& r);

}  // namespace bessel_lab
