#include <gtest/gtest.h>

#include "bessel_lab/moments.hpp"
#include "bessel_lab/verifier.hpp"

using namespace bessel_lab;

TEST(Recognize, SimpleFractionsAndTranscendentals) {
  const mpfr_prec_t prec = bits_for_digits(40);
  auto half = rational_recognize(BigReal(Rational(1, 2), prec), BigInt(1000), 35);
  ASSERT_TRUE(half.has_value());
  EXPECT_EQ(*half, Rational(1, 2));
  auto q = rational_recognize(BigReal(Rational(-208, 3375), prec), BigInt(10000), 35);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, Rational(-208, 3375));
  EXPECT_FALSE(rational_recognize(const_pi(prec), BigInt(100000), 35).has_value());
}

TEST(Recognize, DetAOverPiFourth) {
  const int digits = 40;
  std::vector<MomentIntegrand> batch;
  for (int i : {2, 3}) {
    batch.push_back(ikm_integrand(8, i, 1));
    MomentIntegrand m;
    m.k = 8;
    m.i = i;
    m.poly = {{5, Rational(2)}, {3, Rational(-1)}};
    batch.push_back(m);
  }
  auto v = evaluate_moments(batch, digits);
  BigReal det = v[0].value * v[3].value - v[1].value * v[2].value;
  BigReal pi = const_pi(det.precision());
  auto r = rational_recognize(det / pow(pi, 4), BigInt(100000), digits - 2);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, Rational(5, 6144));
}

TEST(Verifier, AllChecksPassSmallK) {
  for (int k = 3; k <= 10; ++k)
    for (const auto& name : verification_names()) {
      if (name == "reg_examples" || !verification_applies(name, k)) continue;
      VerificationReport r = run_verification(name, k, 30);
      EXPECT_TRUE(r.passed) << name << " k=" << k << " residual " << r.residual.to_string(5) << " "
                            << r.details.dump();
    }
  EXPECT_TRUE(verify_reg_examples(30).passed);
}

TEST(Verifier, SumRuleIndices) {
  EXPECT_EQ(sum_rule_indices(6), (std::vector<int>{1, 2}));
  EXPECT_EQ(sum_rule_indices(10), (std::vector<int>{1, 2, 3, 4}));
  // 4 | k drops j = k/4.
  EXPECT_EQ(sum_rule_indices(8), (std::vector<int>{1, 3}));
  EXPECT_EQ(sum_rule_indices(12), (std::vector<int>{1, 2, 4, 5}));
  EXPECT_FALSE(verification_applies("sum_rules", 5));
  EXPECT_FALSE(verification_applies("sum_rules", 4));
}

TEST(Verifier, VacuousAtKFour) {
  VerificationReport r = verify_quadratic(4, 30);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.residual.is_zero());
}

TEST(Verifier, ResidualShrinksWithDigits) {
  VerificationReport lo = verify_quadratic(7, 25);
  VerificationReport hi = verify_quadratic(7, 50);
  EXPECT_LT(neg_log10(lo.residual) + 15, neg_log10(hi.residual));
  EXPECT_LT(hi.residual, verification_tolerance(50));
}

TEST(Verifier, ToleranceIsPinned) {
  BigReal t = verification_tolerance(50);
  EXPECT_NEAR(neg_log10(t), 40.0, 1e-9);
}

TEST(Verifier, JsonShape) {
  auto j = to_json_value(verify_det_identities(6, 20));
  EXPECT_EQ(j["name"], "det");
  EXPECT_EQ(j["k"], 6);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_TRUE(j.contains("residual"));
  EXPECT_TRUE(j.contains("tolerance"));
}

TEST(Verifier, ParallelRunIsSortedAndComplete) {
  auto reports = run_verifications({5, 6, 7}, 20, {"quadratic", "det", "reg_examples"}, 3);
  ASSERT_EQ(reports.size(), 7u);
  for (size_t n = 1; n < reports.size(); ++n) {
    const auto& a = reports[n - 1];
    const auto& b = reports[n];
    EXPECT_TRUE(a.name < b.name || (a.name == b.name && a.k < b.k));
  }
  for (const auto& r : reports) EXPECT_TRUE(r.passed) << r.name << " " << r.k;
  auto single = run_verifications({5, 6, 7}, 20, {"quadratic", "det", "reg_examples"}, 1);
  ASSERT_EQ(single.size(), reports.size());
  for (size_t n = 0; n < single.size(); ++n) EXPECT_EQ(single[n].residual, reports[n].residual);
}
