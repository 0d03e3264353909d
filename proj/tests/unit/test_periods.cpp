#include <gtest/gtest.h>

#include "bessel_lab/betti.hpp"
#include "bessel_lab/combinatorics.hpp"
#include "bessel_lab/derham.hpp"
#include "bessel_lab/moments.hpp"
#include "bessel_lab/periods.hpp"

using namespace bessel_lab;

namespace {

constexpr int kDigits = 30;

void expect_close(const BigReal& a, const BigReal& b, int digits) {
  EXPECT_GT(neg_log10(relative_difference(a, b)), digits) << a.to_string(digits) << " vs " << b.to_string(digits);
}

}  // namespace

TEST(Periods, KThreeMiddle) {
  PeriodMatrix p = pmid_matrix(3, kDigits);
  ASSERT_EQ(p.entries.rows(), 1u);
  EXPECT_EQ(p.entries(0, 0).pi_i_power, 1);
  expect_close(p.entries(0, 0).magnitude, ikm(3, 1, 1, kDigits).value * 4L, kDigits - 2);
}

TEST(Periods, KEightFactorisation) {
  PeriodMatrix p = pmid_matrix(8, kDigits);
  EXPECT_EQ(p.row_labels, (std::vector<int>{2, 3}));
  EXPECT_EQ(p.col_labels, (std::vector<int>{1, 3}));
  std::vector<MomentIntegrand> a;
  for (int i : {2, 3}) {
    a.push_back(ikm_integrand(8, i, 1));
    MomentIntegrand m;
    m.k = 8;
    m.i = i;
    m.poly = {{5, Rational(2)}, {3, Rational(-1)}};
    a.push_back(m);
  }
  auto v = evaluate_moments(a, kDigits);
  // diag((pi i)^2, -(pi i)^3) A diag(2^7, 2^2)
  expect_close(p.entries(0, 0).magnitude, v[0].value * 128L, kDigits - 2);
  expect_close(p.entries(0, 1).magnitude, v[1].value * 4L, kDigits - 2);
  expect_close(p.entries(1, 0).magnitude, -(v[2].value * 128L), kDigits - 2);
  expect_close(p.entries(1, 1).magnitude, -(v[3].value * 4L), kDigits - 2);
  EXPECT_EQ(p.entries(0, 0).pi_i_power, 2);
  EXPECT_EQ(p.entries(1, 1).pi_i_power, 3);
}

TEST(Periods, RowPhases) {
  for (int k : {5, 6, 7, 9, 10}) {
    PeriodMatrix p = pmid_matrix(k, 20);
    for (size_t r = 0; r < p.entries.rows(); ++r)
      for (size_t c = 0; c < p.entries.cols(); ++c) EXPECT_EQ(p.entries(r, c).pi_i_power, p.row_labels[r]);
  }
}

TEST(Periods, FullRdModRowAndColumn) {
  for (int k : {3, 4, 5, 8}) {
    PeriodMatrix p = pfull_rdmod(k, kDigits);
    const mpfr_prec_t prec = period_precision(kDigits);
    EXPECT_EQ(p.entries(0, 0).pi_i_power, k + 1);
    EXPECT_EQ(p.entries(0, 0).magnitude, BigReal(pow2(k + 1), prec));
    for (size_t j = 1; j < p.entries.cols(); ++j) EXPECT_TRUE(p.entries(0, j).magnitude.is_zero());
    for (int i = 1; i <= k_prime(k); ++i) {
      PhasedReal want = ikm_reg_minus1_phased(k, i, kDigits);
      EXPECT_EQ(p.entries(i, 0).pi_i_power, want.pi_i_power);
      expect_close(p.entries(i, 0).magnitude, want.magnitude, kDigits - 2);
    }
  }
}

TEST(Periods, MiddleIsInteriorOfFull) {
  for (int k : {3, 5, 6, 7}) {
    PeriodMatrix mid = pmid_matrix(k, kDigits);
    PeriodMatrix full = pfull_rdmod(k, kDigits);
    for (size_t r = 0; r < mid.entries.rows(); ++r)
      for (size_t c = 0; c < mid.entries.cols(); ++c) {
        EXPECT_EQ(mid.entries(r, c).pi_i_power, full.entries(r + 1, c + 1).pi_i_power);
        expect_close(mid.entries(r, c).magnitude, full.entries(r + 1, c + 1).magnitude, kDigits - 2);
      }
  }
}

TEST(Periods, ModRdShape) {
  PeriodMatrix p5 = pmodrd_matrix(5, 20);
  EXPECT_EQ(p5.row_labels, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(p5.entries(0, 0).magnitude.to_double(), -1.0);
  EXPECT_TRUE(p5.entries(1, 0).magnitude.is_zero());
  PeriodMatrix p8 = pmodrd_matrix(8, 20);
  EXPECT_EQ(p8.row_labels, (std::vector<int>{0, 2, 3, 4}));
  EXPECT_EQ(p8.entries(0, 0).magnitude.to_double(), 1.0);
  // (k/2, k/4) entry: -(2 pi i)^(k/2) 2^(k/2) / binom(k, k/2).
  const PhasedReal& e = p8.entries(3, 2);
  EXPECT_EQ(e.pi_i_power, 4);
  EXPECT_NEAR(e.magnitude.to_double(), -256.0 / 70.0, 1e-12);
}

TEST(Periods, Invertible) {
  for (int k = 3; k <= 12; ++k) {
    ComplexMatrix p = pmid_matrix(k, 20).to_complex();
    if (p.rows() == 0) continue;
    EXPECT_GT(complex_det(p).abs().to_double(), 1e-10) << k;
  }
}

TEST(Periods, BroadhurstRobertsPieces) {
  EXPECT_EQ(br_t_matrix(2), (ExactMatrix{{Rational(-4), Rational(0)}, {Rational(0), Rational(16)}}));
  EXPECT_EQ(br_d_matrix(3), (ExactMatrix{{Rational(9, 16)}}));
  for (int k = 3; k <= 12; ++k) {
    ExactMatrix d = br_d_matrix(k);
    const Rational sym = (k + 1) % 2 == 0 ? Rational(1) : Rational(-1);
    for (size_t a = 0; a < d.rows(); ++a)
      for (size_t b = 0; b < d.cols(); ++b) EXPECT_EQ(d(a, b), sym * d(b, a)) << k;
  }
}

TEST(Periods, DeligneTableRows) {
  DeligneReport r3 = deligne_report(3, 20);
  bool saw3 = false;
  for (const auto& v : r3.values) {
    if (v.n == 3) {
      saw3 = true;
      expect_close(v.c_n, ikm(3, 1, 1, 20).value, 18);
    }
    if (v.n == 5) EXPECT_EQ(v.pi_power, 2);
  }
  EXPECT_TRUE(saw3);
  DeligneReport r7 = deligne_report(7, 20);
  ASSERT_FALSE(r7.values.empty());
  EXPECT_EQ(r7.values.front().n, 4);
  EXPECT_EQ(r7.values.front().pi_power, -2);
  EXPECT_EQ(r7.values.front().determinant_name, "D_{k,k-3}");
  DeligneReport r8 = deligne_report(8, 20);
  EXPECT_EQ(r8.values.back().n, 7);
  EXPECT_EQ(r8.values.back().pi_power, 0);
  EXPECT_EQ(r8.values.back().determinant_name, "D'_{k,k-3}");
}

TEST(Periods, JsonShapes) {
  PeriodMatrix p = pmid_matrix(5, 20);
  auto j = to_json_value(p);
  EXPECT_EQ(j["k"], 5);
  EXPECT_TRUE(j["entries"][0][0].contains("mag"));
  EXPECT_TRUE(j["entries"][0][0].contains("pi_i_pow"));
  auto c = to_json_value(p.to_complex(), 20);
  EXPECT_TRUE(c[0][0].contains("re"));
  EXPECT_TRUE(c[0][0].contains("im"));
}
