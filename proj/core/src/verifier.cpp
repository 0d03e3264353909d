#include "bessel_lab/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "bessel_lab/betti.hpp"
#include "bessel_lab/combinatorics.hpp"
#include "bessel_lab/derham.hpp"
#include "bessel_lab/errors.hpp"
#include "bessel_lab/exact_matrix.hpp"
#include "bessel_lab/moments.hpp"
#include "bessel_lab/periods.hpp"

namespace bessel_lab {

namespace {

VerificationReport start(const std::string& name, int k, int digits) {
  VerificationReport r;
  r.name = name;
  r.k = k;
  r.digits = digits;
  const mpfr_prec_t prec = period_precision(digits);
  r.residual = BigReal(0, prec);
  r.tolerance = verification_tolerance(digits);
  return r;
}

void finish(VerificationReport& r) { r.passed = r.residual < r.tolerance; }

// (-2 pi i)^(k+1).
BigComplex betti_scale(int k, mpfr_prec_t prec) {
  BigReal two_pi = const_pi(prec) * 2L;
  BigReal mag = pow(two_pi, k + 1);
  if ((k + 1) % 2 == 1) mag = -mag;
  return i_power(k + 1, prec) * BigComplex::real(mag);
}

// max |lhs - rhs| / max |rhs|; zero for empty matrices.
BigReal relative_residual(const ComplexMatrix& lhs, const ComplexMatrix& rhs, mpfr_prec_t prec) {
  if (rhs.rows() == 0 || rhs.cols() == 0) return BigReal(0, prec);
  BigReal scale = max_abs_entry(rhs);
  BigReal diff = max_abs_entry(complex_sub(lhs, rhs));
  if (scale.is_zero()) return diff;
  return diff / scale;
}

std::string sci(const BigReal& x) { return x.to_string(6); }

bool all_integral(const ExactMatrix& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integer()) return false;
  return true;
}

void exact_check(VerificationReport& r, const std::string& label, const Rational& got, const Rational& want) {
  r.details[label] = {{"value", got.to_string()}, {"expected", want.to_string()}};
  if (got != want) r.residual = BigReal(1, r.residual.precision());
}

}  // namespace

BigReal verification_tolerance(int digits) {
  const mpfr_prec_t prec = period_precision(digits);
  return pow(BigReal(10, prec), -(digits - 10));
}

VerificationReport verify_quadratic(int k, int digits) {
  if (k < 3) throw DomainError("verify_quadratic: k must be at least 3");
  VerificationReport r = start("quadratic", k, digits);
  const mpfr_prec_t prec = period_precision(digits);
  ExactMatrix s = smid_matrix(k);
  ExactMatrix b = bmid_matrix(k);
  r.details["size"] = s.rows();
  if (s.rows() == 0) {
    r.details["vacuous"] = true;
    finish(r);
    return r;
  }
  if (det_exact(s).is_zero() || det_exact(b).is_zero()) throw SingularMatrixError("middle pairing is singular");
  ComplexMatrix p = pmid_matrix(k, digits).to_complex();
  ComplexMatrix lhs = complex_matmul(complex_matmul(p, complex_matrix(invert_exact(s), prec)), p.transpose());
  ComplexMatrix rhs = complex_scale(complex_matrix(b, prec), betti_scale(k, prec));
  r.residual = relative_residual(lhs, rhs, prec);
  r.details["primed"] = (k % 4 == 0);
  finish(r);
  return r;
}

VerificationReport verify_full_quadratic(int k, int digits) {
  if (k < 3) throw DomainError("verify_full_quadratic: k must be at least 3");
  VerificationReport r = start("full_quadratic", k, digits);
  const mpfr_prec_t prec = period_precision(digits);
  PeriodMatrix prd = pfull_rdmod(k, digits);
  PeriodMatrix pmr = pmodrd_matrix(k, digits);
  ExactMatrix s = sfull_matrix(k);
  if (det_exact(s).is_zero()) throw SingularMatrixError("full de Rham pairing is singular");
  ExactMatrix b = bfull_matrix(k, pmr.row_labels);
  ComplexMatrix lhs = complex_matmul(complex_matmul(prd.to_complex(), complex_matrix(invert_exact(s), prec)),
                                     pmr.to_complex().transpose());
  ComplexMatrix rhs = complex_scale(complex_matrix(b, prec), betti_scale(k, prec));
  r.residual = relative_residual(lhs, rhs, prec);
  r.details["size"] = s.rows();
  r.details["beta_rows"] = pmr.row_labels;
  finish(r);
  return r;
}

VerificationReport verify_det_identities(int k, int digits) {
  if (k < 3) throw DomainError("verify_det_identities: k must be at least 3");
  VerificationReport r = start("det", k, digits);
  const Rational det_mid = det_exact(smid_matrix(k));
  exact_check(r, "det_smid", det_mid, det_smid_closed_form(k));
  const Rational det_full = det_exact(sfull_matrix(k));
  exact_check(r, "det_sfull", det_full, k % 4 == 0 ? -det_mid : det_mid);
  exact_check(r, "det_bmid", det_exact(bmid_matrix(k)), det_bmid_closed_form(k));
  if (k % 4 == 0) exact_check(r, "det_bmid_unprimed", det_exact(bmid_unprimed_matrix(k)), det_bmid_unprimed_closed_form(k));

  if (k == 8) {
    const mpfr_prec_t prec = period_precision(digits);
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
    BigReal det_a = v[0].value * v[3].value - v[1].value * v[2].value;
    BigReal expected = pow(const_pi(prec), 4) * 5L / 6144L;
    BigReal res = relative_difference(det_a, expected);
    r.details["det_A"] = det_a.to_string(digits);
    r.details["det_A_expected"] = expected.to_string(digits);
    r.details["det_A_positive"] = det_a.sign() > 0;
    r.details["det_A_residual"] = sci(res);
    if (det_a.sign() <= 0) res = BigReal(1, prec);
    if (res > r.residual) r.residual = res;
  }
  finish(r);
  return r;
}

std::vector<int> sum_rule_indices(int k) {
  if (k % 2 != 0 || k < 6) throw DomainError("sum rules need even k >= 6");
  const int kpp = (k - 1) / 4;
  std::vector<int> js;
  if (k % 4 == 2) {
    for (int j = 1; j <= 2 * kpp; ++j) js.push_back(j);
  } else {
    for (int j = 1; j <= 2 * kpp + 1; ++j)
      if (j != k / 4) js.push_back(j);
  }
  return js;
}

VerificationReport verify_sum_rules(int k, int digits) {
  VerificationReport r = start("sum_rules", k, digits);
  const mpfr_prec_t prec = period_precision(digits);
  const int kpp = (k - 1) / 4;
  nlohmann::json per_j = nlohmann::json::array();
  for (int j : sum_rule_indices(k)) {
    BigComplex total(prec);
    BigReal largest(0, prec);
    for (int i = 0; i <= kpp; ++i) {
      BigComplex term = ikm_cp_phased(k, 2 * i + 1, j, digits).to_complex();
      term = term * BigComplex::real(BigReal(Rational(binomial(k / 2, 2 * i + 1)), prec));
      BigReal a = term.abs();
      if (a > largest) largest = a;
      total += term;
    }
    BigReal res = largest.is_zero() ? total.abs() : total.abs() / largest;
    per_j.push_back({{"j", j}, {"residual", sci(res)}});
    if (res > r.residual) r.residual = res;
  }
  r.details["per_j"] = per_j;
  finish(r);
  return r;
}

VerificationReport verify_br(int k, int digits) {
  if (k < 3) throw DomainError("verify_br: k must be at least 3");
  VerificationReport r = start("br", k, digits);
  const mpfr_prec_t prec = period_precision(digits);
  ExactMatrix s = smid_matrix(k);
  r.details["size"] = s.rows();
  r.details["primed"] = (k % 4 == 0);
  bool integral = true;
  if (s.rows() > 0) {
    ExactMatrix scaled = invert_exact(s).map([&](const Rational& x) { return x * Rational(factorial(k)); });
    integral = all_integral(scaled);
  }
  r.details["kfact_smid_inverse_integral"] = integral;
  if (s.rows() > 0) {
    BrMatrices br = br_matrices(k, digits);
    ComplexMatrix lhs = complex_matmul(complex_matmul(br.p_br, complex_matrix(br.d, prec)), br.p_br.transpose());
    r.residual = relative_residual(lhs, br.b_br, prec);
  } else {
    r.details["vacuous"] = true;
  }
  finish(r);
  r.passed = r.passed && integral;
  return r;
}

VerificationReport verify_reg_examples(int digits) {
  VerificationReport r = start("reg_examples", 0, digits);
  const mpfr_prec_t prec = period_precision(digits);
  auto v = evaluate_moments({reg_minus1_integrand(3, 1), ikm_integrand(3, 0, 1), ikm_integrand(3, 1, 1),
                             reg_minus1_integrand(4, 1)},
                            digits);
  BigReal rhs3 = v[1].value * v[2].value * 3L / 2L;
  BigReal res3 = relative_difference(v[0].value, rhs3);
  BigReal rhs4 = pow(const_pi(prec), 4) / 120L;
  BigReal res4 = relative_difference(v[3].value, rhs4);
  r.details["k3"] = {{"lhs", v[0].value.to_string(digits)}, {"rhs", rhs3.to_string(digits)}, {"residual", sci(res3)}};
  r.details["k4"] = {{"lhs", v[3].value.to_string(digits)}, {"rhs", rhs4.to_string(digits)}, {"residual", sci(res4)}};
  r.residual = res3 > res4 ? res3 : res4;
  finish(r);
  return r;
}

VerificationReport verify_deligne(int k, int digits) {
  VerificationReport r = start("deligne", k, digits);
  const mpfr_prec_t prec = period_precision(digits);
  DeligneReport a = deligne_report(k, digits);
  DeligneReport b = deligne_report(k, digits + 10);
  if (a.values.size() != b.values.size()) throw ConvergenceError("deligne report changed with precision");
  nlohmann::json rows = nlohmann::json::array();
  for (size_t n = 0; n < a.values.size(); ++n) {
    const DeligneValue& v = a.values[n];
    BigReal rebuilt = pow(const_pi(prec), v.pi_power) * v.determinant;
    BigReal res = relative_difference(v.c_n, rebuilt);
    BigReal refine = relative_difference(v.determinant, b.values[n].determinant.with_precision(prec));
    if (refine > res) res = refine;
    if (res > r.residual) r.residual = res;
    rows.push_back({{"n", v.n}, {"determinant", v.determinant_name}, {"residual", sci(res)}});
  }
  r.details["values"] = rows;
  r.details["rank"] = a.rank;
  finish(r);
  return r;
}

std::optional<Rational> rational_recognize(const BigReal& x, const BigInt& max_den, int certified_digits) {
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(x.precision(), bits_for_digits(certified_digits + 10));
  BigReal tol = pow(BigReal(10, prec), -(certified_digits - 5));
  BigReal y = x.with_precision(prec);
  // Convergents h1/k1 with the previous one h2/k2.
  BigInt h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (int step = 0; step < 4 * certified_digits + 20; ++step) {
    BigInt a;
    BigReal fl(prec);
    mpfr_floor(fl.raw(), y.raw());
    mpfr_get_z(a.get_mpz_t(), fl.raw(), MPFR_RNDN);
    BigInt h = a * h1 + h2;
    BigInt q = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = q;
    if (k1 > max_den) break;
    Rational cand(h1, k1);
    if (abs(x.with_precision(prec) - BigReal(cand, prec)) < tol) return cand;
    BigReal frac = y - fl;
    if (frac.is_zero()) break;
    y = BigReal(1, prec) / frac;
  }
  return std::nullopt;
}

std::vector<std::string> verification_names() {
  return {"quadratic", "full_quadratic", "det", "sum_rules", "br", "reg_examples", "deligne"};
}

bool verification_applies(const std::string& name, int k) {
  if (name == "sum_rules") return k >= 6 && k % 2 == 0;
  if (name == "reg_examples") return true;
  if (name == "deligne") return k >= 3;
  return k >= 3;
}

VerificationReport run_verification(const std::string& name, int k, int digits) {
  if (name == "quadratic") return verify_quadratic(k, digits);
  if (name == "full_quadratic") return verify_full_quadratic(k, digits);
  if (name == "det") return verify_det_identities(k, digits);
  if (name == "sum_rules") return verify_sum_rules(k, digits);
  if (name == "br") return verify_br(k, digits);
  if (name == "reg_examples") return verify_reg_examples(digits);
  if (name == "deligne") return verify_deligne(k, digits);
  throw DomainError("unknown verification: " + name);
}

std::vector<VerificationReport> run_verifications(const std::vector<int>& ks, int digits,
                                                  const std::vector<std::string>& names, int jobs) {
  struct Task {
    std::string name;
    int k;
  };
  std::vector<Task> tasks;
  for (const auto& name : names) {
    if (name == "reg_examples") {
      tasks.push_back({name, 0});
      continue;
    }
    for (int k : ks)
      if (verification_applies(name, k)) tasks.push_back({name, k});
  }
  std::vector<VerificationReport> out(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      try {
        out[t] = run_verification(tasks[t].name, tasks[t].k, digits);
      } catch (const std::exception& e) {
        VerificationReport r = start(tasks[t].name, tasks[t].k, digits);
        r.residual = BigReal(1, r.residual.precision());
        r.passed = false;
        r.details["error"] = e.what();
        out[t] = std::move(r);
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::sort(out.begin(), out.end(), [](const VerificationReport& a, const VerificationReport& b) {
    return a.name != b.name ? a.name < b.name : a.k < b.k;
  });
  return out;
}

nlohmann::json to_json_value(const VerificationReport& r) {
  return {{"name", r.name},
          {"k", r.k},
          {"digits", r.digits},
          {"residual", sci(r.residual)},
          {"tolerance", sci(r.tolerance)},
          {"passed", r.passed},
          {"details", r.details}};
}

}  // namespace bessel_lab
