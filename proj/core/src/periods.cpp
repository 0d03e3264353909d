#include "bessel_lab/periods.hpp"

#include <algorithm>

#include "bessel_lab/betti.hpp"
#include "bessel_lab/bessel_series.hpp"
#include "bessel_lab/combinatorics.hpp"
#include "bessel_lab/derham.hpp"
#include "bessel_lab/errors.hpp"
#include "bessel_lab/moments.hpp"

namespace bessel_lab {

namespace {

Rational sign_of_power(int e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

// factor * (pi i)^pi_power * value(integrand), or an exact entry when the
// integrand is absent.
struct EntrySpec {
  std::optional<MomentIntegrand> integrand;
  Rational factor;
  int pi_power = 0;
};

EntrySpec exact_entry(Rational factor, int pi_power) { return {std::nullopt, std::move(factor), pi_power}; }

EntrySpec ikm_spec(int k, int i, int c) {
  return {ikm_integrand(k, i, c), sign_of_power(k - i) * pow2(k - c), i};
}

EntrySpec reg_minus1_spec(int k, int i) {
  return {reg_minus1_integrand(k, i), sign_of_power(k - i) * pow2(k + 1), i};
}

Rational reg_half_factor(int k, int j) {
  // + for 4 | k, - for k = 2 mod 4
  return (k % 4 == 0 ? Rational(1) : Rational(-1)) * pow2(k - 2 * j + 1);
}

EntrySpec reg_half_spec(int k, int j) { return {reg_half_integrand(k, j), reg_half_factor(k, j), k / 2}; }

EntrySpec cp_spec(int k, int i, int j) {
  MomentIntegrand m = cp_integrand(k, i, j);
  if (2 * i == k && j > k / 4) return {m, reg_half_factor(k, j), k / 2};
  return {m, sign_of_power(k - i) * pow2(k - 2 * j + 1), i};
}

// Entry of the middle period matrix: plain moments unless 4 | k.
EntrySpec middle_spec(int k, int i, int j) {
  if (k % 4 == 0) return cp_spec(k, i, j);
  return ikm_spec(k, i, 2 * j - 1);
}

PeriodMatrix assemble(int k, int digits, std::vector<int> rows, std::vector<int> cols,
                      const std::vector<std::vector<EntrySpec>>& specs) {
  const mpfr_prec_t prec = period_precision(digits);
  std::vector<MomentIntegrand> batch;
  for (const auto& row : specs)
    for (const auto& e : row)
      if (e.integrand) batch.push_back(*e.integrand);
  std::vector<MomentValue> values = batch.empty() ? std::vector<MomentValue>{} : evaluate_moments(batch, digits);
  PeriodMatrix out;
  out.k = k;
  out.digits = digits;
  out.row_labels = std::move(rows);
  out.col_labels = std::move(cols);
  out.entries = Matrix<PhasedReal>(specs.size(), specs.empty() ? 0 : specs[0].size());
  size_t next = 0;
  for (size_t a = 0; a < specs.size(); ++a) {
    for (size_t b = 0; b < specs[a].size(); ++b) {
      const auto& e = specs[a][b];
      BigReal mag(e.factor, prec);
      if (e.integrand) mag *= values[next++].value.with_precision(prec);
      out.entries(a, b) = PhasedReal{std::move(mag), e.factor.is_zero() ? 0 : e.pi_power};
    }
  }
  return out;
}

PhasedReal single(int k, int digits, EntrySpec spec) {
  auto m = assemble(k, digits, {0}, {0}, {{std::move(spec)}});
  return m.entries(0, 0);
}

}  // namespace

BigComplex PhasedReal::to_complex() const {
  const mpfr_prec_t prec = magnitude.precision();
  BigReal scale = magnitude * pow(const_pi(prec), pi_i_power);
  BigComplex ph = i_power(pi_i_power, prec);
  return {ph.re * scale, ph.im * scale};
}

ComplexMatrix complex_matrix(const ExactMatrix& m, mpfr_prec_t prec) {
  return m.map([prec](const Rational& r) { return BigComplex::real(BigReal(r, prec)); });
}

mpfr_prec_t matrix_precision(const ComplexMatrix& m) {
  return (m.rows() && m.cols()) ? m(0, 0).precision() : 64;
}

ComplexMatrix complex_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const mpfr_prec_t prec = std::max(matrix_precision(a), matrix_precision(b));
  return matmul(a, b, BigComplex(prec));
}

ComplexMatrix complex_scale(const ComplexMatrix& m, const BigComplex& c) {
  return m.map([&c](const BigComplex& z) { return z * c; });
}

ComplexMatrix complex_sub(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("complex_sub: shape mismatch");
  ComplexMatrix c = a;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

BigReal max_abs_entry(const ComplexMatrix& m) {
  BigReal best(matrix_precision(m));
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      BigReal a = m(i, j).abs();
      if (a > best) best = a;
    }
  return best;
}

namespace {

size_t pivot_row(const ComplexMatrix& a, size_t col, size_t from) {
  size_t best = from;
  BigReal best_abs = a(from, col).abs();
  for (size_t r = from + 1; r < a.rows(); ++r) {
    BigReal v = a(r, col).abs();
    if (v > best_abs) {
      best_abs = v;
      best = r;
    }
  }
  if (best_abs.is_zero()) throw SingularMatrixError();
  return best;
}

void swap_rows(ComplexMatrix& a, size_t r1, size_t r2) {
  for (size_t c = 0; c < a.cols(); ++c) std::swap(a(r1, c), a(r2, c));
}

}  // namespace

BigComplex complex_det(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("complex_det: matrix not square");
  const mpfr_prec_t prec = matrix_precision(m);
  BigComplex det{BigReal(1, prec), BigReal(prec)};
  ComplexMatrix a = m;
  const size_t n = a.rows();
  for (size_t c = 0; c < n; ++c) {
    size_t p;
    try {
      p = pivot_row(a, c, c);
    } catch (const SingularMatrixError&) {
      return BigComplex(prec);
    }
    if (p != c) {
      swap_rows(a, p, c);
      det = -det;
    }
    det *= a(c, c);
    for (size_t r = c + 1; r < n; ++r) {
      BigComplex f = a(r, c) / a(c, c);
      for (size_t cc = c; cc < n; ++cc) a(r, cc) -= f * a(c, cc);
    }
  }
  return det;
}

ComplexMatrix complex_inverse(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("complex_inverse: matrix not square");
  const size_t n = m.rows();
  const mpfr_prec_t prec = matrix_precision(m);
  ComplexMatrix a = m;
  ComplexMatrix inv = ComplexMatrix::identity(n, BigComplex{BigReal(1, prec), BigReal(prec)}, BigComplex(prec));
  for (size_t c = 0; c < n; ++c) {
    size_t p = pivot_row(a, c, c);
    if (p != c) {
      swap_rows(a, p, c);
      swap_rows(inv, p, c);
    }
    BigComplex piv = a(c, c);
    for (size_t cc = 0; cc < n; ++cc) {
      a(c, cc) /= piv;
      inv(c, cc) /= piv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      BigComplex f = a(r, c);
      for (size_t cc = 0; cc < n; ++cc) {
        a(r, cc) -= f * a(c, cc);
        inv(r, cc) -= f * inv(c, cc);
      }
    }
  }
  return inv;
}

ComplexMatrix PeriodMatrix::to_complex() const {
  return entries.map([](const PhasedReal& p) { return p.to_complex(); });
}

mpfr_prec_t period_precision(int digits) { return bits_for_digits(digits + 5); }

PhasedReal ikm_phased(int k, int i, int c, int digits) { return single(k, digits, ikm_spec(k, i, c)); }
PhasedReal ikm_reg_minus1_phased(int k, int i, int digits) { return single(k, digits, reg_minus1_spec(k, i)); }
PhasedReal ikm_reg_half_phased(int k, int j, int digits) { return single(k, digits, reg_half_spec(k, j)); }
PhasedReal ikm_cp_phased(int k, int i, int j, int digits) { return single(k, digits, cp_spec(k, i, j)); }

PeriodMatrix pmid_matrix(int k, int digits) {
  if (k < 3) throw DomainError("pmid_matrix needs k >= 3");
  const auto rows = betti_middle_indices(k);
  const auto cols = middle_indices(k);
  std::vector<std::vector<EntrySpec>> specs;
  for (int i : rows) {
    specs.emplace_back();
    for (int j : cols) specs.back().push_back(middle_spec(k, i, j));
  }
  return assemble(k, digits, rows, cols, specs);
}

PeriodMatrix pfull_rdmod(int k, int digits) {
  if (k < 1) throw DomainError("pfull_rdmod needs k >= 1");
  const int kp = k_prime(k);
  std::vector<int> idx;
  std::vector<std::vector<EntrySpec>> specs;
  for (int i = 0; i <= kp; ++i) {
    idx.push_back(i);
    specs.emplace_back();
    for (int j = 0; j <= kp; ++j) {
      if (i == 0) {
        specs.back().push_back(j == 0 ? exact_entry(pow2(k + 1), k + 1) : exact_entry(Rational(0), 0));
      } else if (j == 0) {
        specs.back().push_back(reg_minus1_spec(k, i));
      } else {
        specs.back().push_back(ikm_spec(k, i, 2 * j - 1));
      }
    }
  }
  return assemble(k, digits, idx, idx, specs);
}

PeriodMatrix pmodrd_matrix(int k, int digits) {
  if (k < 1) throw DomainError("pmodrd_matrix needs k >= 1");
  const int kp = k_prime(k);
  std::vector<int> rows, cols;
  for (int j = 0; j <= kp; ++j) cols.push_back(j);
  std::vector<std::vector<EntrySpec>> specs;
  if (k % 4 != 0) {
    for (int i = 0; i <= kp; ++i) {
      rows.push_back(i);
      specs.emplace_back();
      for (int j = 0; j <= kp; ++j) {
        if (j == 0) {
          specs.back().push_back(exact_entry(i == 0 ? sign_of_power(k) : Rational(0), 0));
        } else {
          specs.back().push_back(ikm_spec(k, i, 2 * j - 1));
        }
      }
    }
  } else {
    rows.push_back(0);
    for (int i = 2; i <= k / 2; ++i) rows.push_back(i);
    const Rational corner = -pow2(k) / Rational(binomial(k, k / 2));
    for (int i : rows) {
      specs.emplace_back();
      for (int j = 0; j <= kp; ++j) {
        if (j == 0) {
          specs.back().push_back(exact_entry(i == 0 ? Rational(1) : Rational(0), 0));
        } else if (j == k / 4) {
          specs.back().push_back(i == k / 2 ? exact_entry(corner, k / 2) : exact_entry(Rational(0), 0));
        } else {
          specs.back().push_back(cp_spec(k, i, j));
        }
      }
    }
  }
  return assemble(k, digits, rows, cols, specs);
}

ExactMatrix br_t_matrix(int n) {
  ExactMatrix t = exact_identity(n);
  for (int a = 0; a < n; ++a) t(a, a) = Rational(-4).pow(a + 1);
  return t;
}

ComplexMatrix br_r_matrix(int n, mpfr_prec_t prec) {
  ComplexMatrix r(n, n, BigComplex(prec));
  for (int a = 1; a <= n; ++a) r(a - 1, n - a) = i_power(a, prec);
  return r;
}

namespace {

// Positions (0-based) of middle_indices(k) inside 1..k'.
std::vector<size_t> middle_positions(int k) {
  std::vector<size_t> pos;
  for (int j : middle_indices(k)) pos.push_back(static_cast<size_t>(j - 1));
  return pos;
}

}  // namespace

ExactMatrix br_d_matrix(int k) {
  if (k < 3) throw DomainError("br_d_matrix needs k >= 3");
  const auto pos = middle_positions(k);
  ExactMatrix t = br_t_matrix(k_prime(k)).select(pos, pos);
  ExactMatrix tst = matmul_exact(matmul_exact(t, smid_matrix(k)), t);
  ExactMatrix inv = invert_exact(tst);
  const Rational scale = sign_of_power(k) * Rational(factorial(k));
  return inv.map([&scale](const Rational& r) { return r * scale; });
}

BrMatrices br_matrices(int k, int digits) {
  if (k < 3) throw DomainError("br_matrices needs k >= 3");
  const mpfr_prec_t prec = period_precision(digits);
  const int kp = k_prime(k);
  const auto pos = middle_positions(k);
  BrMatrices out;
  out.k = k;
  out.primed = (k % 4 == 0);
  ComplexMatrix rt = br_r_matrix(kp, prec).transpose().select(pos, pos);
  ComplexMatrix r = br_r_matrix(kp, prec).select(pos, pos);
  ComplexMatrix t = complex_matrix(br_t_matrix(kp).select(pos, pos), prec);
  ComplexMatrix p = pmid_matrix(k, digits).to_complex();
  // (-2 sqrt(pi))^-(k+1)
  BigReal c = pow(BigReal(-2, prec) * sqrt(const_pi(prec)), -(k + 1));
  out.p_br = complex_scale(complex_matmul(complex_matmul(rt, p), t), BigComplex::real(c));
  BigComplex bscale = i_power(k + 1, prec) * BigComplex::real(-(BigReal(Rational(factorial(k)) / pow2(k + 1), prec)));
  ComplexMatrix b = complex_matrix(bmid_matrix(k), prec);
  out.b_br = complex_scale(complex_matmul(complex_matmul(rt, b), r), bscale);
  out.d = br_d_matrix(k);
  return out;
}

namespace {

BigReal real_det(const Matrix<BigReal>& m, mpfr_prec_t prec) {
  if (m.rows() == 0) return BigReal(1, prec);
  return complex_det(m.map([](const BigReal& x) { return BigComplex::real(x); })).re;
}

BigReal deligne_det(int k, int size, int digits, int i0_offset) {
  const mpfr_prec_t prec = period_precision(digits);
  std::vector<MomentIntegrand> batch;
  for (int a = 1; a <= size; ++a)
    for (int b = 1; b <= size; ++b) batch.push_back(ikm_integrand(k, 2 * a - i0_offset, 2 * b - 1));
  auto vals = batch.empty() ? std::vector<MomentValue>{} : evaluate_moments(batch, digits);
  Matrix<BigReal> m(size, size);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) m(a, b) = vals[a * size + b].value.with_precision(prec);
  return real_det(m, prec);
}

}  // namespace

BigReal deligne_det_odd(int k, int size, int digits) { return deligne_det(k, size, digits, 1); }
BigReal deligne_det_even(int k, int size, int digits) { return deligne_det(k, size, digits, 0); }

DeligneReport deligne_report(int k, int digits, int k3_samples) {
  if (k < 3) throw DomainError("deligne_report needs k >= 3");
  DeligneReport rep;
  rep.k = k;
  rep.digits = digits;
  const mpfr_prec_t prec = period_precision(digits);
  const BigReal pi = const_pi(prec);
  const bool primed = (k % 4 == 0);
  const int shrink = primed ? 1 : 0;
  const int size_odd = (k + 1) / 4 - shrink;
  const int size_even = k / 4 - shrink;
  const std::string suffix = primed ? "'" : "";
  const BigReal d2 = deligne_det_odd(k, size_odd, digits);
  const BigReal d3 = deligne_det_even(k, size_even, digits);
  const std::string n2 = "D" + suffix + "_{k,k-2}";
  const std::string n3 = "D" + suffix + "_{k,k-3}";
  auto add = [&](int n, int pi_power, bool use_odd) {
    const BigReal& det = use_odd ? d2 : d3;
    rep.values.push_back({n, pi_power, use_odd ? n2 : n3, det, det * pow(pi, pi_power)});
  };
  if (k == 3) {
    rep.rank = 1;
    for (int a = 0; a < k3_samples; ++a) rep.values.push_back({2 - 2 * a, 0, "1", BigReal(1, prec), BigReal(1, prec)});
    for (int a = 0; a < k3_samples; ++a) add(2 * a + 3, 2 * a, true);
    return rep;
  }
  const int r = (k - 1) / 4;
  switch (k % 4) {
    case 1:
      rep.rank = 2 * r;
      add(2 * r + 1, -r * (r + 1), true);
      add(2 * r + 2, -r * (r - 1), false);
      break;
    case 2:
      rep.rank = 2 * r;
      add(2 * r + 1, -r * (r + 1), false);
      add(2 * r + 2, -r * (r + 1), true);
      add(2 * r + 3, -r * (r - 1), false);
      break;
    case 3:
      rep.rank = 2 * r + 1;
      add(2 * r + 2, -r * (r + 1), false);
      add(2 * r + 3, -r * (r + 1), true);
      break;
    default: {
      const int q = (k - 4) / 4;
      rep.rank = 2 * q;
      add(2 * q + 1, -q * (q + 3), false);
      add(2 * q + 2, -q * (q + 3), true);
      add(2 * q + 3, -q * (q + 1), false);
      add(2 * q + 4, -q * (q + 1), true);
      add(2 * q + 5, -q * (q - 1), false);
    }
  }
  std::sort(rep.values.begin(), rep.values.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  return rep;
}

nlohmann::json to_json_value(const BigReal& x, int digits) { return x.to_string(digits); }

nlohmann::json to_json_value(const BigComplex& z, int digits) {
  return {{"re", z.re.to_string(digits)}, {"im", z.im.to_string(digits)}};
}

nlohmann::json to_json_value(const PhasedReal& p, int digits) {
  return {{"mag", p.magnitude.to_string(digits)}, {"pi_i_pow", p.pi_i_power}};
}

nlohmann::json to_json_value(const PeriodMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t a = 0; a < m.entries.rows(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (size_t b = 0; b < m.entries.cols(); ++b) row.push_back(to_json_value(m.entries(a, b), m.digits));
    rows.push_back(row);
  }
  return {{"k", m.k}, {"digits", m.digits}, {"rows", m.row_labels}, {"cols", m.col_labels}, {"entries", rows}};
}

nlohmann::json to_json_value(const ComplexMatrix& m, int digits) {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t a = 0; a < m.rows(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (size_t b = 0; b < m.cols(); ++b) row.push_back(to_json_value(m(a, b), digits));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json to_json_value(const DeligneReport& r) {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& v : r.values) {
    vals.push_back({{"n", v.n},
                    {"pi_power", v.pi_power},
                    {"determinant_name", v.determinant_name},
                    {"determinant", v.determinant.to_string(r.digits)},
                    {"c_n", v.c_n.to_string(r.digits)}});
  }
  return {{"k", r.k}, {"digits", r.digits}, {"rank", r.rank}, {"values", vals}};
}

}  // namespace bessel_lab
