#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bessel_lab/bigreal.hpp"
#include "bessel_lab/exact_matrix.hpp"
#include "bessel_lab/matrix.hpp"

namespace bessel_lab {

// magnitude * (pi i)^pi_i_power
struct PhasedReal {
  BigReal magnitude;
  int pi_i_power = 0;

  BigComplex to_complex() const;
};

using ComplexMatrix = Matrix<BigComplex>;

ComplexMatrix complex_matrix(const ExactMatrix& m, mpfr_prec_t prec);
ComplexMatrix complex_matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix complex_inverse(const ComplexMatrix& m);
BigComplex complex_det(const ComplexMatrix& m);
ComplexMatrix complex_scale(const ComplexMatrix& m, const BigComplex& c);
ComplexMatrix complex_sub(const ComplexMatrix& a, const ComplexMatrix& b);
BigReal max_abs_entry(const ComplexMatrix& m);
mpfr_prec_t matrix_precision(const ComplexMatrix& m);

// A period matrix together with the basis labels of its rows and columns.
struct PeriodMatrix {
  int k = 0;
  int digits = 0;
  std::vector<int> row_labels;
  std::vector<int> col_labels;
  Matrix<PhasedReal> entries;

  ComplexMatrix to_complex() const;
};

// Working precision of every assembled period matrix at the given digits.
mpfr_prec_t period_precision(int digits);

// Normalized moments with their (pi i) phases.
PhasedReal ikm_phased(int k, int i, int c, int digits);
PhasedReal ikm_reg_minus1_phased(int k, int i, int digits);
PhasedReal ikm_reg_half_phased(int k, int j, int digits);
PhasedReal ikm_cp_phased(int k, int i, int j, int digits);

// Rows alpha_i / columns omega_j of the middle part: betti_middle_indices(k)
// and middle_indices(k).
PeriodMatrix pmid_matrix(int k, int digits);
// Rows alpha_0..alpha_k', columns omega_0..omega_k'.
PeriodMatrix pfull_rdmod(int k, int digits);
// Rows beta_i (i = 0..k', or {0, 2, ..., k/2} when 4 | k), columns 0..k'.
PeriodMatrix pmodrd_matrix(int k, int digits);

// Normalizations used by Broadhurst and Roberts.
ExactMatrix br_t_matrix(int n);
ComplexMatrix br_r_matrix(int n, mpfr_prec_t prec);

struct BrMatrices {
  int k = 0;
  bool primed = false;
  ComplexMatrix p_br;
  ComplexMatrix b_br;
  ExactMatrix d;
};

// D_k = (-1)^k k! (T S^mid T)^-1, with T restricted to the middle indices when 4 | k.
ExactMatrix br_d_matrix(int k);
BrMatrices br_matrices(int k, int digits);

struct DeligneValue {
  int n = 0;
  int pi_power = 0;
  std::string determinant_name;  // "D_{k,k-2}", "D'_{k,k-3}", ...
  BigReal determinant;
  BigReal c_n;
};

struct DeligneReport {
  int k = 0;
  int digits = 0;
  int rank = 0;
  std::vector<DeligneValue> values;
};

// det( int I0^(2i-1) K0^(k+1-2i) t^(2j-1) ), 1 <= i, j <= size.
BigReal deligne_det_odd(int k, int size, int digits);
// det( int I0^(2i) K0^(k-2i) t^(2j-1) ), 1 <= i, j <= size.
BigReal deligne_det_even(int k, int size, int digits);
DeligneReport deligne_report(int k, int digits, int k3_samples = 3);

nlohmann::json to_json_value(const BigReal& x, int digits);
nlohmann::json to_json_value(const BigComplex& z, int digits);
nlohmann::json to_json_value(const PhasedReal& p, int digits);
nlohmann::json to_json_value(const PeriodMatrix& m);
nlohmann::json to_json_value(const ComplexMatrix& m, int digits);
nlohmann::json to_json_value(const DeligneReport& r);

}  // namespace bessel_lab
