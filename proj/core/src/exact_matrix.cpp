#include "bessel_lab/exact_matrix.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

#include "bessel_lab/errors.hpp"

namespace bessel_lab {

namespace {

using IntRows = std::vector<std::vector<BigInt>>;

// Scales every row to integers; returns the product of the scale factors.
BigInt integer_rows(const ExactMatrix& m, IntRows& out) {
  BigInt scale = 1;
  out.assign(m.rows(), std::vector<BigInt>(m.cols()));
  for (size_t i = 0; i < m.rows(); ++i) {
    BigInt l = 1;
    for (size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).den().get_mpz_t());
    for (size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).num() * (l / m(i, j).den());
    scale *= l;
  }
  return scale;
}

}  // namespace

ExactMatrix exact_identity(size_t n) { return ExactMatrix::identity(n, Rational(1), Rational(0)); }

Rational det_exact(const ExactMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("det_exact: matrix is not square");
  const size_t n = m.rows();
  if (n == 0) return Rational(1);
  IntRows a;
  BigInt scale = integer_rows(m, a);
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return Rational(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        BigInt t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return Rational(a[n - 1][n - 1] * sign, scale);
}

ExactMatrix invert_exact(const ExactMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("invert_exact: matrix is not square");
  const size_t n = m.rows();
  IntRows a;
  integer_rows(m, a);
  // Row scale factors are re-applied on the right at the end: M = diag(1/l) N.
  std::vector<BigInt> row_scale(n);
  for (size_t i = 0; i < n; ++i) {
    BigInt l = 1;
    for (size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).den().get_mpz_t());
    row_scale[i] = l;
    a[i].resize(2 * n, BigInt(0));
    a[i][n + i] = 1;
  }
  // Fraction-free Gauss-Jordan: the left block ends as d*I, the right as d*N^-1.
  BigInt prev = 1;
  for (size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) throw SingularMatrixError();
      std::swap(a[k], a[p]);
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        BigInt t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  ExactMatrix inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = Rational(a[i][n + j] * row_scale[j], a[i][i]);
  return inv;
}

ExactMatrix matmul_exact(const ExactMatrix& a, const ExactMatrix& b) { return matmul(a, b, Rational(0)); }

nlohmann::json exact_matrix_to_json(const ExactMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix exact_matrix_from_json(const nlohmann::json& j) {
  const size_t r = j.size();
  const size_t c = r ? j.at(0).size() : 0;
  ExactMatrix m(r, c);
  for (size_t i = 0; i < r; ++i) {
    if (j.at(i).size() != c) throw std::invalid_argument("ragged matrix in JSON");
    for (size_t k = 0; k < c; ++k) m(i, k) = j.at(i).at(k).get<Rational>();
  }
  return m;
}

}  // namespace bessel_lab
