#pragma once

#include <nlohmann/json_fwd.hpp>

#include "bessel_lab/matrix.hpp"
#include "bessel_lab/rational.hpp"

namespace bessel_lab {

using ExactMatrix = Matrix<Rational>;

ExactMatrix exact_identity(size_t n);

// Determinant by fraction-free (Bareiss) elimination on the row-scaled
// integer matrix. The empty matrix has determinant 1.
Rational det_exact(const ExactMatrix& m);

// Throws SingularMatrixError.
ExactMatrix invert_exact(const ExactMatrix& m);

ExactMatrix matmul_exact(const ExactMatrix& a, const ExactMatrix& b);

// Rows of "num/den" strings.
nlohmann::json exact_matrix_to_json(const ExactMatrix& m);
ExactMatrix exact_matrix_from_json(const nlohmann::json& j);

}  // namespace bessel_lab
