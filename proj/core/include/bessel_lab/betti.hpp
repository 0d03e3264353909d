#pragma once

#include <vector>

#include "bessel_lab/exact_matrix.hpp"

namespace bessel_lab {

// <alpha_i, beta_j> for 1 <= i <= k' and 0 <= j <= floor(k/2):
// (-1)^(k-i) (k-i)! (k-j)! / k! * B_(k-i-j+1) / (k-i-j+1)!.
// Row 0 is -delta_(0,j).
Rational bpairing_entry(int k, int i, int j);

// Full matrix on rows 0..k' and the given beta columns.
ExactMatrix bfull_matrix(int k, const std::vector<int>& beta_columns);

// Rows and columns 1..k', or 2..k' when 4 | k.
std::vector<int> betti_middle_indices(int k);
ExactMatrix bmid_matrix(int k);

// Rows 1..k' against columns 2..k/2 when 4 | k (the unprimed matrix).
ExactMatrix bmid_unprimed_matrix(int k);

Rational det_bmid_closed_form(int k);
// 4 | k only: determinant of bmid_unprimed_matrix, -[k! prod_(a=2..k') binom(k,a)]^-1.
Rational det_bmid_unprimed_closed_form(int k);

// det (B_(i+j+shift) / (i+j+shift)!)_(1 <= i, j <= n) for shift 0 or 1.
ExactMatrix bernoulli_hankel(int n, int shift);
Rational det_bernoulli_hankel_closed_form(int n, int shift);

// (B_(2a+2b-2)/(2a+2b-2)!) and (B_(2a+2b)/(2a+2b)!), 1 <= a, b <= n.
ExactMatrix delta_matrix(int n);
ExactMatrix theta_hankel_matrix(int n);
Rational det_delta_closed_form(int n);
Rational det_theta_hankel_closed_form(int n);

}  // namespace bessel_lab
