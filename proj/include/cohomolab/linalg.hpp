#pragma once

#include <Eigen/Dense>

namespace cohomolab {

// Largest singular value; 0 for an empty or all-zero matrix.
double spectral_norm(const Eigen::MatrixXcd& M);

// sigma_max / sigma_min; +inf when singular, 1 for an empty matrix.
double condition_number(const Eigen::MatrixXcd& M);

}  // namespace cohomolab
