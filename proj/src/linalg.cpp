#include "cohomolab/linalg.hpp"

#include <limits>

namespace cohomolab {

double spectral_norm(const Eigen::MatrixXcd& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues()(0);
}

double condition_number(const Eigen::MatrixXcd& M) {
  if (M.rows() == 0 || M.cols() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace cohomolab
