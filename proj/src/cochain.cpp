#include "cohomolab/cochain.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "cohomolab/errors.hpp"
#include "cohomolab/linalg.hpp"
#include "cohomolab/text_format.hpp"

namespace cohomolab {

PNorm parse_pnorm(std::string_view name) {
  if (name == "1" || name == "one") return PNorm::one;
  if (name == "2" || name == "two") return PNorm::two;
  if (name == "inf" || name == "infinity") return PNorm::inf;
  throw ParseError("unknown p-norm '" + std::string(name) + "' (have 1, 2, inf)");
}

Matrix codifferential(const EquivariantComplex& X, const Representation& pi, int n) {
  if (n < 0 || n > X.max_degree)
    throw VerificationError("codifferential: degree " + std::to_string(n) +
                            " outside [0, " + std::to_string(X.max_degree) + "]");
  if (X.generator_count > pi.generator_count())
    throw VerificationError("codifferential: complex '" + X.name + "' uses " +
                            std::to_string(X.generator_count) + " generators, representation '" +
                            pi.label + "' provides " + std::to_string(pi.generator_count()));
  const int d = pi.dim;
  const int cols = d * X.cells[n];
  if (n == X.max_degree) return Matrix::Zero(0, cols);
  const int rows = d * X.cells[n + 1];
  Matrix M = Matrix::Zero(rows, cols);
  for (int i = 0; i < X.cells[n + 1]; ++i)
    for (int j = 0; j < X.cells[n]; ++j) {
      const GroupRingElement& e = X.boundary(n + 1, i, j);
      if (!e.is_zero()) M.block(i * d, j * d, d, d) = evaluate(pi, e);
    }
  return M;
}

Matrix laplacian(const EquivariantComplex& X, const Representation& pi, int n) {
  const int dim = pi.dim * X.cells[n];
  Matrix delta = Matrix::Zero(dim, dim);
  if (n > 0) {
    Matrix dn1 = codifferential(X, pi, n - 1);
    delta += dn1 * dn1.adjoint();
  }
  if (n < X.max_degree) {
    Matrix dn = codifferential(X, pi, n);
    delta += dn.adjoint() * dn;
  }
  return delta;
}

double cochain_norm(const Vector& f, int dim_E, PNorm p) {
  if (dim_E < 1 || f.size() % dim_E != 0)
    throw VerificationError("cochain_norm: vector length is not a multiple of dim_E");
  const int cells = static_cast<int>(f.size()) / dim_E;
  double acc = 0.0;
  for (int c = 0; c < cells; ++c) {
    double block = f.segment(c * dim_E, dim_E).norm();
    switch (p) {
      case PNorm::one: acc += block; break;
      case PNorm::two: acc += block * block; break;
      case PNorm::inf: acc = std::max(acc, block); break;
    }
  }
  return p == PNorm::two ? std::sqrt(acc) : acc;
}

double operator_norm(const Matrix& M, PNorm p, int block_dim) {
  if (p == PNorm::two) return spectral_norm(M);
  if (block_dim <= 0) return spectral_norm(M);  // single block: bound is exact
  if (M.rows() % block_dim != 0 || M.cols() % block_dim != 0)
    throw VerificationError("operator_norm: shape is not a multiple of block_dim");
  const int br = static_cast<int>(M.rows()) / block_dim;
  const int bc = static_cast<int>(M.cols()) / block_dim;
  if (br == 0 || bc == 0) return 0.0;
  Eigen::MatrixXd norms(br, bc);
  for (int i = 0; i < br; ++i)
    for (int j = 0; j < bc; ++j)
      norms(i, j) = spectral_norm(M.block(i * block_dim, j * block_dim, block_dim, block_dim));
  double bound = 0.0;
  if (p == PNorm::inf) {
    for (int i = 0; i < br; ++i) bound = std::max(bound, norms.row(i).sum());
  } else {
    for (int j = 0; j < bc; ++j) bound = std::max(bound, norms.col(j).sum());
  }
  return bound;
}

void write_matrix(std::ostream& out, const Matrix& M) {
  out << M.rows() << " " << M.cols() << "\n";
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) {
      if (j) out << ' ';
      out << format_real(M(i, j).real()) << ' ' << format_real(M(i, j).imag()) << 'j';
    }
    out << "\n";
  }
}

Matrix read_matrix(std::istream& in) {
  long long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0)
    throw ParseError("matrix text: bad shape header");
  Matrix M(rows, cols);
  std::string re, im;
  for (long long i = 0; i < rows; ++i)
    for (long long j = 0; j < cols; ++j) {
      if (!(in >> re >> im) || im.empty() || im.back() != 'j')
        throw ParseError("matrix text: bad entry at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      im.pop_back();
      M(i, j) = Complex(parse_real(re), parse_real(im));
    }
  return M;
}

}  // namespace cohomolab
