#pragma once

#include <iosfwd>

#include "cohomolab/complex.hpp"
#include "cohomolab/representation.hpp"

namespace cohomolab {

enum class PNorm { one, two, inf };
PNorm parse_pnorm(std::string_view name);  // "1", "2", "inf"

// Twisted codifferential d^n_pi as a dense block matrix: one dim(E) x dim(E)
// block per ((n+1)-cell, n-cell) pair, the block being the group-ring
// evaluation of the boundary entry. n = max_degree yields the zero map of
// shape (0, dim(E)*cells[n]).
Matrix codifferential(const EquivariantComplex& X, const Representation& pi, int n);

// Delta^n = d^{n-1} (d^{n-1})^* + (d^n)^* d^n  (missing terms dropped at the
// ends). Self-adjoint and positive semidefinite for unitary pi; non-unitary
// input is still assembled, callers consult is_unitary for the warning flag.
Matrix laplacian(const EquivariantComplex& X, const Representation& pi, int n);

// Cochain norm: Euclidean norm per cell block of size dim_E, then the l_p
// norm over cells.
double cochain_norm(const Vector& f, int dim_E, PNorm p);

// Operator norm on (C^*, p-mixed norms). Exact (largest singular value) for
// p = 2. For p in {1, inf} a certified upper bound: the max column/row sum of
// the matrix of block spectral norms, blocks of size block_dim (0 means one
// single block, where the bound collapses to the spectral norm).
double operator_norm(const Matrix& M, PNorm p, int block_dim = 0);

// Matrix text format: "rows cols" header, then row-major "re imj" pairs.
void write_matrix(std::ostream& out, const Matrix& M);
Matrix read_matrix(std::istream& in);

}  // namespace cohomolab
