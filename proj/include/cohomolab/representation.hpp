#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "cohomolab/group_ring.hpp"
#include "cohomolab/presentation.hpp"

namespace cohomolab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

constexpr double kRelatorTol = 1e-9;
constexpr double kConditionCap = 1e12;

// Finite-dimensional linear representation: one invertible matrix per
// generator, inverses cached at construction.
struct Representation {
  int dim = 0;
  std::vector<Matrix> gen_images;
  std::vector<Matrix> gen_inverses;
  std::string label;

  int generator_count() const { return static_cast<int>(gen_images.size()); }
};

// Builds a Representation, checking every image is square of equal size and
// invertible with condition number <= 1e12. Throws VerificationError.
Representation make_representation(std::vector<Matrix> images, std::string label = "");

// pi(w) as a matrix product; pi(empty) = I.
Matrix evaluate(const Representation& pi, const Word& w);
// sum of coeff * pi(word) over the terms.
Matrix evaluate(const Representation& pi, const GroupRingElement& a);

// max over relators of ||pi(r) - I||_2 (0 if no relators).
double relator_defect(const Representation& pi, const GroupPresentation& P);
// Throws VerificationError if the defect exceeds tol or a generator is missing.
void verify_representation(const Representation& pi, const GroupPresentation& P,
                           double tol = kRelatorTol);

bool is_unitary(const Representation& pi, double tol = kRelatorTol);

// d_S(pi, rho): sup over generators AND their inverses of the spectral norm
// of the difference. Requires equal dims and generator counts.
double deformation_distance(const Representation& pi, const Representation& rho);

// Block-diagonal sum on E + E'.
Representation direct_sum(const Representation& a, const Representation& b);

// rho(g) = T pi(g) T^-1. Throws VerificationError if cond(T) > 1e12.
Representation conjugation_deformation(const Representation& pi, const Matrix& T);

// Upper-triangular twist  [[pi_g, alpha*D_g], [0, pi2_g]]  for a derivation D
// (one matrix per generator). The derivation identity is checked on every
// relator of P by word extension; violation throws VerificationError.
Representation derivation_twist(const GroupPresentation& P, const Representation& pi,
                                const Representation& pi2, const std::vector<Matrix>& D,
                                double alpha);

// Word extension of a derivation: D(uv) = pi(u) D(v) + D(u) pi2(v),
// D(g^-1) = -pi(g)^-1 D(g) pi2(g)^-1.
Matrix derivation_on_word(const Representation& pi, const Representation& pi2,
                          const std::vector<Matrix>& D, const Word& w);

// Representation of Z of dimension N-1: a -> diag(w, w^2, .., w^{N-1}),
// w = exp(2 pi i / N). Nontrivial frequencies of the N-point circle model.
Representation circle_discretization(int N);

// Sets the m eigenvalues closest to 1 (ties: lower index first) to exactly 1.
// Requires a 1-generator diagonal representation; m = 0 is a no-op.
Representation circle_mode_flatten(const Representation& pi, int m);

// (Ad phi)(g) : M -> phi(g) M phi(g)^-1 on d x d matrices, as a d^2 x d^2
// matrix in the column-major matrix-unit basis.
Representation adjoint_rep(const Representation& phi);

enum class DeformationKind {
  conjugation,
  derivation_twist,
  diagonal_perturbation,
  circle_mode_flatten,
  free_arbitrary,
};

DeformationKind parse_deformation_kind(std::string_view name);
std::string_view deformation_kind_name(DeformationKind k);

struct DeformationSpec {
  DeformationKind kind = DeformationKind::conjugation;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
};

// Seeded strategy dispatcher. Returns a valid representation rho with
// d_S(pi, rho) in [0.99*eps, eps] (exactly pi when eps = 0). Throws
// VerificationError when the kind cannot apply to pi/P or when rescaling
// cannot land in the window after 100 attempts.
Representation random_deformation(const Representation& pi, const GroupPresentation& P,
                                  const DeformationSpec& spec);

// Haar-style random unitary representation compatible with a bundled preset
// family: independent unitaries when P has no relators, simultaneously
// diagonalizable commuting unitaries when all relators are commutators,
// torsion-eigenvalue construction for a single power relator a^k.
Representation random_unitary_rep(const GroupPresentation& P, int dim, std::uint64_t seed);

// Haar-distributed unitary via QR of a Gaussian matrix.
Matrix random_unitary(int dim, std::mt19937_64& rng);
Matrix random_gaussian(int rows, int cols, std::mt19937_64& rng);

// Text format:
//   dim: <d>
//   gen <letter>:
//   <d rows of d entries re+imj>
// 17 significant digits; write -> read round-trips exactly.
Representation read_representation(std::istream& in, std::string label = "");
Representation read_representation_file(const std::string& path);
void write_representation(std::ostream& out, const Representation& pi);

}  // namespace cohomolab
