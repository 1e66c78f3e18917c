#include <cmath>
#include <random>
#include <sstream>

#include "cohomolab/cochain.hpp"
#include "cohomolab/errors.hpp"
#include "cohomolab/linalg.hpp"
#include "doctest.h"

using namespace cohomolab;

namespace {

// Direct 2-cell boundary oracle: walk the relator keeping pi(prefix) as a
// running product; a positive occurrence of g contributes +pi(prefix), a
// negative one -pi(prefix g^-1). No group-ring machinery involved.
std::vector<Matrix> relator_blocks(const Representation& pi, const Word& r, int gens) {
  std::vector<Matrix> blocks(gens, Matrix::Zero(pi.dim, pi.dim));
  Matrix pre = Matrix::Identity(pi.dim, pi.dim);
  for (const Letter& l : r.letters) {
    if (l.sign > 0) {
      blocks[l.gen] += pre;
      pre = pre * pi.gen_images[l.gen];
    } else {
      pre = pre * pi.gen_inverses[l.gen];
      blocks[l.gen] -= pre;
    }
  }
  return blocks;
}

Representation char_rep(std::vector<double> turns) {
  std::vector<Matrix> images;
  for (double t : turns) {
    Matrix m(1, 1);
    m(0, 0) = std::polar(1.0, 2.0 * M_PI * t);
    images.push_back(m);
  }
  return make_representation(std::move(images), "chi");
}

}  // namespace

TEST_SUITE_BEGIN("cochain");

TEST_CASE("frozen torus codifferentials at the sign character") {
  EquivariantComplex X = presentation_complex(presentation_Z2());
  Representation pi = char_rep({0.5, 0.5});
  Matrix D0 = codifferential(X, pi, 0);
  REQUIRE(D0.rows() == 2);
  REQUIRE(D0.cols() == 1);
  CHECK(std::abs(D0(0, 0) - Complex(-2.0, 0.0)) < 1e-15);
  CHECK(std::abs(D0(1, 0) - Complex(-2.0, 0.0)) < 1e-15);
  Matrix D1 = codifferential(X, pi, 1);
  REQUIRE(D1.rows() == 1);
  REQUIRE(D1.cols() == 2);
  CHECK(std::abs(D1(0, 0) - Complex(2.0, 0.0)) < 1e-15);
  CHECK(std::abs(D1(0, 1) - Complex(-2.0, 0.0)) < 1e-15);
  CHECK(spectral_norm(D1 * D0) < 1e-14);
}

TEST_CASE("codifferential blocks match the prefix-walk oracle") {
  GroupPresentation P = presentation_Z2();
  EquivariantComplex X = presentation_complex(P);
  for (int dim = 1; dim <= 3; ++dim) {
    Representation pi = random_unitary_rep(P, dim, 400 + dim);
    Matrix D0 = codifferential(X, pi, 0);
    Matrix expected0(2 * dim, dim);
    expected0.topRows(dim) = pi.gen_images[0] - Matrix::Identity(dim, dim);
    expected0.bottomRows(dim) = pi.gen_images[1] - Matrix::Identity(dim, dim);
    CHECK(spectral_norm(D0 - expected0) < 1e-13);

    auto blocks = relator_blocks(pi, P.relators[0], 2);
    Matrix D1 = codifferential(X, pi, 1);
    Matrix expected1(dim, 2 * dim);
    expected1.leftCols(dim) = blocks[0];
    expected1.rightCols(dim) = blocks[1];
    CHECK(spectral_norm(D1 - expected1) < 1e-13);
  }
  // same oracle on the torsion relator aaa
  GroupPresentation P3 = presentation_Z3();
  EquivariantComplex X3 = presentation_complex(P3);
  Representation rho = random_unitary_rep(P3, 3, 90);
  auto blocks = relator_blocks(rho, P3.relators[0], 1);
  CHECK(spectral_norm(codifferential(X3, rho, 1) - blocks[0]) < 1e-13);
}

TEST_CASE("top-degree codifferential is the zero map with the right shape") {
  EquivariantComplex X = presentation_complex(presentation_Z2());
  Representation pi = random_unitary_rep(presentation_Z2(), 3, 8);
  Matrix top = codifferential(X, pi, X.max_degree);
  CHECK(top.rows() == 0);
  CHECK(top.cols() == 3 * X.cells[X.max_degree]);
  CHECK_THROWS_AS(codifferential(X, pi, -1), VerificationError);
  CHECK_THROWS_AS(codifferential(X, pi, X.max_degree + 1), VerificationError);
}

TEST_CASE("d compose d vanishes within the scaled tolerance") {
  for (const char* name : {"Z2", "Z3"}) {
    GroupPresentation P = preset_presentation(name);
    EquivariantComplex X = presentation_complex(P);
    for (int s = 0; s < 3; ++s) {
      Representation pi = random_unitary_rep(P, 3, 500 + s);
      Matrix lo = codifferential(X, pi, 0);
      Matrix hi = codifferential(X, pi, 1);
      CHECK(spectral_norm(hi * lo) <= 1e-10 * (1.0 + spectral_norm(hi) * spectral_norm(lo)));
    }
  }
}

TEST_CASE("laplacian assembles the two-sided formula") {
  GroupPresentation P = presentation_Z2();
  EquivariantComplex X = presentation_complex(P);
  Representation pi = random_unitary_rep(P, 2, 12);
  Matrix d0 = codifferential(X, pi, 0);
  Matrix d1 = codifferential(X, pi, 1);
  CHECK(spectral_norm(laplacian(X, pi, 0) - d0.adjoint() * d0) < 1e-13);
  CHECK(spectral_norm(laplacian(X, pi, 1) - (d0 * d0.adjoint() + d1.adjoint() * d1)) < 1e-13);
  CHECK(spectral_norm(laplacian(X, pi, 2) - d1 * d1.adjoint()) < 1e-13);
  // frozen scalar case: torus sign character has Delta^1 = 8 I
  Representation chi = char_rep({0.5, 0.5});
  Matrix delta1 = laplacian(X, chi, 1);
  CHECK(spectral_norm(delta1 - 8.0 * Matrix::Identity(2, 2)) < 1e-13);
}

TEST_CASE("cochain norms mix euclidean blocks with an l_p envelope") {
  Vector f(4);
  f << Complex(3, 0), Complex(4, 0), Complex(5, 0), Complex(12, 0);
  CHECK(cochain_norm(f, 2, PNorm::one) == doctest::Approx(18.0));
  CHECK(cochain_norm(f, 2, PNorm::two) == doctest::Approx(std::sqrt(194.0)));
  CHECK(cochain_norm(f, 2, PNorm::inf) == doctest::Approx(13.0));
  CHECK(cochain_norm(f, 4, PNorm::inf) == doctest::Approx(std::sqrt(9 + 16 + 25 + 144)));
  CHECK(parse_pnorm("1") == PNorm::one);
  CHECK(parse_pnorm("2") == PNorm::two);
  CHECK(parse_pnorm("inf") == PNorm::inf);
  CHECK_THROWS_AS(parse_pnorm("3"), ParseError);
}

TEST_CASE("operator norm: exact at p=2, certified block bound at p=1,inf") {
  Matrix M(2, 2);
  M << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
  Eigen::JacobiSVD<Matrix> svd(M);
  CHECK(operator_norm(M, PNorm::two) == doctest::Approx(svd.singularValues()(0)));
  // 1x1 blocks: matrix of absolute values, max column/row sum
  CHECK(operator_norm(M, PNorm::one, 1) == doctest::Approx(6.0));
  CHECK(operator_norm(M, PNorm::inf, 1) == doctest::Approx(7.0));
  // block_dim 0: single block, bound collapses to the spectral norm
  CHECK(operator_norm(M, PNorm::one, 0) == doctest::Approx(svd.singularValues()(0)));
  // certified: the bound dominates ||Mf||_p / ||f||_p for random cochains
  std::mt19937_64 rng(6);
  Matrix B = random_gaussian(6, 6, rng);
  for (PNorm p : {PNorm::one, PNorm::inf}) {
    double bound = operator_norm(B, p, 2);
    for (int t = 0; t < 20; ++t) {
      Vector f = random_gaussian(6, 1, rng);
      CHECK(cochain_norm(B * f, 2, p) <= bound * cochain_norm(f, 2, p) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("matrix file round-trip is exact") {
  std::mt19937_64 rng(14);
  Matrix M = random_gaussian(3, 5, rng);
  std::ostringstream out;
  write_matrix(out, M);
  std::istringstream in(out.str());
  Matrix back = read_matrix(in);
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 5);
  CHECK(spectral_norm(back - M) == 0.0);
  std::istringstream bad("2 2\n1+0j 2+0j\n");
  CHECK_THROWS_AS(read_matrix(bad), ParseError);
}

TEST_SUITE_END();
