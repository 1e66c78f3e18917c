#include "cohomolab/representation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cohomolab/errors.hpp"
#include "cohomolab/linalg.hpp"
#include "cohomolab/text_format.hpp"

namespace cohomolab {

namespace {

constexpr int kMaxRescaleAttempts = 100;

std::string gen_letter(int g) { return std::string(1, static_cast<char>('a' + g)); }

// kron(B^T, A): the matrix of X -> A X B in the column-major basis.
Matrix conjugation_operator(const Matrix& A, const Matrix& B) {
  const int d = static_cast<int>(A.rows());
  Matrix out(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      out.block(i * d, j * d, d, d) = B(j, i) * A;  // (B^T)(i,j) * A
  return out;
}

bool is_diagonal_matrix(const Matrix& M) {
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j)
      if (i != j && std::abs(M(i, j)) > 1e-14 * (1.0 + M.cwiseAbs().maxCoeff())) return false;
  return true;
}

}  // namespace

Representation make_representation(std::vector<Matrix> images, std::string label) {
  Representation pi;
  pi.label = std::move(label);
  if (images.empty()) throw VerificationError("representation '" + pi.label + "': no generators");
  pi.dim = static_cast<int>(images[0].rows());
  for (size_t g = 0; g < images.size(); ++g) {
    const Matrix& M = images[g];
    std::string who = "representation '" + pi.label + "', generator " + gen_letter(static_cast<int>(g));
    if (M.rows() != M.cols() || M.rows() != pi.dim)
      throw VerificationError(who + ": images must be square and of equal size");
    double cond = condition_number(M);
    if (!(cond <= kConditionCap))
      throw VerificationError(who + ": not invertible within condition cap 1e12 (cond = " +
                              format_real(cond) + ")");
    pi.gen_inverses.push_back(M.inverse());
  }
  pi.gen_images = std::move(images);
  return pi;
}

Matrix evaluate(const Representation& pi, const Word& w) {
  Matrix out = Matrix::Identity(pi.dim, pi.dim);
  for (const Letter& l : w.letters) {
    if (l.gen < 0 || l.gen >= pi.generator_count())
      throw VerificationError("word uses generator " + gen_letter(l.gen) +
                              " but representation '" + pi.label + "' has " +
                              std::to_string(pi.generator_count()));
    out = out * (l.sign > 0 ? pi.gen_images[l.gen] : pi.gen_inverses[l.gen]);
  }
  return out;
}

Matrix evaluate(const Representation& pi, const GroupRingElement& a) {
  Matrix out = Matrix::Zero(pi.dim, pi.dim);
  for (const auto& [w, c] : a.terms()) out += static_cast<double>(c) * evaluate(pi, w);
  return out;
}

double relator_defect(const Representation& pi, const GroupPresentation& P) {
  double worst = 0.0;
  Matrix I = Matrix::Identity(pi.dim, pi.dim);
  for (const Word& r : P.relators)
    worst = std::max(worst, spectral_norm(evaluate(pi, r) - I));
  return worst;
}

void verify_representation(const Representation& pi, const GroupPresentation& P, double tol) {
  if (pi.generator_count() < P.generator_count)
    throw VerificationError("representation '" + pi.label + "' has " +
                            std::to_string(pi.generator_count()) + " generator images, presentation '" +
                            P.name + "' needs " + std::to_string(P.generator_count));
  double defect = relator_defect(pi, P);
  if (!(defect <= tol))
    throw VerificationError("representation '" + pi.label + "' violates a relator of '" + P.name +
                            "': defect " + format_real(defect) + " > " + format_real(tol));
}

bool is_unitary(const Representation& pi, double tol) {
  Matrix I = Matrix::Identity(pi.dim, pi.dim);
  for (const Matrix& M : pi.gen_images)
    if (spectral_norm(M * M.adjoint() - I) > tol) return false;
  return true;
}

double deformation_distance(const Representation& pi, const Representation& rho) {
  if (pi.dim != rho.dim || pi.generator_count() != rho.generator_count())
    throw VerificationError("deformation_distance: representations live on different spaces");
  double d = 0.0;
  for (int g = 0; g < pi.generator_count(); ++g) {
    d = std::max(d, spectral_norm(pi.gen_images[g] - rho.gen_images[g]));
    d = std::max(d, spectral_norm(pi.gen_inverses[g] - rho.gen_inverses[g]));
  }
  return d;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (a.generator_count() != b.generator_count())
    throw VerificationError("direct_sum: generator counts differ");
  std::vector<Matrix> images;
  for (int g = 0; g < a.generator_count(); ++g) {
    Matrix M = Matrix::Zero(a.dim + b.dim, a.dim + b.dim);
    M.topLeftCorner(a.dim, a.dim) = a.gen_images[g];
    M.bottomRightCorner(b.dim, b.dim) = b.gen_images[g];
    images.push_back(std::move(M));
  }
  return make_representation(std::move(images), a.label + "+" + b.label);
}

Representation conjugation_deformation(const Representation& pi, const Matrix& T) {
  double cond = condition_number(T);
  if (!(cond <= kConditionCap))
    throw VerificationError("conjugation_deformation: cond(T) = " + format_real(cond) +
                            " exceeds 1e12");
  Matrix Tinv = T.inverse();
  std::vector<Matrix> images;
  for (const Matrix& M : pi.gen_images) images.push_back(T * M * Tinv);
  return make_representation(std::move(images), pi.label + ".conj");
}

Matrix derivation_on_word(const Representation& pi, const Representation& pi2,
                          const std::vector<Matrix>& D, const Word& w) {
  Matrix val = Matrix::Zero(pi.dim, pi2.dim);
  Matrix left = Matrix::Identity(pi.dim, pi.dim);
  for (const Letter& l : w.letters) {
    Matrix Dx = l.sign > 0 ? D[l.gen]
                           : Matrix(-pi.gen_inverses[l.gen] * D[l.gen] * pi2.gen_inverses[l.gen]);
    const Matrix& px2 = l.sign > 0 ? pi2.gen_images[l.gen] : pi2.gen_inverses[l.gen];
    const Matrix& px1 = l.sign > 0 ? pi.gen_images[l.gen] : pi.gen_inverses[l.gen];
    val = val * px2 + left * Dx;
    left = left * px1;
  }
  return val;
}

Representation derivation_twist(const GroupPresentation& P, const Representation& pi,
                                const Representation& pi2, const std::vector<Matrix>& D,
                                double alpha) {
  if (static_cast<int>(D.size()) < P.generator_count)
    throw VerificationError("derivation_twist: one matrix per generator required");
  for (const Matrix& Dg : D)
    if (Dg.rows() != pi.dim || Dg.cols() != pi2.dim)
      throw VerificationError("derivation_twist: derivation blocks must be dim(pi) x dim(pi2)");
  for (const Word& r : P.relators) {
    double defect = spectral_norm(derivation_on_word(pi, pi2, D, r));
    if (!(defect <= kRelatorTol * (1.0 + spectral_norm(D[0]))))
      throw VerificationError("derivation_twist: derivation identity fails on relator '" +
                              format_word(r) + "' (defect " + format_real(defect) + ")");
  }
  std::vector<Matrix> images;
  for (int g = 0; g < P.generator_count; ++g) {
    Matrix M = Matrix::Zero(pi.dim + pi2.dim, pi.dim + pi2.dim);
    M.topLeftCorner(pi.dim, pi.dim) = pi.gen_images[g];
    M.topRightCorner(pi.dim, pi2.dim) = alpha * D[g];
    M.bottomRightCorner(pi2.dim, pi2.dim) = pi2.gen_images[g];
    images.push_back(std::move(M));
  }
  return make_representation(std::move(images),
                             pi.label + "|" + pi2.label + ".twist(" + format_real(alpha) + ")");
}

Representation circle_discretization(int N) {
  if (N < 2) throw VerificationError("circle_discretization: N must be >= 2");
  Matrix M = Matrix::Zero(N - 1, N - 1);
  for (int k = 1; k < N; ++k)
    M(k - 1, k - 1) = std::polar(1.0, 2.0 * std::numbers::pi * k / N);
  return make_representation({std::move(M)}, "circle:" + std::to_string(N));
}

Representation circle_mode_flatten(const Representation& pi, int m) {
  if (pi.generator_count() != 1 || !is_diagonal_matrix(pi.gen_images[0]))
    throw VerificationError("circle_mode_flatten: needs a one-generator diagonal representation");
  if (m < 0 || m > pi.dim)
    throw VerificationError("circle_mode_flatten: m out of range [0, dim]");
  std::vector<std::pair<double, int>> by_distance;
  for (int k = 0; k < pi.dim; ++k)
    by_distance.emplace_back(std::abs(pi.gen_images[0](k, k) - 1.0), k);
  std::stable_sort(by_distance.begin(), by_distance.end());
  Matrix M = pi.gen_images[0];
  for (int i = 0; i < m; ++i) M(by_distance[i].second, by_distance[i].second) = 1.0;
  return make_representation({std::move(M)}, pi.label + ".flat(" + std::to_string(m) + ")");
}

Representation adjoint_rep(const Representation& phi) {
  std::vector<Matrix> images;
  for (int g = 0; g < phi.generator_count(); ++g)
    images.push_back(conjugation_operator(phi.gen_images[g], phi.gen_inverses[g]));
  return make_representation(std::move(images), "Ad(" + phi.label + ")");
}

DeformationKind parse_deformation_kind(std::string_view name) {
  if (name == "conjugation") return DeformationKind::conjugation;
  if (name == "derivation" || name == "derivation_twist") return DeformationKind::derivation_twist;
  if (name == "diagonal" || name == "diagonal_perturbation")
    return DeformationKind::diagonal_perturbation;
  if (name == "flatten" || name == "circle_mode_flatten") return DeformationKind::circle_mode_flatten;
  if (name == "free" || name == "free_arbitrary") return DeformationKind::free_arbitrary;
  throw ParseError("unknown deformation kind '" + std::string(name) +
                   "' (have conjugation, derivation, diagonal, flatten, free)");
}

std::string_view deformation_kind_name(DeformationKind k) {
  switch (k) {
    case DeformationKind::conjugation: return "conjugation";
    case DeformationKind::derivation_twist: return "derivation";
    case DeformationKind::diagonal_perturbation: return "diagonal";
    case DeformationKind::circle_mode_flatten: return "flatten";
    case DeformationKind::free_arbitrary: return "free";
  }
  return "?";
}

Matrix random_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix M(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) M(i, j) = Complex(gauss(rng), gauss(rng));
  return M;
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
  Matrix A = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(A);
  Matrix Q = qr.householderQ();
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so Q is Haar-distributed.
  for (int j = 0; j < dim; ++j) {
    Complex r = R(j, j);
    Q.col(j) *= (std::abs(r) > 0 ? r / std::abs(r) : Complex(1, 0));
  }
  return Q;
}

namespace {

// The distance window the dispatcher must land in.
bool in_window(double d, double eps) { return d >= 0.99 * eps && d <= eps * (1.0 + 1e-12); }

// Multiplicative secant step toward 0.995*eps.
double rescale(double t, double measured, double eps) {
  if (measured <= 0) return t * 2.0;
  return t * (0.995 * eps / measured);
}

Representation deform_conjugation(const Representation& pi, const GroupPresentation& P,
                                  double eps, std::mt19937_64& rng) {
  Matrix K = random_gaussian(pi.dim, pi.dim, rng);
  K /= spectral_norm(K);
  double t = 0.25 * eps;
  for (int attempt = 0; attempt < kMaxRescaleAttempts; ++attempt) {
    Matrix T = Matrix::Identity(pi.dim, pi.dim) + t * K;
    if (condition_number(T) > kConditionCap) {
      t *= 0.5;
      continue;
    }
    Representation rho = conjugation_deformation(pi, T);
    double d = deformation_distance(pi, rho);
    if (in_window(d, eps)) {
      verify_representation(rho, P);
      return rho;
    }
    t = rescale(t, d, eps);
  }
  throw VerificationError("random_deformation(conjugation): could not land in [0.99eps, eps] after " +
                          std::to_string(kMaxRescaleAttempts) + " attempts");
}

Representation deform_free(const Representation& pi, const GroupPresentation& P, double eps,
                           std::mt19937_64& rng) {
  if (!P.relators.empty())
    throw VerificationError("random_deformation(free): free_arbitrary needs a relator-free presentation");
  std::vector<Matrix> G;
  for (int g = 0; g < pi.generator_count(); ++g) {
    Matrix M = random_gaussian(pi.dim, pi.dim, rng);
    G.push_back(M / spectral_norm(M));
  }
  double t = 0.5 * eps;
  for (int attempt = 0; attempt < kMaxRescaleAttempts; ++attempt) {
    std::vector<Matrix> images;
    bool invertible = true;
    for (int g = 0; g < pi.generator_count(); ++g) {
      Matrix M = pi.gen_images[g] + t * G[g];
      if (condition_number(M) > kConditionCap) invertible = false;
      images.push_back(std::move(M));
    }
    if (!invertible) {
      t *= 0.5;
      continue;
    }
    Representation rho = make_representation(std::move(images), pi.label + ".free");
    double d = deformation_distance(pi, rho);
    if (in_window(d, eps)) return rho;
    t = rescale(t, d, eps);
  }
  throw VerificationError("random_deformation(free): could not land in [0.99eps, eps] after " +
                          std::to_string(kMaxRescaleAttempts) + " attempts");
}

Representation deform_diagonal(const Representation& pi, const GroupPresentation& P, double eps,
                               std::mt19937_64& rng) {
  for (const Matrix& M : pi.gen_images)
    if (!is_diagonal_matrix(M))
      throw VerificationError(
          "random_deformation(diagonal): generator images must be simultaneously diagonal");
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<Eigen::VectorXd> arcs;
  double max_arc = 0.0;
  for (int g = 0; g < pi.generator_count(); ++g) {
    Eigen::VectorXd u(pi.dim);
    for (int k = 0; k < pi.dim; ++k) {
      u(k) = uni(rng);
      max_arc = std::max(max_arc, std::abs(u(k)));
    }
    arcs.push_back(std::move(u));
  }
  if (max_arc == 0.0)
    throw VerificationError("random_deformation(diagonal): degenerate draw");
  // d(t) = 2 sin(t * max_arc / 2) for phase perturbations, solve then polish.
  double t = (eps < 2.0) ? 2.0 * std::asin(0.995 * eps / 2.0) / max_arc : 1.0;
  std::string last_failure;
  for (int attempt = 0; attempt < kMaxRescaleAttempts; ++attempt) {
    std::vector<Matrix> images;
    for (int g = 0; g < pi.generator_count(); ++g) {
      Matrix M = pi.gen_images[g];
      for (int k = 0; k < pi.dim; ++k) M(k, k) *= std::polar(1.0, t * arcs[g](k));
      images.push_back(std::move(M));
    }
    Representation rho = make_representation(std::move(images), pi.label + ".diag");
    double defect = relator_defect(rho, P);
    if (defect > kRelatorTol) {
      // Phases break a relator (torsion): shrinking cannot fix the window.
      last_failure = "relator defect " + format_real(defect) + " at distance window";
      t *= 0.5;
      continue;
    }
    double d = deformation_distance(pi, rho);
    if (in_window(d, eps)) return rho;
    t = rescale(t, d, eps);
  }
  throw VerificationError("random_deformation(diagonal): could not land in [0.99eps, eps] after " +
                          std::to_string(kMaxRescaleAttempts) + " attempts" +
                          (last_failure.empty() ? "" : "; " + last_failure));
}

Representation deform_flatten(const Representation& pi, const GroupPresentation& P, double eps) {
  if (pi.generator_count() != 1 || !is_diagonal_matrix(pi.gen_images[0]))
    throw VerificationError("random_deformation(flatten): needs the diagonal circle model");
  int m = 0;
  for (int k = 0; k < pi.dim; ++k)
    if (std::abs(pi.gen_images[0](k, k) - 1.0) <= eps * (1.0 + 1e-12)) ++m;
  if (m == 0)
    throw VerificationError("random_deformation(flatten): no mode within eps of 1");
  Representation rho = circle_mode_flatten(pi, m);
  double d = deformation_distance(pi, rho);
  if (!in_window(d, eps))
    throw VerificationError("random_deformation(flatten): flattened distance " + format_real(d) +
                            " misses [0.99eps, eps]");
  verify_representation(rho, P);
  return rho;
}

Representation deform_derivation(const Representation& pi, const GroupPresentation& P, double eps,
                                 std::mt19937_64& rng) {
  if (pi.dim % 2 != 0)
    throw VerificationError("random_deformation(derivation): needs an even-dimensional block-diagonal input");
  const int m = pi.dim / 2;
  std::vector<Matrix> top, bottom;
  for (const Matrix& M : pi.gen_images) {
    double scale = 1.0 + M.cwiseAbs().maxCoeff();
    if (M.topRightCorner(m, m).cwiseAbs().maxCoeff() > 1e-12 * scale ||
        M.bottomLeftCorner(m, m).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw VerificationError(
          "random_deformation(derivation): input must be block-diagonal with two equal blocks");
    top.push_back(M.topLeftCorner(m, m));
    bottom.push_back(M.bottomRightCorner(m, m));
  }
  Representation pi1 = make_representation(top, pi.label + ".top");
  Representation pi2 = make_representation(bottom, pi.label + ".bot");

  // D(r) = 0 is linear in the generator blocks; sample from the nullspace.
  const int k = pi.generator_count();
  const int unknowns = k * m * m;
  Matrix constraints = Matrix::Zero(static_cast<int>(P.relators.size()) * m * m, unknowns);
  for (size_t ri = 0; ri < P.relators.size(); ++ri) {
    const Word& r = P.relators[ri];
    for (int i = 0; i < r.size(); ++i) {
      const Letter& l = r.letters[i];
      Matrix A = evaluate(pi1, prefix(r, i));
      Matrix B = evaluate(pi2, Word{{r.letters.begin() + i + 1, r.letters.end()}});
      if (l.sign < 0) {
        A = -A * pi1.gen_inverses[l.gen];
        B = pi2.gen_inverses[l.gen] * B;
      }
      constraints.block(static_cast<int>(ri) * m * m, l.gen * m * m, m * m, m * m) +=
          conjugation_operator(A, B);
    }
  }
  Matrix kernel;
  if (constraints.rows() == 0) {
    kernel = Matrix::Identity(unknowns, unknowns);
  } else {
    Eigen::JacobiSVD<Matrix> svd(constraints, Eigen::ComputeFullV);
    double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    double tol = std::max(constraints.rows(), constraints.cols()) *
                 std::numeric_limits<double>::epsilon() * smax;
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > tol) ++rank;
    if (rank == unknowns)
      throw VerificationError("random_deformation(derivation): only the zero derivation exists here");
    kernel = svd.matrixV().rightCols(unknowns - rank);
  }
  Vector coeffs = random_gaussian(static_cast<int>(kernel.cols()), 1, rng);
  Vector vecD = kernel * coeffs;
  std::vector<Matrix> D;
  double dmax = 0.0;
  for (int g = 0; g < k; ++g) {
    Matrix Dg(m, m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) Dg(i, j) = vecD(g * m * m + j * m + i);
    dmax = std::max(dmax, spectral_norm(Dg));
    D.push_back(std::move(Dg));
  }
  if (dmax <= 0)
    throw VerificationError("random_deformation(derivation): degenerate draw");
  for (Matrix& Dg : D) Dg /= dmax;

  double alpha = 0.995 * eps;  // distance is exactly linear in alpha
  for (int attempt = 0; attempt < kMaxRescaleAttempts; ++attempt) {
    Representation rho = derivation_twist(P, pi1, pi2, D, alpha);
    double d = deformation_distance(pi, rho);
    if (in_window(d, eps)) {
      verify_representation(rho, P);
      return rho;
    }
    alpha = rescale(alpha, d, eps);
  }
  throw VerificationError("random_deformation(derivation): could not land in [0.99eps, eps] after " +
                          std::to_string(kMaxRescaleAttempts) + " attempts");
}

}  // namespace

Representation random_deformation(const Representation& pi, const GroupPresentation& P,
                                  const DeformationSpec& spec) {
  if (spec.epsilon < 0)
    throw VerificationError("random_deformation: negative epsilon");
  if (spec.epsilon == 0.0) {
    Representation rho = pi;
    rho.label = pi.label + ".copy";
    return rho;
  }
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case DeformationKind::conjugation: return deform_conjugation(pi, P, spec.epsilon, rng);
    case DeformationKind::derivation_twist: return deform_derivation(pi, P, spec.epsilon, rng);
    case DeformationKind::diagonal_perturbation: return deform_diagonal(pi, P, spec.epsilon, rng);
    case DeformationKind::circle_mode_flatten: return deform_flatten(pi, P, spec.epsilon);
    case DeformationKind::free_arbitrary: return deform_free(pi, P, spec.epsilon, rng);
  }
  throw VerificationError("random_deformation: unknown kind");
}

Representation random_unitary_rep(const GroupPresentation& P, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::string label = P.name + ".haar" + std::to_string(dim) + "@" + std::to_string(seed);
  std::vector<Matrix> images;
  if (P.relators.empty()) {
    for (int g = 0; g < P.generator_count; ++g) images.push_back(random_unitary(dim, rng));
  } else {
    bool commutator_only = true;
    for (const Word& r : P.relators) {
      std::vector<int> net(P.generator_count, 0);
      for (const Letter& l : r.letters) net[l.gen] += l.sign;
      for (int s : net) commutator_only &= (s == 0);
    }
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
    Matrix U = random_unitary(dim, rng);
    if (commutator_only) {
      // Commuting unitaries with a shared eigenbasis satisfy every relator
      // whose exponent sums vanish.
      for (int g = 0; g < P.generator_count; ++g) {
        Matrix L = Matrix::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) L(i, i) = std::polar(1.0, uni(rng));
        images.push_back(U * L * U.adjoint());
      }
    } else if (P.generator_count == 1 && P.relators.size() == 1) {
      // Single power relator a^k: eigenvalues are k-th roots of unity.
      int k = P.relators[0].size();
      std::uniform_int_distribution<int> root(0, k - 1);
      Matrix L = Matrix::Zero(dim, dim);
      for (int i = 0; i < dim; ++i)
        L(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * root(rng) / k);
      images.push_back(U * L * U.adjoint());
    } else {
      throw VerificationError("random_unitary_rep: no construction for presentation '" + P.name +
                              "'");
    }
  }
  Representation pi = make_representation(std::move(images), label);
  verify_representation(pi, P);
  return pi;
}

Representation read_representation(std::istream& in, std::string label) {
  std::string line;
  int line_no = 0;
  int dim = -1;
  std::vector<std::pair<int, Matrix>> gens;
  int pending_gen = -1, pending_row = 0;
  Matrix pending;
  auto flush_pending = [&]() {
    if (pending_gen >= 0) {
      if (pending_row != dim)
        throw ParseError("representation '" + label + "': generator " + gen_letter(pending_gen) +
                         " has " + std::to_string(pending_row) + " rows, expected " +
                         std::to_string(dim));
      gens.emplace_back(pending_gen, pending);
      pending_gen = -1;
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::string_view t = strip_comment(line);
    std::string where = label + ":" + std::to_string(line_no);
    try {
      if (t.rfind("dim:", 0) == 0) {
        dim = static_cast<int>(parse_real(t.substr(4)));
        if (dim < 1) throw ParseError("dim must be >= 1");
      } else if (t.rfind("gen", 0) == 0 && t.back() == ':') {
        if (dim < 1) throw ParseError("'gen' before 'dim:'");
        flush_pending();
        std::string_view name = trim(t.substr(3, t.size() - 4));
        if (name.size() != 1 || name[0] < 'a' || name[0] > 'z')
          throw ParseError("bad generator name '" + std::string(name) + "'");
        pending_gen = name[0] - 'a';
        pending_row = 0;
        pending = Matrix::Zero(dim, dim);
      } else {
        if (pending_gen < 0) throw ParseError("matrix row outside a 'gen' block");
        if (pending_row >= dim) throw ParseError("too many rows in generator block");
        std::istringstream ss{std::string(t)};
        std::string tok;
        for (int j = 0; j < dim; ++j) {
          if (!(ss >> tok)) throw ParseError("expected " + std::to_string(dim) + " entries in row");
          pending(pending_row, j) = parse_complex(tok);
        }
        if (ss >> tok) throw ParseError("trailing tokens in matrix row");
        ++pending_row;
      }
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  flush_pending();
  if (dim < 1) throw ParseError("representation '" + label + "': missing 'dim:' line");
  if (gens.empty()) throw ParseError("representation '" + label + "': no generators");
  std::sort(gens.begin(), gens.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Matrix> images;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].first != static_cast<int>(i))
      throw ParseError("representation '" + label + "': generators must be consecutive from 'a'");
    images.push_back(std::move(gens[i].second));
  }
  return make_representation(std::move(images), std::move(label));
}

Representation read_representation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open representation file '" + path + "'");
  return read_representation(in, path);
}

void write_representation(std::ostream& out, const Representation& pi) {
  out << "dim: " << pi.dim << "\n";
  for (int g = 0; g < pi.generator_count(); ++g) {
    out << "gen " << gen_letter(g) << ":\n";
    for (int i = 0; i < pi.dim; ++i) {
      for (int j = 0; j < pi.dim; ++j) {
        if (j) out << ' ';
        out << format_complex(pi.gen_images[g](i, j));
      }
      out << "\n";
    }
  }
}

}  // namespace cohomolab
