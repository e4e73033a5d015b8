#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "isogroup/matrix.hpp"

namespace isogroup {

inline constexpr double kDefaultSymTol = 1e-10;

/// True iff ||A - A^T||_F <= symtol * max(1, ||A||_F). Throws DimensionError
/// for non-square input.
bool check_symmetric(const Matrix& a, double symtol = kDefaultSymTol);

/// A square matrix that passed check_symmetric at construction.
class SymMatrix {
 public:
  explicit SymMatrix(Matrix a, double symtol = kDefaultSymTol);

  std::size_t size() const { return a_.rows(); }
  const Matrix& matrix() const { return a_; }
  double operator()(std::size_t i, std::size_t j) const { return a_(i, j); }
  double norm() const { return frobenius_norm(a_); }

 private:
  Matrix a_;
};

struct Cluster {
  double value;             ///< mean of the grouped eigenvalues
  std::size_t multiplicity;
};

/// A = V^T diag(lambdas) V with V orthogonal and eigenvectors stored as the
/// rows of V. Eigenvalues are nondecreasing and grouped into clusters whose
/// sizes form the multiplicity vector.
struct SpectralDecomposition {
  Matrix matrix;   ///< the decomposed matrix A
  Matrix vectors;  ///< V, one eigenvector per row
  Vector lambdas;
  std::vector<Cluster> clusters;
  double cluster_tol = 0.0;
  /// Set when some adjacent eigenvalue gap lies within a factor of ten of
  /// cluster_tol, i.e. the grouping is sensitive to the tolerance.
  bool borderline = false;
  /// Content hash of (lambdas, vectors); identifies the basis an
  /// isotropy element was built from.
  std::uint64_t id = 0;

  std::size_t size() const { return lambdas.size(); }
  std::vector<std::size_t> multiplicities() const;
  /// Row index of the first eigenvector of cluster k.
  std::size_t cluster_offset(std::size_t k) const;
};

/// 1e-8 * max(1, max |lambda|).
double default_cluster_tol(std::span<const double> lambdas);

/// Greedy left-to-right grouping: a new cluster starts whenever the next
/// eigenvalue exceeds the previous one by more than tol.
std::vector<std::size_t> cluster_eigenvalues(std::span<const double> lambdas, double tol);

/// Cyclic Jacobi eigendecomposition.
///
/// Rotations sweep the strict upper triangle in row-major order until the
/// off-diagonal Frobenius norm drops to 1e-12 ||A||_F (at most 30 sweeps).
/// Eigenvalues are sorted ascending (stable in the original index) and each
/// eigenvector is signed so that its first entry of largest magnitude is
/// positive. Throws NumericalError carrying the off-diagonal residual when
/// the sweep limit is hit.
SpectralDecomposition eig_sym(const SymMatrix& a,
                              std::optional<double> cluster_tol = std::nullopt);

/// Builds a decomposition around a caller-supplied eigenbasis (rows of v),
/// e.g. a basis given to a few decimals. The rows are re-orthonormalised
/// in order, eigenvalues are the Rayleigh quotients, and rows are sorted by
/// eigenvalue. Signs are kept as given. Throws NumericalError when
/// ||V A V^T - diag||_F exceeds residual_tol * max(1, ||A||_F).
SpectralDecomposition from_basis(const SymMatrix& a, const Matrix& v, double residual_tol,
                                 std::optional<double> cluster_tol = std::nullopt);

/// Replaces V by blockdiag(blocks) V, one orthogonal block per cluster. The
/// result diagonalises the same matrix with a rotated basis inside each
/// eigenspace.
SpectralDecomposition change_basis(const SpectralDecomposition& dec,
                                   std::span<const Matrix> blocks);

/// ||V A V^T - diag(lambdas)||_F.
double reconstruction_residual(const SpectralDecomposition& dec);

}  // namespace isogroup
