#include "isogroup/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "isogroup/error.hpp"

namespace isogroup {
namespace {

constexpr int kMaxSweeps = 30;
constexpr double kOffDiagonalTol = 1e-12;
// relative slack when deciding which entry is "the" largest one
constexpr double kSignTieTol = 1e-10;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
  return std::sqrt(2.0 * s);
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = a(p, k) = c * akp - s * akq;
    a(k, q) = a(q, k) = s * akp + c * akq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

void fix_sign(std::span<double> vec) {
  double big = 0.0;
  for (double x : vec) big = std::max(big, std::abs(x));
  for (double x : vec) {
    if (std::abs(x) >= big * (1.0 - kSignTieTol)) {
      if (x < 0.0)
        for (double& y : vec) y = -y;
      return;
    }
  }
}

std::uint64_t fnv1a(std::uint64_t h, std::span<const double> xs) {
  for (double x : xs) {
    auto bits = std::bit_cast<std::uint64_t>(x == 0.0 ? 0.0 : x);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

bool is_borderline(std::span<const double> lambdas, double tol) {
  for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
    const double gap = lambdas[i + 1] - lambdas[i];
    if (gap > 0.1 * tol && gap <= 10.0 * tol) return true;
  }
  return false;
}

// Fills clusters/borderline/id once vectors and lambdas are final.
void finalize(SpectralDecomposition& dec, std::optional<double> cluster_tol) {
  dec.cluster_tol = cluster_tol ? *cluster_tol : default_cluster_tol(dec.lambdas);
  const auto m = cluster_eigenvalues(dec.lambdas, dec.cluster_tol);
  dec.clusters.clear();
  std::size_t offset = 0;
  for (std::size_t mi : m) {
    double sum = 0.0;
    for (std::size_t i = offset; i < offset + mi; ++i) sum += dec.lambdas[i];
    dec.clusters.push_back({sum / static_cast<double>(mi), mi});
    offset += mi;
  }
  dec.borderline = is_borderline(dec.lambdas, dec.cluster_tol);
  dec.id = fnv1a(fnv1a(0xcbf29ce484222325ULL, dec.lambdas), dec.vectors.data());
}

// Sorts eigenpairs ascending; `columns` holds eigenvectors as columns.
void sort_into(SpectralDecomposition& dec, const Vector& values, const Matrix& columns) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  dec.lambdas.resize(n);
  dec.vectors = Matrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    dec.lambdas[r] = values[order[r]];
    for (std::size_t k = 0; k < n; ++k) dec.vectors(r, k) = columns(k, order[r]);
  }
}

}  // namespace

bool check_symmetric(const Matrix& a, double symtol) {
  require_square(a, "check_symmetric");
  return asymmetry(a) <= symtol * std::max(1.0, frobenius_norm(a));
}

SymMatrix::SymMatrix(Matrix a, double symtol) : a_(std::move(a)) {
  if (a_.rows() == 0) throw DimensionError("symmetric matrix must be non-empty");
  if (!check_symmetric(a_, symtol))
    throw ArgumentError("matrix is not symmetric: ||A - A^T||_F = " +
                        std::to_string(asymmetry(a_)));
}

std::vector<std::size_t> SpectralDecomposition::multiplicities() const {
  std::vector<std::size_t> m;
  m.reserve(clusters.size());
  for (const auto& c : clusters) m.push_back(c.multiplicity);
  return m;
}

std::size_t SpectralDecomposition::cluster_offset(std::size_t k) const {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < k; ++i) offset += clusters.at(i).multiplicity;
  return offset;
}

double default_cluster_tol(std::span<const double> lambdas) {
  double big = 1.0;
  for (double l : lambdas) big = std::max(big, std::abs(l));
  return 1e-8 * big;
}

std::vector<std::size_t> cluster_eigenvalues(std::span<const double> lambdas, double tol) {
  if (!(tol >= 0.0)) throw ArgumentError("cluster tolerance must be non-negative");
  std::vector<std::size_t> m;
  if (lambdas.empty()) return m;
  m.push_back(1);
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    const double gap = lambdas[i] - lambdas[i - 1];
    if (gap < 0.0) throw ArgumentError("eigenvalues must be sorted nondecreasingly");
    if (gap > tol)
      m.push_back(1);
    else
      ++m.back();
  }
  return m;
}

SpectralDecomposition eig_sym(const SymMatrix& sym, std::optional<double> cluster_tol) {
  const std::size_t n = sym.size();
  Matrix a = 0.5 * (sym.matrix() + sym.matrix().transpose());
  Matrix v = Matrix::identity(n);
  const double threshold = kOffDiagonalTol * frobenius_norm(a);

  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > threshold) {
    if (sweep == kMaxSweeps)
      throw NumericalError("Jacobi eigensolver did not converge in " +
                               std::to_string(kMaxSweeps) +
                               " sweeps; off-diagonal norm " + std::to_string(off),
                           off);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    off = off_diagonal_norm(a);
    ++sweep;
  }

  Vector values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);

  SpectralDecomposition dec;
  dec.matrix = sym.matrix();
  sort_into(dec, values, v);
  for (std::size_t r = 0; r < n; ++r) fix_sign(dec.vectors.row(r));
  finalize(dec, cluster_tol);
  return dec;
}

SpectralDecomposition from_basis(const SymMatrix& sym, const Matrix& v, double residual_tol,
                                 std::optional<double> cluster_tol) {
  const std::size_t n = sym.size();
  require_square(v, "from_basis");
  if (v.rows() != n) throw DimensionError("from_basis: basis and matrix sizes differ");

  // modified Gram-Schmidt on the rows, in the given order
  Matrix q = v;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double proj = dot(q.row(i), q.row(j));
      for (std::size_t k = 0; k < n; ++k) q(i, k) -= proj * q(j, k);
    }
    const double len = norm2(q.row(i));
    if (len == 0.0) throw NumericalError("from_basis: basis rows are dependent", 0.0);
    for (double& x : q.row(i)) x /= len;
  }

  const Matrix d = q * sym.matrix() * q.transpose();
  Vector values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = d(i, i);
  const double residual = frobenius_norm(d - Matrix::diagonal(values));
  if (residual > residual_tol * std::max(1.0, sym.norm()))
    throw NumericalError("from_basis: basis does not diagonalise the matrix (residual " +
                             std::to_string(residual) + ")",
                         residual);

  SpectralDecomposition dec;
  dec.matrix = sym.matrix();
  sort_into(dec, values, q.transpose());
  finalize(dec, cluster_tol);
  return dec;
}

SpectralDecomposition change_basis(const SpectralDecomposition& dec,
                                   std::span<const Matrix> blocks) {
  if (blocks.size() != dec.clusters.size())
    throw DimensionError("change_basis: need one block per eigenvalue cluster");
  SpectralDecomposition out = dec;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::size_t m = dec.clusters[k].multiplicity;
    const std::size_t offset = dec.cluster_offset(k);
    if (blocks[k].rows() != m || blocks[k].cols() != m)
      throw DimensionError("change_basis: block " + std::to_string(k) + " must be " +
                           std::to_string(m) + "x" + std::to_string(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < dec.size(); ++c) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += blocks[k](i, j) * dec.vectors(offset + j, c);
        out.vectors(offset + i, c) = s;
      }
    }
  }
  out.id = fnv1a(fnv1a(0xcbf29ce484222325ULL, out.lambdas), out.vectors.data());
  return out;
}

double reconstruction_residual(const SpectralDecomposition& dec) {
  return frobenius_norm(dec.vectors * dec.matrix * dec.vectors.transpose() -
                        Matrix::diagonal(dec.lambdas));
}

}  // namespace isogroup
