#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "isogroup/matrix.hpp"
#include "isogroup/spectral.hpp"

namespace isogroup {

/// Diagonal sign matrix diag(s_1, ..., s_n) with s_i in {+1, -1}.
class SignPattern {
 public:
  explicit SignPattern(std::vector<int> signs);
  /// Bit i of `code` set means entry i is -1.
  static SignPattern from_code(std::uint64_t code, std::size_t n);

  std::size_t size() const { return signs_.size(); }
  const std::vector<int>& signs() const { return signs_; }
  std::uint64_t code() const;

  friend bool operator==(const SignPattern&, const SignPattern&) = default;

 private:
  std::vector<int> signs_;
};

/// Element of O_B(m): block-diagonal orthogonal matrix whose i-th block is
/// an m_i x m_i orthogonal matrix.
class BlockOrthogonal {
 public:
  /// Validates every block against ||Q Q^T - I||_F <= 1e-10 * m_i.
  explicit BlockOrthogonal(std::vector<Matrix> blocks);

  static BlockOrthogonal identity(const std::vector<std::size_t>& m);
  /// Splits the sign pattern into diagonal blocks of sizes m.
  static BlockOrthogonal from_signs(const SignPattern& signs,
                                    const std::vector<std::size_t>& m);

  const std::vector<Matrix>& blocks() const { return blocks_; }
  std::vector<std::size_t> multiplicities() const;
  std::size_t size() const;
  /// The implied n x n block-diagonal matrix.
  Matrix full() const;
  BlockOrthogonal transpose() const;

 private:
  std::vector<Matrix> blocks_;
};

/// gamma = V^T sigma V together with where it came from.
struct IsotropyElement {
  Matrix gamma;
  std::variant<SignPattern, BlockOrthogonal> source;
  std::uint64_t decomposition_id = 0;
};

/// gamma = V^T sigma V. Throws StructureError if sigma's block sizes differ
/// from the multiplicity vector of dec.
IsotropyElement conjugate(const SpectralDecomposition& dec, const BlockOrthogonal& sigma);

inline constexpr std::size_t kGamma2Cap = 20;

/// All 2^n sign-group elements V^T diag(+-1) V, ordered by the binary code of
/// the sign pattern (bit i set = entry i negative). Throws SizeCapError for
/// n > 20.
std::vector<IsotropyElement> gamma2_elements(const SpectralDecomposition& dec);

/// Haar-distributed sigma in O_B(m), one haar_orthogonal block per cluster,
/// conjugated into Gamma(A). Deterministic for a fixed seed.
IsotropyElement sample_gamma(const SpectralDecomposition& dec, std::uint64_t seed);

/// ||G A - A G||_F.
double commutator_residual(const Matrix& a, const Matrix& g);

/// G is orthogonal and commutes with the decomposed matrix, both to tol
/// (scaled by n and max(1, ||A||_F) respectively).
bool is_member(const SpectralDecomposition& dec, const Matrix& g, double tol);

/// Index of the element closest to m in max-abs entry distance, and that
/// distance. Used for set-level matching against reference matrices.
std::pair<std::size_t, double> nearest_element(const std::vector<IsotropyElement>& set,
                                               const Matrix& m);

/// Gamma(A) is finite exactly when every eigenvalue is simple.
bool is_finite(const SpectralDecomposition& dec);

}  // namespace isogroup
