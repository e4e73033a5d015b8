#include "isogroup/isotropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "isogroup/error.hpp"
#include "isogroup/random.hpp"

namespace isogroup {
namespace {

std::string format_m(const std::vector<std::size_t>& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(m[i]);
  }
  return s + ")";
}

}  // namespace

SignPattern::SignPattern(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_)
    if (s != 1 && s != -1) throw ArgumentError("sign pattern entries must be +1 or -1");
}

SignPattern SignPattern::from_code(std::uint64_t code, std::size_t n) {
  std::vector<int> signs(n);
  for (std::size_t i = 0; i < n; ++i) signs[i] = ((code >> i) & 1U) ? -1 : 1;
  return SignPattern(std::move(signs));
}

std::uint64_t SignPattern::code() const {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < signs_.size(); ++i)
    if (signs_[i] < 0) c |= std::uint64_t{1} << i;
  return c;
}

BlockOrthogonal::BlockOrthogonal(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Matrix& q = blocks_[i];
    require_square(q, "BlockOrthogonal block");
    if (q.rows() == 0) throw ArgumentError("BlockOrthogonal blocks must be non-empty");
    const double r = orthogonality_residual(q);
    if (r > 1e-10 * static_cast<double>(q.rows()))
      throw ArgumentError("block " + std::to_string(i) +
                          " is not orthogonal: ||QQ^T - I||_F = " + std::to_string(r));
  }
}

BlockOrthogonal BlockOrthogonal::identity(const std::vector<std::size_t>& m) {
  std::vector<Matrix> blocks;
  blocks.reserve(m.size());
  for (std::size_t mi : m) blocks.push_back(Matrix::identity(mi));
  return BlockOrthogonal(std::move(blocks));
}

BlockOrthogonal BlockOrthogonal::from_signs(const SignPattern& signs,
                                            const std::vector<std::size_t>& m) {
  if (std::accumulate(m.begin(), m.end(), std::size_t{0}) != signs.size())
    throw DimensionError("sign pattern length does not match multiplicity vector");
  std::vector<Matrix> blocks;
  std::size_t offset = 0;
  for (std::size_t mi : m) {
    Matrix b(mi, mi);
    for (std::size_t i = 0; i < mi; ++i) b(i, i) = signs.signs()[offset + i];
    blocks.push_back(std::move(b));
    offset += mi;
  }
  return BlockOrthogonal(std::move(blocks));
}

std::vector<std::size_t> BlockOrthogonal::multiplicities() const {
  std::vector<std::size_t> m;
  for (const auto& b : blocks_) m.push_back(b.rows());
  return m;
}

std::size_t BlockOrthogonal::size() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.rows();
  return n;
}

Matrix BlockOrthogonal::full() const {
  Matrix s(size(), size());
  std::size_t offset = 0;
  for (const auto& b : blocks_) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) s(offset + i, offset + j) = b(i, j);
    offset += b.rows();
  }
  return s;
}

BlockOrthogonal BlockOrthogonal::transpose() const {
  std::vector<Matrix> blocks;
  for (const auto& b : blocks_) blocks.push_back(b.transpose());
  return BlockOrthogonal(std::move(blocks));
}

IsotropyElement conjugate(const SpectralDecomposition& dec, const BlockOrthogonal& sigma) {
  const auto m = dec.multiplicities();
  if (sigma.multiplicities() != m)
    throw StructureError("conjugate: sigma has block sizes " + format_m(sigma.multiplicities()) +
                             " but the decomposition has multiplicities " + format_m(m),
                         sigma.multiplicities(), m);
  const std::size_t n = dec.size();
  // gamma = sum_k V_k^T Q_k V_k over the eigenvector rows of cluster k
  Matrix gamma(n, n);
  std::size_t offset = 0;
  for (const Matrix& q : sigma.blocks()) {
    const std::size_t mk = q.rows();
    Matrix qv(mk, n);
    for (std::size_t i = 0; i < mk; ++i)
      for (std::size_t j = 0; j < mk; ++j) {
        const double qij = q(i, j);
        if (qij == 0.0) continue;
        for (std::size_t c = 0; c < n; ++c) qv(i, c) += qij * dec.vectors(offset + j, c);
      }
    for (std::size_t i = 0; i < mk; ++i)
      for (std::size_t r = 0; r < n; ++r) {
        const double vir = dec.vectors(offset + i, r);
        if (vir == 0.0) continue;
        for (std::size_t c = 0; c < n; ++c) gamma(r, c) += vir * qv(i, c);
      }
    offset += mk;
  }
  return {std::move(gamma), sigma, dec.id};
}

std::vector<IsotropyElement> gamma2_elements(const SpectralDecomposition& dec) {
  const std::size_t n = dec.size();
  if (n > kGamma2Cap)
    throw SizeCapError("gamma2_elements: n = " + std::to_string(n) +
                       " exceeds the enumeration cap of " + std::to_string(kGamma2Cap) +
                       "; use sample_gamma instead");
  const auto m = dec.multiplicities();
  std::vector<IsotropyElement> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    auto signs = SignPattern::from_code(code, n);
    auto element = conjugate(dec, BlockOrthogonal::from_signs(signs, m));
    element.source = std::move(signs);
    out.push_back(std::move(element));
  }
  return out;
}

IsotropyElement sample_gamma(const SpectralDecomposition& dec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Matrix> blocks;
  for (const auto& c : dec.clusters) blocks.push_back(haar_orthogonal(c.multiplicity, rng));
  return conjugate(dec, BlockOrthogonal(std::move(blocks)));
}

double commutator_residual(const Matrix& a, const Matrix& g) {
  require_square(a, "commutator_residual");
  require_same_shape(a, g, "commutator_residual");
  return frobenius_norm(g * a - a * g);
}

bool is_member(const SpectralDecomposition& dec, const Matrix& g, double tol) {
  require_same_shape(dec.matrix, g, "is_member");
  const double n = static_cast<double>(dec.size());
  if (orthogonality_residual(g) > tol * n) return false;
  return commutator_residual(dec.matrix, g) <=
         tol * std::max(1.0, frobenius_norm(dec.matrix));
}

std::pair<std::size_t, double> nearest_element(const std::vector<IsotropyElement>& set,
                                               const Matrix& m) {
  std::pair<std::size_t, double> best{set.size(), INFINITY};
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double d = max_abs_diff(set[i].gamma, m);
    if (d < best.second) best = {i, d};
  }
  return best;
}

bool is_finite(const SpectralDecomposition& dec) {
  return std::all_of(dec.clusters.begin(), dec.clusters.end(),
                     [](const Cluster& c) { return c.multiplicity == 1; });
}

}  // namespace isogroup
