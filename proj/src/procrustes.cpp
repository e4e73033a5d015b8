#include "isogroup/procrustes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isogroup/error.hpp"
#include "isogroup/random.hpp"

namespace isogroup {
namespace {

// Eigenbasis and spectrum of one operand, in the requested order.
struct OrderedSpectrum {
  Matrix v;
  Vector lambdas;
  std::vector<std::size_t> m;
};

OrderedSpectrum ordered(const SymMatrix& a, SpectralOrder order) {
  auto dec = eig_sym(a);
  OrderedSpectrum s{std::move(dec.vectors), std::move(dec.lambdas), dec.multiplicities()};
  if (order == SpectralOrder::Descending) {
    const std::size_t n = s.lambdas.size();
    Matrix rev(n, n);
    for (std::size_t i = 0; i < n; ++i)
      std::copy(s.v.row(n - 1 - i).begin(), s.v.row(n - 1 - i).end(), rev.row(i).begin());
    s.v = std::move(rev);
    std::reverse(s.lambdas.begin(), s.lambdas.end());
    std::reverse(s.m.begin(), s.m.end());
  }
  return s;
}

void require_same_size(const SymMatrix& a, const SymMatrix& b, const char* what) {
  if (a.size() != b.size())
    throw DimensionError(std::string(what) + ": matrices have sizes " +
                         std::to_string(a.size()) + " and " + std::to_string(b.size()));
}

double spectral_distance(const Vector& la, const Vector& lb) {
  Vector d(la.size());
  for (std::size_t i = 0; i < la.size(); ++i) d[i] = la[i] - lb[i];
  return norm2(d);
}

ProcrustesSolution assemble(const SymMatrix& a, const SymMatrix& b, const OrderedSpectrum& sa,
                            const OrderedSpectrum& sb, BlockOrthogonal sigma_a,
                            BlockOrthogonal sigma_b) {
  Matrix p = sb.v.transpose() * sigma_b.full().transpose() * sigma_a.full() * sa.v;
  const double cost = procrustes_cost(a.matrix(), b.matrix(), p);
  return {std::move(p), cost, spectral_distance(sa.lambdas, sb.lambdas), std::move(sigma_a),
          std::move(sigma_b)};
}

}  // namespace

double procrustes_cost(const Matrix& a, const Matrix& b, const Matrix& p) {
  require_square(a, "procrustes_cost");
  require_same_shape(a, b, "procrustes_cost");
  require_same_shape(a, p, "procrustes_cost");
  return frobenius_norm(p * a - b * p);
}

ProcrustesSolution procrustes_solve(const SymMatrix& a, const SymMatrix& b,
                                    SpectralOrder order) {
  require_same_size(a, b, "procrustes_solve");
  const auto sa = ordered(a, order);
  const auto sb = ordered(b, order);
  return assemble(a, b, sa, sb, BlockOrthogonal::identity(sa.m), BlockOrthogonal::identity(sb.m));
}

std::vector<ProcrustesSolution> procrustes_family(const SymMatrix& a, const SymMatrix& b,
                                                  std::uint64_t seed, std::size_t count,
                                                  SpectralOrder order) {
  require_same_size(a, b, "procrustes_family");
  const auto sa = ordered(a, order);
  const auto sb = ordered(b, order);
  if (sa.m != sb.m)
    throw StructureError("procrustes_family: multiplicity vectors of A and B differ", sa.m,
                         sb.m);

  auto draw = [](const std::vector<std::size_t>& m, std::uint64_t s) {
    Rng rng(s);
    std::vector<Matrix> blocks;
    for (std::size_t mi : m) blocks.push_back(haar_orthogonal(mi, rng));
    return BlockOrthogonal(std::move(blocks));
  };

  std::vector<ProcrustesSolution> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(assemble(a, b, sa, sb, draw(sa.m, derive_seed(seed, 2 * i)),
                           draw(sb.m, derive_seed(seed, 2 * i + 1))));
  return out;
}

bool isospectral(const SymMatrix& a, const SymMatrix& b, double tol) {
  require_same_size(a, b, "isospectral");
  const auto la = eig_sym(a).lambdas;
  const auto lb = eig_sym(b).lambdas;
  for (std::size_t i = 0; i < la.size(); ++i)
    if (std::abs(la[i] - lb[i]) > tol) return false;
  return true;
}

}  // namespace isogroup
