#pragma once

#include <cstdint>
#include <vector>

#include "isogroup/isotropy.hpp"
#include "isogroup/matrix.hpp"
#include "isogroup/spectral.hpp"

namespace isogroup {

enum class SpectralOrder { Ascending, Descending };

/// One minimiser of ||P A - B P||_F over orthogonal P.
struct ProcrustesSolution {
  Matrix p;
  double cost = 0.0;
  double lower_bound = 0.0;  ///< ||D_A - D_B||_F with both spectra in the same order
  BlockOrthogonal sigma_a;
  BlockOrthogonal sigma_b;
};

/// ||P A - B P||_F.
double procrustes_cost(const Matrix& a, const Matrix& b, const Matrix& p);

/// Canonical two-sided solution P = V_B^T V_A, both spectra sorted in
/// `order`. Descending order reverses the eigenpairs of both decompositions.
ProcrustesSolution procrustes_solve(const SymMatrix& a, const SymMatrix& b,
                                    SpectralOrder order = SpectralOrder::Ascending);

/// `count` members V_B^T sigma_B^T sigma_A V_A of the optimal family with
/// independently Haar-sampled sigma_A in O_B(m_A), sigma_B in O_B(m_B).
/// Sample i draws its factors from derive_seed(seed, 2i) and
/// derive_seed(seed, 2i + 1). Throws StructureError (carrying both
/// multiplicity vectors) when m_A != m_B.
std::vector<ProcrustesSolution> procrustes_family(const SymMatrix& a, const SymMatrix& b,
                                                  std::uint64_t seed, std::size_t count,
                                                  SpectralOrder order = SpectralOrder::Ascending);

/// Sorted spectra agree elementwise within tol.
bool isospectral(const SymMatrix& a, const SymMatrix& b, double tol);

}  // namespace isogroup
