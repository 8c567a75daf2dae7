#pragma once

// The orthogonal frame g_V, coset representatives sigma_I, the zonal spherical
// function phi_d, occupation probabilities and their sampler.

#include "skraw/numkern.hpp"
#include "skraw/params.hpp"
#include "skraw/residual.hpp"

#include <cstdint>
#include <vector>

namespace skraw {

struct OrthogonalFrame {
  Matrix g;
  std::vector<double> q_sqrt;
  /// Square roots of q~ actually used, including any sign flip.
  std::vector<double> q_tilde_sqrt;
  int det_sign = 1;
};

/// g = q0^{-1/2} Q^{1/2} V Q~^{1/2}. With fix_sign, a negative determinant is
/// repaired by negating the last entry of Q~^{1/2}. Throws DomainError unless
/// q, q~ are positive reals and V is real.
OrthogonalFrame build_g(const OddParams& odd, bool fix_sign = true);

/// max(||g g^T - I||, |det g - det_sign|).
double orthogonality_defect(const OrthogonalFrame& frame);

/// Element of SO(n+1) sending xi_0 ... xi_{d-1} to +xi_I, d = |I|.
Matrix sigma(const IndexSubset& subset, int n_plus_1);

/// Leading d x d minor of h.
Scalar phi_d(const Matrix& h, int d);
/// Coefficient of xi_0..xi_{d-1} in h.(xi_0 ... xi_{d-1}) by wedge expansion.
Scalar phi_d_wedge(const Matrix& h, int d);
/// The same matrix coefficient for xi_d ... xi_n.
Scalar phi_d_minus(const Matrix& h, int d);

/// Random element of SO(d) x SO(n+1-d), block diagonal.
Matrix random_stabilizer(int n_plus_1, int d, std::uint64_t seed);

/// minor(g, I, J) against phi_d(sigma_I^T g sigma_J) and the wedge coefficient of g.xi_J.
Residual minor_spherical_residual(const Matrix& g, int d);

/// phi_d(sigma_I^T g sigma_J) against the same with sigma_I k1, sigma_J k2 for random k1, k2 in K.
Residual sigma_independence_residual(const Matrix& g, int d, std::uint64_t seed);

/// sum_I det(g_{I,J})^2 - 1 over all J.
Residual plucker_norm_residual(const Matrix& g, int d);

struct OccupationDistribution {
  IndexSubset source;
  std::vector<IndexSubset> subsets;  ///< colex order
  std::vector<double> probs;
  std::uint64_t seed = 0;
};

/// P_{I|J} = det(g_{I,J})^2 over all |I| = |J|.
OccupationDistribution occupation_probs(const OddParams& odd, const IndexSubset& source, std::uint64_t seed = 0);

/// Indices into dist.subsets drawn by inverse CDF from a generator seeded with dist.seed.
std::vector<std::size_t> sample_occupation(const OccupationDistribution& dist, std::size_t count);

/// Occurrence counts per subset of a sample of the given size.
std::vector<std::size_t> occupation_frequencies(const OccupationDistribution& dist, std::size_t count);

/// |P1(eps, eps~) - q0^{d/2}/d! q_I^{-1/2} q~_J^{-1/2} phi_d(sigma_I^T g sigma_J)|, mixed,
/// with I = supp eps~, J = supp eps and the roots taken from the frame.
double krzonal_check(const OddParams& odd, const OrthogonalFrame& frame, Bits eps, Bits eps_tilde);
double krzonal_check(const OddParams& odd, Bits eps, Bits eps_tilde);

/// krzonal_check over every equal-size pair.
Residual krzonal_sweep(const OddParams& odd, const OrthogonalFrame& frame);

}  // namespace skraw
