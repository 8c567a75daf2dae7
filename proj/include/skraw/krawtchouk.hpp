#pragma once

// Even, odd and mixed Krawtchouk polynomials, the transition matrices between
// the plain and tilde monomial bases, and the identity suites built on them.

#include "skraw/numkern.hpp"
#include "skraw/params.hpp"
#include "skraw/residual.hpp"
#include "skraw/superpoly.hpp"

#include <vector>

namespace skraw {

enum class P1Method {
  minor,     ///< the single surviving minor of V
  full_sum,  ///< sum of det A_{I,J} over all size-d I, J with A = diag(eps~) V diag(eps)
};

/// P1(eps, eps~) = minor(V, supp eps~, supp eps) / d!; zero when |eps| != |eps~|.
Scalar eval_p1(Bits eps, Bits eps_tilde, const OddParams& odd, P1Method method = P1Method::minor);

/// Coefficient of xi^eps in prod_{i in eps~} (sum_j v_ij xi_j), divided by d!.
Scalar eval_p1_generating(Bits eps, Bits eps_tilde, const OddParams& odd);

/// P0(alpha, alpha~) in degree |alpha|: (alpha! / |alpha|!) [x^alpha] prod_i (sum_j u_ij x_j)^{alpha~_i}.
Scalar eval_p0(const Exponents& alpha, const Exponents& alpha_tilde, const EvenParams& even);

/// Mixed polynomial P = C(D, d)^{-1} P0 P1, with D the total degree.
Scalar eval_p(const SuperMonomial& plain, const SuperMonomial& tilde, const ParamSet& ps);

/// P read off the full product over (U|V) in all m+n+2 variables.
Scalar eval_p_generating(const SuperMonomial& plain, const SuperMonomial& tilde, const ParamSet& ps);

/// K(a, b) = P(basis[a], basis[b]).
Matrix krawtchouk_matrix(const ParamSet& ps, const SuperBasis& basis);

enum class Direction { tilde_to_plain, plain_to_tilde };

/// tilde_to_plain: column b holds the plain coordinates of the b-th tilde monomial.
/// plain_to_tilde: column a holds the tilde coordinates of the a-th plain monomial.
struct TransitionMatrix {
  Direction direction;
  SuperBasis basis;
  Matrix entries;
};

TransitionMatrix transition_matrix(Direction direction, const ParamSet& ps, int degree);

/// max(||T T' - I||, ||T' T - I||).
double transition_round_trip_residual(const ParamSet& ps, int degree);

/// Closed-form tilde_to_plain entries against direct expansion, mixed per entry.
Residual transition_expansion_residual(const ParamSet& ps, int degree);

/// Largest entry outside the diagonal d-blocks of the basis.
double off_block_max(const Matrix& t, const SuperBasis& basis);

/// Both orthogonality relations on the (D-d, d) slice, relative to the diagonal norms.
Residual orthogonality_residual(const ParamSet& ps, int degree, int odd_degree);

/// P(a, e, a~, e~; ps) against P(a~, e~, a, e; dualize(ps)) on the slice.
Residual duality_residual(const ParamSet& ps, int degree, int odd_degree);

/// P against p0^{D-d} q0^d / D! <x~^a~ xi~^e~, x^a xi^e> on P^D.
Residual pairing_residual(const ParamSet& ps, int degree);

enum class Recurrence { ith, ith_tilde, eigen, eigen_tilde };

std::string to_string(Recurrence which);

/// |lhs - rhs| of the chosen recurrence at (eps, eps~); i is ignored by the eigen forms.
double recurrence_residual(Bits eps, Bits eps_tilde, const OddParams& odd, Recurrence which, int i = 0);

/// The ith recurrence summed over all i against d P1.
double recurrence_tautology_residual(Bits eps, Bits eps_tilde, const OddParams& odd);

/// All four recurrences at all equal-size pairs and all i.
Residual recurrence_sweep(const OddParams& odd);

/// sum_i q~_i v_ki v_li = (q0/q_k) delta_kl, and the same sum from i = 1.
double sum_lemma_residual(const OddParams& odd);

enum class WedgeSide {
  tilde,  ///< sum over eps~ of P1(eps, eps~) xi~^{eps~}, eps fixed
  plain,  ///< sum over eps of P1(eps, eps~) xi^{eps}, eps~ fixed
};

/// Coordinates over the size-d subsets in colex order.
std::vector<Scalar> wedge_vector(Bits fixed, WedgeSide side, const OddParams& odd);

/// Transposed Cartan operator on the degree-d wedge space: D_ii^t in the tilde
/// frame, or D~_ii^t in the plain one.
Matrix transposed_cartan(int i, WedgeSide side, const OddParams& odd, int d);

/// Eigen-residuals of every wedge vector for every i, plus the (d - sum_{i>=1}) form.
Residual wedge_eigen_residual(const OddParams& odd, int d);

/// Smallest singular value of the column-normalized matrix of wedge vectors.
double wedge_min_singular_value(const OddParams& odd, int d, WedgeSide side);

/// Cauchy-Binet on the odd tilde Gram matrix: sum_J minor(C,I,J) minor(C,I',J) kappa^d / q~_J
/// against minor(C W C^T, I, I') and against delta kappa~^d / q_I.
Residual cauchy_binet_residual(const ParamSet& ps, int d);

}  // namespace skraw
