#pragma once

// gl(m+1|n+1) acting on P^D by w_i d/dw_j, in the plain frame {x, xi} and in
// the tilde frame {x~, xi~}; the antiautomorphism phi; the bilinear form.

#include "skraw/numkern.hpp"
#include "skraw/params.hpp"
#include "skraw/residual.hpp"
#include "skraw/superpoly.hpp"

#include <string>
#include <utility>

namespace skraw {

enum class Frame { plain, tilde };

/// Index layout of C^{m+1|n+1}: 0..m even, m+1..m+n+1 odd.
struct GlDims {
  int m = 0;
  int n = 0;

  int size() const { return m + n + 2; }
  bool is_odd(int i) const { return i > m; }
  int parity(int i) const { return is_odd(i) ? 1 : 0; }

  static GlDims of(const ParamSet& ps) { return {ps.m(), ps.n()}; }
  friend bool operator==(const GlDims&, const GlDims&) = default;
};

enum class GeneratorBlock { A, B, C, D };

/// The elementary matrix E_{row,col}, or its conjugate E~_{row,col}.
struct GeneratorId {
  GlDims dims;
  int row = 0;
  int col = 0;
  Frame frame = Frame::plain;

  int parity() const { return (dims.parity(row) + dims.parity(col)) % 2; }
  GeneratorBlock block() const;
  /// |row| v_{row-(m+1)} + |col| v_{col-(m+1)} mod 2.
  Bits multicolor() const;
  /// Local indices inside the block, e.g. (i, j) of B_{i,j}.
  std::pair<int, int> block_indices() const;
  std::string name() const;

  static GeneratorId from_block(GlDims dims, GeneratorBlock b, int i, int j, Frame f = Frame::plain);

  friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
};

/// Every E_{i,j} (or E~_{i,j}) for the given shape.
std::vector<GeneratorId> all_generators(GlDims dims, Frame frame);

/// X acting on a monomial of its own frame (x^a xi^e for plain, x~^a xi~^e for
/// tilde); the result is expressed in that same frame.
SuperPolynomial apply_generator(const GeneratorId& x, const SuperMonomial& mono);

/// The (m+n+2)^2 matrix of X in the standard basis: E_{ij}, or M E_{ij} M^{-1}
/// with M = (R|S).
Matrix gl_matrix(const GeneratorId& x, const ParamSet& ps);

/// (R|S) and its inverse (theta P U | kappa Q V), the latter from admissibility.
Matrix frame_matrix(const ParamSet& ps);
Matrix frame_matrix_inverse(const ParamSet& ps);

/// rho(X) for a general element X of gl, acting on plain coordinates.
SuperPolynomial apply_element(const Matrix& element, const SuperPolynomial& u);

/// X applied to a polynomial in plain coordinates; tilde generators are
/// expanded into plain ones first.
SuperPolynomial apply_in_plain(const GeneratorId& x, const SuperPolynomial& u, const ParamSet& ps);

/// Matrix of rho(element) on the plain basis (columns are images).
Matrix operator_matrix(const Matrix& element, const SuperBasis& basis);

/// Matrix of X in its own frame's basis, reading basis entries as that frame's monomials.
Matrix frame_operator_matrix(const GeneratorId& x, const SuperBasis& basis);

/// Supertranspose on gl(m+1|n+1).
Matrix supertranspose(const Matrix& x, GlDims dims);

/// phi(X) = G X^st G^{-1} with G = (theta^{-1} P~ | kappa^{-1} Q~).
Matrix phi_matrix(const Matrix& x, const ParamSet& ps);

struct PhiImage {
  GeneratorId image;
  Scalar coefficient;
};

/// Closed-form phi on generators: phi(X) = coefficient * image.
PhiImage phi(const GeneratorId& x, const ParamSet& ps);

/// <x^a xi^e, x^a xi^e> = a! / (p~^a q~^e) theta^|a| kappa^|e|.
Scalar monomial_norm(const SuperMonomial& mono, const ParamSet& ps);
/// a! / (p^a q^e) theta~^|a| kappa~^|e|.
Scalar tilde_monomial_norm(const SuperMonomial& mono, const ParamSet& ps);

/// Bilinear form on plain coordinates; zero across different degrees.
Scalar pair(const SuperPolynomial& u, const SuperPolynomial& v, const ParamSet& ps);

enum class ContravarianceScale {
  form,   ///< divided by sqrt(|<u,u>| |<v,v>|), i.e. measured in the unit-normalized basis
  mixed,  ///< divided by max(1, |lhs|, |rhs|)
};

/// |<X.u, v> - (-1)^{|X| Xbar.ubar} <u, phi(X).v>|, scaled as requested.
/// u, v are monomials of X's frame.
double contravariance_residual(const GeneratorId& x, const SuperMonomial& u, const SuperMonomial& v,
                               const ParamSet& ps, ContravarianceScale scale = ContravarianceScale::form);

/// All generators of both frames against all basis pairs of P^D.
Residual contravariance_sweep(const ParamSet& ps, int degree, ContravarianceScale scale = ContravarianceScale::form);

enum class CartanIdentity {
  even_tilde_from_plain,  ///< A~_{ii} = p0^{-1} p_i sum p~_k u_ik u_il A_kl
  even_plain_from_tilde,  ///< A_{ii} = p0^{-1} p~_i sum p_k u_ki u_li A~_kl
  odd_tilde_from_plain,   ///< D~_{ii} = q0^{-1} q_i sum q~_k v_ik v_il D_kl
  odd_plain_from_tilde,   ///< D_{ii} = q0^{-1} q~_i sum q_k v_ki v_li D~_kl
};

std::string to_string(CartanIdentity which);

/// Max-norm mismatch of the two sides as operators on P^D, compared through
/// the tilde-to-plain intertwiner so no inverse is formed.
double cartan_swap_residual(int i, CartanIdentity which, const ParamSet& ps, int degree);

Residual cartan_swap_sweep(const ParamSet& ps, int degree);

/// [X, Y] on P^D against the closed form delta_jk E_il - (-1)^.. delta_il E_kj.
Residual supercommutator_sweep(GlDims dims, int degree);

/// Multicolor degree of X.mono equals Xbar + ubar whenever X.mono != 0.
Residual multicolor_sweep(GlDims dims, int degree);

/// phi([X,Y]) = (-1)^{|X||Y|} [phi(Y), phi(X)] as operators on P^D.
Residual phi_antiautomorphism_sweep(const ParamSet& ps, int degree);

/// Closed-form phi table against G X^st G^{-1}, both frames.
Residual phi_table_residual(const ParamSet& ps);

/// Gram matrix of the tilde basis against its predicted diagonal, relative.
Residual tilde_gram_residual(const ParamSet& ps, int degree);

/// Number of basis monomials reachable from `start` by repeatedly applying generators.
std::size_t reachable_count(GlDims dims, int degree, const SuperMonomial& start);

}  // namespace skraw
