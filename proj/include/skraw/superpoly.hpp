#pragma once

// Polynomials in commuting x_0..x_m and anticommuting xi_0..xi_n, stored in
// normal order x^alpha xi_0^{eps_0} ... xi_n^{eps_n}.

#include "skraw/numkern.hpp"
#include "skraw/params.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skraw {

using Exponents = std::vector<int>;

/// Coefficients below this modulus are dropped after arithmetic.
inline constexpr double kPruneTol = 1e-15;

struct SuperMonomial {
  Exponents alpha;
  Bits eps = 0;

  int even_degree() const;
  int odd_degree() const;
  int degree() const { return even_degree() + odd_degree(); }
  std::string to_string() const;

  auto operator<=>(const SuperMonomial&) const = default;
};

/// Number of set bits of eps strictly below j.
int sign_prefix(Bits eps, int j);

struct WedgeProduct {
  int sign = 0;  ///< 0 when the factors share an index
  Bits bits = 0;
};

/// xi^a * xi^b rewritten in normal order.
WedgeProduct wedge_mul(Bits a, Bits b);

class SuperPolynomial {
 public:
  using Terms = std::map<SuperMonomial, Scalar>;

  explicit SuperPolynomial(int even_vars = 0) : even_vars_(even_vars) {}

  static SuperPolynomial monomial(const SuperMonomial& mono, Scalar c = 1.0);
  /// sum_j c_j x_j
  static SuperPolynomial even_linear(std::span<const Scalar> coeffs);
  /// sum_j c_j xi_j over `even_vars` spectator x-variables.
  static SuperPolynomial odd_linear(std::span<const Scalar> coeffs, int even_vars);

  int even_vars() const { return even_vars_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  Scalar coefficient(const SuperMonomial& mono) const;

  void add(const SuperMonomial& mono, Scalar c);
  void prune(double tol = kPruneTol);

  SuperPolynomial& operator+=(const SuperPolynomial& o);
  SuperPolynomial& operator*=(Scalar s);
  friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b);

  /// Largest coefficient difference over the union of supports.
  friend double max_abs_diff(const SuperPolynomial& a, const SuperPolynomial& b);

 private:
  int even_vars_ = 0;
  Terms terms_;
};

/// prod_{i in rows, ascending} (sum_j C(i, j) xi_j) by sequential wedge products.
SuperPolynomial expand_odd_product(const Matrix& c, const IndexSubset& rows, int even_vars = 0);

/// Multinomial expansion of prod_i (sum_j C(i, j) x_j)^{atilde_i}.
std::map<Exponents, Scalar> expand_even_product(const Matrix& c, const Exponents& atilde);

/// Expands x~^atilde xi~^etilde in the plain monomial basis.
SuperPolynomial to_monomial_basis(const SuperMonomial& tilde_index, const ParamSet& ps);

/// A polynomial given in tilde coordinates, re-expressed in plain ones.
SuperPolynomial tilde_to_plain(const SuperPolynomial& tilde_coords, const ParamSet& ps);

/// Substitution matrix for x~: entries theta~ p~_k u_{i,k}.
Matrix even_substitution(const ParamSet& ps);
/// Substitution matrix for xi~: entries kappa~ q~_k v_{j,k}.
Matrix odd_substitution(const ParamSet& ps);

/// Ordered monomial basis of P^D (or of its odd-degree-d slice):
/// d ascending, then descending-lex alpha, then colex eps.
class SuperBasis {
 public:
  struct Block {
    int d = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
  };

  SuperBasis(int m, int n, int degree);
  static SuperBasis slice(int m, int n, int degree, int odd_degree);

  int m() const { return m_; }
  int n() const { return n_; }
  int degree() const { return degree_; }
  std::size_t size() const { return monos_.size(); }
  const SuperMonomial& operator[](std::size_t i) const { return monos_[i]; }
  const std::vector<SuperMonomial>& monomials() const { return monos_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::optional<std::size_t> index_of(const SuperMonomial& mono) const;

  /// Coordinate vector of a polynomial; throws DimensionError off the basis.
  std::vector<Scalar> coordinates(const SuperPolynomial& p) const;

 private:
  SuperBasis(int m, int n, int degree, int d_lo, int d_hi);

  int m_ = 0;
  int n_ = 0;
  int degree_ = 0;
  std::vector<SuperMonomial> monos_;
  std::vector<Block> blocks_;
  std::map<SuperMonomial, std::size_t> index_;
};

/// C(D - d + m, m) * C(n + 1, d)
double slice_dimension(int m, int n, int degree, int odd_degree);

/// Columns are to_monomial_basis of each basis element read as a tilde index.
Matrix tilde_to_plain_matrix(const SuperBasis& basis, const ParamSet& ps);

}  // namespace skraw
