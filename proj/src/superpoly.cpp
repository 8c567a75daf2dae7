#include "skraw/superpoly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace skraw {

int SuperMonomial::even_degree() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }

int SuperMonomial::odd_degree() const { return std::popcount(eps); }

std::string SuperMonomial::to_string() const {
  std::ostringstream os;
  os << "x^(";
  for (std::size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
  os << ")xi" << IndexSubset(eps).to_string();
  return os.str();
}

int sign_prefix(Bits eps, int j) {
  if (j <= 0) return 0;
  const Bits below = j >= 32 ? ~Bits{0} : (Bits{1} << j) - 1;
  return std::popcount(eps & below);
}

WedgeProduct wedge_mul(Bits a, Bits b) {
  if ((a & b) != 0) return {};
  // Moving each xi_j of b leftward past the members of a that exceed j.
  int inversions = 0;
  for (Bits rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(a) - sign_prefix(a, j + 1);
  }
  return {inversions % 2 == 0 ? 1 : -1, a | b};
}

// ---------------------------------------------------------------------------

SuperPolynomial SuperPolynomial::monomial(const SuperMonomial& mono, Scalar c) {
  SuperPolynomial p(static_cast<int>(mono.alpha.size()));
  p.add(mono, c);
  return p;
}

SuperPolynomial SuperPolynomial::even_linear(std::span<const Scalar> coeffs) {
  const int k = static_cast<int>(coeffs.size());
  SuperPolynomial p(k);
  for (int j = 0; j < k; ++j) {
    SuperMonomial mono{Exponents(coeffs.size(), 0), 0};
    mono.alpha[static_cast<std::size_t>(j)] = 1;
    p.add(mono, coeffs[static_cast<std::size_t>(j)]);
  }
  return p;
}

SuperPolynomial SuperPolynomial::odd_linear(std::span<const Scalar> coeffs, int even_vars) {
  SuperPolynomial p(even_vars);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    p.add(SuperMonomial{Exponents(static_cast<std::size_t>(even_vars), 0), Bits{1} << j}, coeffs[j]);
  return p;
}

Scalar SuperPolynomial::coefficient(const SuperMonomial& mono) const {
  const auto it = terms_.find(mono);
  return it == terms_.end() ? Scalar{} : it->second;
}

void SuperPolynomial::add(const SuperMonomial& mono, Scalar c) {
  if (static_cast<int>(mono.alpha.size()) != even_vars_)
    throw DimensionError("monomial has the wrong number of even variables");
  if (c == Scalar{}) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (std::abs(it->second) <= kPruneTol) terms_.erase(it);
  }
}

void SuperPolynomial::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& o) {
  for (const auto& [mono, c] : o.terms_) add(mono, c);
  return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(Scalar s) {
  for (auto& kv : terms_) kv.second *= s;
  prune();
  return *this;
}

SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
  if (a.even_vars_ != b.even_vars_) throw DimensionError("product of polynomials over different variables");
  SuperPolynomial out(a.even_vars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      const WedgeProduct w = wedge_mul(ma.eps, mb.eps);
      if (w.sign == 0) continue;
      SuperMonomial mono{ma.alpha, w.bits};
      for (std::size_t i = 0; i < mono.alpha.size(); ++i) mono.alpha[i] += mb.alpha[i];
      out.add(mono, static_cast<double>(w.sign) * ca * cb);
    }
  }
  out.prune();
  return out;
}

double max_abs_diff(const SuperPolynomial& a, const SuperPolynomial& b) {
  double r = 0.0;
  for (const auto& [mono, c] : a.terms_) r = std::max(r, std::abs(c - b.coefficient(mono)));
  for (const auto& [mono, c] : b.terms_)
    if (!a.terms_.contains(mono)) r = std::max(r, std::abs(c));
  return r;
}

// ---------------------------------------------------------------------------

SuperPolynomial expand_odd_product(const Matrix& c, const IndexSubset& rows, int even_vars) {
  SuperPolynomial acc = SuperPolynomial::monomial(
      SuperMonomial{Exponents(static_cast<std::size_t>(even_vars), 0), 0});
  std::vector<Scalar> row(c.cols());
  for (int i : rows.members()) {
    if (static_cast<std::size_t>(i) >= c.rows()) throw DimensionError("expand_odd_product: row out of range");
    for (std::size_t j = 0; j < c.cols(); ++j) row[j] = c(static_cast<std::size_t>(i), j);
    acc = acc * SuperPolynomial::odd_linear(row, even_vars);
  }
  return acc;
}

std::map<Exponents, Scalar> expand_even_product(const Matrix& c, const Exponents& atilde) {
  if (!c.square() || c.rows() != atilde.size())
    throw DimensionError("expand_even_product: matrix must be (m+1)x(m+1) matching atilde");
  const std::size_t k = atilde.size();
  SuperPolynomial acc = SuperPolynomial::monomial(SuperMonomial{Exponents(k, 0), 0});
  std::vector<Scalar> row(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) row[j] = c(i, j);
    const SuperPolynomial lin = SuperPolynomial::even_linear(row);
    for (int e = 0; e < atilde[i]; ++e) acc = acc * lin;
  }
  std::map<Exponents, Scalar> out;
  for (const auto& [mono, coeff] : acc.terms()) out.emplace(mono.alpha, coeff);
  return out;
}

Matrix even_substitution(const ParamSet& ps) {
  const std::size_t k = ps.even.size();
  Matrix c(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      c(i, j) = ps.norms.theta_tilde * ps.even.dual_weights[j] * ps.even.matrix(i, j);
  return c;
}

Matrix odd_substitution(const ParamSet& ps) {
  const std::size_t k = ps.odd.size();
  Matrix c(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      c(i, j) = ps.norms.kappa_tilde * ps.odd.dual_weights[j] * ps.odd.matrix(i, j);
  return c;
}

SuperPolynomial to_monomial_basis(const SuperMonomial& tilde_index, const ParamSet& ps) {
  const int even_vars = static_cast<int>(ps.even.size());
  if (static_cast<int>(tilde_index.alpha.size()) != even_vars)
    throw DimensionError("to_monomial_basis: exponent vector length differs from m+1");
  if (tilde_index.eps >> ps.odd.size() != 0) throw DimensionError("to_monomial_basis: odd index beyond n");

  SuperPolynomial even(even_vars);
  for (const auto& [alpha, c] : expand_even_product(even_substitution(ps), tilde_index.alpha))
    even.add(SuperMonomial{alpha, 0}, c);
  const SuperPolynomial odd =
      expand_odd_product(odd_substitution(ps), IndexSubset(tilde_index.eps), even_vars);
  return even * odd;
}

SuperPolynomial tilde_to_plain(const SuperPolynomial& tilde_coords, const ParamSet& ps) {
  SuperPolynomial out(tilde_coords.even_vars());
  for (const auto& [mono, c] : tilde_coords.terms()) {
    SuperPolynomial term = to_monomial_basis(mono, ps);
    term *= c;
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------

SuperBasis::SuperBasis(int m, int n, int degree) : SuperBasis(m, n, degree, 0, std::min(degree, n + 1)) {}

SuperBasis SuperBasis::slice(int m, int n, int degree, int odd_degree) {
  return SuperBasis(m, n, degree, odd_degree, odd_degree);
}

SuperBasis::SuperBasis(int m, int n, int degree, int d_lo, int d_hi) : m_(m), n_(n), degree_(degree) {
  if (m < 0 || n < 0 || degree < 0) throw DimensionError("SuperBasis: negative dimension or degree");
  if (n >= 31) throw DimensionError("SuperBasis: at most 31 odd variables");
  for (int d = d_lo; d <= d_hi; ++d) {
    if (d < 0 || d > degree || d > n + 1) continue;
    Block blk{d, monos_.size(), monos_.size()};
    const auto subsets = enumerate_subsets(n + 1, d);
    for (const auto& alpha : enumerate_compositions(degree - d, m + 1))
      for (const auto& s : subsets) monos_.push_back(SuperMonomial{alpha, s.mask()});
    blk.end = monos_.size();
    blocks_.push_back(blk);
  }
  for (std::size_t i = 0; i < monos_.size(); ++i) index_.emplace(monos_[i], i);
}

std::optional<std::size_t> SuperBasis::index_of(const SuperMonomial& mono) const {
  const auto it = index_.find(mono);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Scalar> SuperBasis::coordinates(const SuperPolynomial& p) const {
  std::vector<Scalar> v(size());
  for (const auto& [mono, c] : p.terms()) {
    const auto idx = index_of(mono);
    if (!idx) throw DimensionError("polynomial term " + mono.to_string() + " lies outside the basis");
    v[*idx] = c;
  }
  return v;
}

double slice_dimension(int m, int n, int degree, int odd_degree) {
  if (odd_degree < 0 || odd_degree > degree) return 0.0;
  return binomial(degree - odd_degree + m, m) * binomial(n + 1, odd_degree);
}

Matrix tilde_to_plain_matrix(const SuperBasis& basis, const ParamSet& ps) {
  Matrix t(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto col = basis.coordinates(to_monomial_basis(basis[j], ps));
    for (std::size_t i = 0; i < basis.size(); ++i) t(i, j) = col[i];
  }
  return t;
}

}  // namespace skraw
