#include "skraw/krawtchouk.hpp"

#include "skraw/glaction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace skraw {

namespace {

double alpha_factorial(const Exponents& a) {
  double r = 1.0;
  for (int k : a) r *= factorial(k);
  return r;
}

Scalar weight_power(const SuperMonomial& mono, const std::vector<Scalar>& pw, const std::vector<Scalar>& qw) {
  Scalar r = 1.0;
  for (std::size_t i = 0; i < mono.alpha.size(); ++i)
    for (int e = 0; e < mono.alpha[i]; ++e) r *= pw[i];
  for (Bits b = mono.eps; b != 0; b &= b - 1) r *= qw[static_cast<std::size_t>(std::countr_zero(b))];
  return r;
}

void check_bits(Bits eps, const OddParams& odd) {
  if (odd.size() < 32 && (eps >> odd.size()) != 0) throw DimensionError("odd index beyond n");
}

}  // namespace

Scalar eval_p1(Bits eps, Bits eps_tilde, const OddParams& odd, P1Method method) {
  check_bits(eps, odd);
  check_bits(eps_tilde, odd);
  const int d = std::popcount(eps);
  if (d != std::popcount(eps_tilde)) return 0.0;
  if (method == P1Method::minor) return minor(odd.matrix, IndexSubset(eps_tilde), IndexSubset(eps)) / factorial(d);

  const std::size_t k = odd.size();
  Matrix a(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (((eps_tilde >> i) & 1U) && ((eps >> j) & 1U)) a(i, j) = odd.matrix(i, j);
  Scalar sum = 0.0;
  const auto subsets = enumerate_subsets(static_cast<int>(k), d);
  for (const auto& rows : subsets)
    for (const auto& cols : subsets) sum += minor(a, rows, cols);
  return sum / factorial(d);
}

Scalar eval_p1_generating(Bits eps, Bits eps_tilde, const OddParams& odd) {
  check_bits(eps, odd);
  check_bits(eps_tilde, odd);
  const int d = std::popcount(eps);
  if (d != std::popcount(eps_tilde)) return 0.0;
  const SuperPolynomial prod = expand_odd_product(odd.matrix, IndexSubset(eps_tilde));
  return prod.coefficient(SuperMonomial{{}, eps}) / factorial(d);
}

Scalar eval_p0(const Exponents& alpha, const Exponents& alpha_tilde, const EvenParams& even) {
  if (alpha.size() != even.size() || alpha_tilde.size() != even.size())
    throw DimensionError("eval_p0: exponent length differs from m+1");
  const int deg = std::accumulate(alpha.begin(), alpha.end(), 0);
  if (deg != std::accumulate(alpha_tilde.begin(), alpha_tilde.end(), 0)) return 0.0;
  const auto coeffs = expand_even_product(even.matrix, alpha_tilde);
  const auto it = coeffs.find(alpha);
  if (it == coeffs.end()) return 0.0;
  return it->second * alpha_factorial(alpha) / factorial(deg);
}

Scalar eval_p(const SuperMonomial& plain, const SuperMonomial& tilde, const ParamSet& ps) {
  const int total = plain.degree();
  if (total != tilde.degree() || plain.odd_degree() != tilde.odd_degree()) return 0.0;
  const int d = plain.odd_degree();
  return eval_p0(plain.alpha, tilde.alpha, ps.even) * eval_p1(plain.eps, tilde.eps, ps.odd) / binomial(total, d);
}

Scalar eval_p_generating(const SuperMonomial& plain, const SuperMonomial& tilde, const ParamSet& ps) {
  const int total = plain.degree();
  if (total != tilde.degree()) return 0.0;
  const std::size_t k = ps.even.size();
  const std::size_t l = ps.odd.size();
  const int even_vars = static_cast<int>(k);
  // Row i of Y = (U|V) as a linear form in all of w_0..w_{m+n+1}.
  const auto row_form = [&](std::size_t i) {
    SuperPolynomial form(even_vars);
    for (std::size_t j = 0; j < k + l; ++j) {
      const Scalar y = (i < k && j < k)     ? ps.even.matrix(i, j)
                       : (i >= k && j >= k) ? ps.odd.matrix(i - k, j - k)
                                            : Scalar{};
      SuperMonomial mono{Exponents(k, 0), 0};
      if (j < k) ++mono.alpha[j];
      else mono.eps = Bits{1} << (j - k);
      form.add(mono, y);
    }
    return form;
  };
  SuperPolynomial acc = SuperPolynomial::monomial(SuperMonomial{Exponents(k, 0), 0});
  for (std::size_t i = 0; i < k; ++i) {
    const SuperPolynomial form = row_form(i);
    for (int e = 0; e < tilde.alpha[i]; ++e) acc = acc * form;
  }
  for (std::size_t i = 0; i < l; ++i)
    if ((tilde.eps >> i) & 1U) acc = acc * row_form(k + i);
  return acc.coefficient(plain) * alpha_factorial(plain.alpha) / factorial(total);
}

Matrix krawtchouk_matrix(const ParamSet& ps, const SuperBasis& basis) {
  Matrix kmat(basis.size(), basis.size());
  for (const auto& blk : basis.blocks())
    for (std::size_t a = blk.begin; a < blk.end; ++a)
      for (std::size_t b = blk.begin; b < blk.end; ++b) kmat(a, b) = eval_p(basis[a], basis[b], ps);
  return kmat;
}

TransitionMatrix transition_matrix(Direction direction, const ParamSet& ps, int degree) {
  SuperBasis basis(ps.m(), ps.n(), degree);
  const Matrix kmat = krawtchouk_matrix(ps, basis);
  const bool to_plain = direction == Direction::tilde_to_plain;
  const Scalar even_norm = to_plain ? ps.norms.theta_tilde : ps.norms.theta;
  const Scalar odd_norm = to_plain ? ps.norms.kappa_tilde : ps.norms.kappa;
  const auto& pw = to_plain ? ps.even.dual_weights : ps.even.weights;
  const auto& qw = to_plain ? ps.odd.dual_weights : ps.odd.weights;
  const double dfact = factorial(degree);

  Matrix t(basis.size(), basis.size());
  for (const auto& blk : basis.blocks()) {
    const Scalar scale = std::pow(even_norm, degree - blk.d) * std::pow(odd_norm, blk.d) * dfact;
    for (std::size_t a = blk.begin; a < blk.end; ++a)
      for (std::size_t b = blk.begin; b < blk.end; ++b) {
        if (to_plain) {
          // Row a plain, column b tilde.
          t(a, b) = scale * kmat(a, b) * weight_power(basis[a], pw, qw) / alpha_factorial(basis[a].alpha);
        } else {
          // Row b tilde, column a plain.
          t(b, a) = scale * kmat(a, b) * weight_power(basis[b], pw, qw) / alpha_factorial(basis[b].alpha);
        }
      }
  }
  return {direction, std::move(basis), std::move(t)};
}

double transition_round_trip_residual(const ParamSet& ps, int degree) {
  const Matrix a = transition_matrix(Direction::tilde_to_plain, ps, degree).entries;
  const Matrix b = transition_matrix(Direction::plain_to_tilde, ps, degree).entries;
  const Matrix id = Matrix::identity(a.rows());
  return std::max(max_abs_diff(a * b, id), max_abs_diff(b * a, id));
}

Residual transition_expansion_residual(const ParamSet& ps, int degree) {
  const TransitionMatrix t = transition_matrix(Direction::tilde_to_plain, ps, degree);
  const Matrix direct = tilde_to_plain_matrix(t.basis, ps);
  Residual res;
  for (std::size_t a = 0; a < direct.rows(); ++a)
    for (std::size_t b = 0; b < direct.cols(); ++b)
      res.update(mixed_residual(t.entries(a, b), direct(a, b)),
                 [&] { return "plain " + t.basis[a].to_string() + " tilde " + t.basis[b].to_string(); });
  return res;
}

double off_block_max(const Matrix& t, const SuperBasis& basis) {
  std::vector<int> block_of(basis.size());
  for (const auto& blk : basis.blocks())
    for (std::size_t a = blk.begin; a < blk.end; ++a) block_of[a] = blk.d;
  double r = 0.0;
  for (std::size_t a = 0; a < t.rows(); ++a)
    for (std::size_t b = 0; b < t.cols(); ++b)
      if (block_of[a] != block_of[b]) r = std::max(r, std::abs(t(a, b)));
  return r;
}

Residual orthogonality_residual(const ParamSet& ps, int degree, int odd_degree) {
  const SuperBasis basis = SuperBasis::slice(ps.m(), ps.n(), degree, odd_degree);
  const std::size_t sz = basis.size();
  Residual res;
  if (sz == 0) return res;
  const Matrix kmat = krawtchouk_matrix(ps, basis);
  const Scalar c = std::pow(ps.even.weights[0], degree - odd_degree) * std::pow(ps.odd.weights[0], odd_degree) /
                   factorial(degree);
  const double dfact = factorial(degree);

  std::vector<Scalar> w_plain(sz), w_tilde(sz), n_tilde(sz), n_plain(sz);
  for (std::size_t a = 0; a < sz; ++a) {
    const double af = alpha_factorial(basis[a].alpha);
    w_plain[a] = weight_power(basis[a], ps.even.dual_weights, ps.odd.dual_weights) * dfact / af;
    w_tilde[a] = weight_power(basis[a], ps.even.weights, ps.odd.weights) * dfact / af;
    n_tilde[a] = c * af / weight_power(basis[a], ps.even.weights, ps.odd.weights);
    n_plain[a] = c * af / weight_power(basis[a], ps.even.dual_weights, ps.odd.dual_weights);
  }

  for (std::size_t b = 0; b < sz; ++b)
    for (std::size_t b2 = 0; b2 < sz; ++b2) {
      Scalar first = 0.0;
      Scalar second = 0.0;
      for (std::size_t a = 0; a < sz; ++a) {
        first += w_plain[a] * kmat(a, b) * kmat(a, b2);
        second += w_tilde[a] * kmat(b, a) * kmat(b2, a);
      }
      const Scalar e1 = b == b2 ? n_tilde[b] : Scalar{};
      const Scalar e2 = b == b2 ? n_plain[b] : Scalar{};
      res.update(std::abs(first - e1) / std::sqrt(std::abs(n_tilde[b]) * std::abs(n_tilde[b2])), [&] {
        return "first relation, tilde " + basis[b].to_string() + " / " + basis[b2].to_string();
      });
      res.update(std::abs(second - e2) / std::sqrt(std::abs(n_plain[b]) * std::abs(n_plain[b2])), [&] {
        return "second relation, plain " + basis[b].to_string() + " / " + basis[b2].to_string();
      });
    }
  return res;
}

Residual duality_residual(const ParamSet& ps, int degree, int odd_degree) {
  const ParamSet dual = dualize(ps);
  const SuperBasis basis = SuperBasis::slice(ps.m(), ps.n(), degree, odd_degree);
  Residual res;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b)
      res.update(mixed_residual(eval_p(basis[a], basis[b], ps), eval_p(basis[b], basis[a], dual)),
                 [&] { return basis[a].to_string() + " , " + basis[b].to_string(); });
  return res;
}

Residual pairing_residual(const ParamSet& ps, int degree) {
  const SuperBasis basis(ps.m(), ps.n(), degree);
  Residual res;
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const SuperPolynomial tilde = to_monomial_basis(basis[b], ps);
    const int d = basis[b].odd_degree();
    const Scalar c = std::pow(ps.even.weights[0], degree - d) * std::pow(ps.odd.weights[0], d) / factorial(degree);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const Scalar form = c * pair(tilde, SuperPolynomial::monomial(basis[a]), ps);
      res.update(mixed_residual(eval_p(basis[a], basis[b], ps), form),
                 [&] { return "plain " + basis[a].to_string() + " tilde " + basis[b].to_string(); });
    }
  }
  return res;
}

std::string to_string(Recurrence which) {
  switch (which) {
    case Recurrence::ith: return "ith";
    case Recurrence::ith_tilde: return "ith_tilde";
    case Recurrence::eigen: return "eigen";
    case Recurrence::eigen_tilde: return "eigen_tilde";
  }
  return "unknown";
}

namespace {

struct Shift {
  Bits bits;
  int sign;
};

/// e + v_k - v_l with the sign (-1)^{s_k(e - v_l) + s_l(e)}; empty when e_l = 0
/// or the result leaves Z_2.
std::optional<Shift> shift(Bits e, int k, int l) {
  const Bits vl = Bits{1} << l;
  const Bits vk = Bits{1} << k;
  if ((e & vl) == 0) return std::nullopt;
  const Bits lowered = e & ~vl;
  if ((lowered & vk) != 0) return std::nullopt;
  const int s = sign_prefix(lowered, k) + sign_prefix(e, l);
  return Shift{lowered | vk, s % 2 ? -1 : 1};
}

int bit(Bits e, int i) { return static_cast<int>((e >> i) & 1U); }

/// Right side of the ith recurrence (tilde = false) or its transpose (tilde = true).
Scalar ith_rhs(Bits eps, Bits eps_tilde, const OddParams& odd, int i, bool tilde) {
  const int top = odd.top();
  const auto ui = static_cast<std::size_t>(i);
  const auto& outer = tilde ? odd.weights : odd.dual_weights;
  const auto& inner = tilde ? odd.dual_weights : odd.weights;
  Scalar sum = 0.0;
  for (int k = 0; k <= top; ++k)
    for (int l = 0; l <= top; ++l) {
      const auto uk = static_cast<std::size_t>(k);
      const auto ul = static_cast<std::size_t>(l);
      const auto sh = shift(tilde ? eps : eps_tilde, k, l);
      if (!sh) continue;
      const Scalar vv = tilde ? odd.matrix(ui, uk) * odd.matrix(ui, ul) : odd.matrix(uk, ui) * odd.matrix(ul, ui);
      const Scalar p = tilde ? eval_p1(sh->bits, eps_tilde, odd) : eval_p1(eps, sh->bits, odd);
      sum += inner[uk] * vv * static_cast<double>(sh->sign) * p;
    }
  return outer[ui] * sum / odd.weights[0];
}

Scalar eigen_rhs(Bits eps, Bits eps_tilde, const OddParams& odd, bool tilde) {
  const int top = odd.top();
  const auto& w = tilde ? odd.dual_weights : odd.weights;
  const Bits moving = tilde ? eps : eps_tilde;
  const Scalar here = eval_p1(eps, eps_tilde, odd);
  Scalar sum = 0.0;
  for (int k = 0; k <= top; ++k) sum += w[static_cast<std::size_t>(k)] * static_cast<double>(bit(moving, k)) * here;
  for (int k = 0; k <= top; ++k)
    for (int l = 0; l <= top; ++l) {
      if (k == l) continue;
      const auto sh = shift(moving, k, l);
      if (!sh) continue;
      const Scalar p = tilde ? eval_p1(sh->bits, eps_tilde, odd) : eval_p1(eps, sh->bits, odd);
      sum += w[static_cast<std::size_t>(k)] * static_cast<double>(sh->sign) * p;
    }
  return sum;
}

}  // namespace

double recurrence_residual(Bits eps, Bits eps_tilde, const OddParams& odd, Recurrence which, int i) {
  check_bits(eps, odd);
  check_bits(eps_tilde, odd);
  if (i < 0 || i > odd.top()) throw DimensionError("recurrence_residual: index out of range");
  const Scalar p = eval_p1(eps, eps_tilde, odd);
  switch (which) {
    case Recurrence::ith:
      return mixed_residual(static_cast<double>(bit(eps, i)) * p, ith_rhs(eps, eps_tilde, odd, i, false));
    case Recurrence::ith_tilde:
      return mixed_residual(static_cast<double>(bit(eps_tilde, i)) * p, ith_rhs(eps, eps_tilde, odd, i, true));
    case Recurrence::eigen:
      return mixed_residual(static_cast<double>(bit(eps, 0)) * p, eigen_rhs(eps, eps_tilde, odd, false));
    case Recurrence::eigen_tilde:
      return mixed_residual(static_cast<double>(bit(eps_tilde, 0)) * p, eigen_rhs(eps, eps_tilde, odd, true));
  }
  return 0.0;
}

double recurrence_tautology_residual(Bits eps, Bits eps_tilde, const OddParams& odd) {
  Scalar sum = 0.0;
  for (int i = 0; i <= odd.top(); ++i) sum += ith_rhs(eps, eps_tilde, odd, i, false);
  const double d = std::popcount(eps);
  return mixed_residual(d * eval_p1(eps, eps_tilde, odd), sum);
}

Residual recurrence_sweep(const OddParams& odd) {
  const int k = static_cast<int>(odd.size());
  Residual res;
  for (int d = 0; d <= k; ++d) {
    const auto subsets = enumerate_subsets(k, d);
    for (const auto& e : subsets)
      for (const auto& et : subsets)
        for (Recurrence w : {Recurrence::ith, Recurrence::ith_tilde, Recurrence::eigen, Recurrence::eigen_tilde}) {
          const int top = (w == Recurrence::eigen || w == Recurrence::eigen_tilde) ? 0 : odd.top();
          for (int i = 0; i <= top; ++i)
            res.update(recurrence_residual(e.mask(), et.mask(), odd, w, i), [&] {
              return to_string(w) + " i=" + std::to_string(i) + " eps=" + e.to_string() + " eps~=" + et.to_string();
            });
        }
  }
  return res;
}

double sum_lemma_residual(const OddParams& odd) {
  const std::size_t k = odd.size();
  double r = 0.0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      Scalar tail = 0.0;
      for (std::size_t i = 1; i < k; ++i) tail += odd.dual_weights[i] * odd.matrix(a, i) * odd.matrix(b, i);
      const Scalar full = tail + odd.dual_weights[0] * odd.matrix(a, 0) * odd.matrix(b, 0);
      const Scalar expect = a == b ? odd.weights[0] / odd.weights[a] : Scalar{};
      r = std::max(r, mixed_residual(full, expect));
      r = std::max(r, mixed_residual(tail, expect - odd.dual_weights[0]));
    }
  return r;
}

std::vector<Scalar> wedge_vector(Bits fixed, WedgeSide side, const OddParams& odd) {
  const int d = std::popcount(fixed);
  const auto subsets = enumerate_subsets(static_cast<int>(odd.size()), d);
  std::vector<Scalar> v;
  v.reserve(subsets.size());
  for (const auto& s : subsets)
    v.push_back(side == WedgeSide::tilde ? eval_p1(fixed, s.mask(), odd) : eval_p1(s.mask(), fixed, odd));
  return v;
}

Matrix transposed_cartan(int i, WedgeSide side, const OddParams& odd, int d) {
  const int n = odd.top();
  if (i < 0 || i > n) throw DimensionError("transposed_cartan: index out of range");
  const GlDims dims{0, n};
  const SuperBasis basis = SuperBasis::slice(0, n, d, d);
  const auto ui = static_cast<std::size_t>(i);
  Matrix out(basis.size(), basis.size());
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) {
      const auto uk = static_cast<std::size_t>(k);
      const auto ul = static_cast<std::size_t>(l);
      const Scalar c = side == WedgeSide::tilde
                           ? odd.dual_weights[ui] * odd.weights[uk] * odd.matrix(uk, ui) * odd.matrix(ul, ui)
                           : odd.weights[ui] * odd.dual_weights[uk] * odd.matrix(ui, uk) * odd.matrix(ui, ul);
      if (c == Scalar{}) continue;
      // The transpose of xi_k d/dxi_l on the wedge basis is xi_l d/dxi_k.
      out += (c / odd.weights[0]) * frame_operator_matrix(GeneratorId::from_block(dims, GeneratorBlock::D, l, k), basis);
    }
  return out;
}

Residual wedge_eigen_residual(const OddParams& odd, int d) {
  const int n = odd.top();
  const auto subsets = enumerate_subsets(n + 1, d);
  Residual res;
  for (WedgeSide side : {WedgeSide::tilde, WedgeSide::plain}) {
    const char* label = side == WedgeSide::tilde ? "tilde" : "plain";
    std::vector<Matrix> ops;
    for (int i = 0; i <= n; ++i) ops.push_back(transposed_cartan(i, side, odd, d));
    Matrix complement = Matrix::identity(subsets.size()) * static_cast<double>(d);
    for (int i = 1; i <= n; ++i) complement -= ops[static_cast<std::size_t>(i)];
    for (const auto& fixed : subsets) {
      const auto v = wedge_vector(fixed.mask(), side, odd);
      double scale = 1.0;
      for (const Scalar& x : v) scale = std::max(scale, std::abs(x));
      const auto check = [&](const Matrix& op, double eigenvalue, const std::string& what) {
        double r = 0.0;
        for (std::size_t a = 0; a < v.size(); ++a) {
          Scalar s = 0.0;
          for (std::size_t b = 0; b < v.size(); ++b) s += op(a, b) * v[b];
          r = std::max(r, std::abs(s - eigenvalue * v[a]));
        }
        res.update(r / scale, [&] { return std::string(label) + " " + what + " fixed=" + fixed.to_string(); });
      };
      for (int i = 0; i <= n; ++i) check(ops[static_cast<std::size_t>(i)], fixed.contains(i) ? 1.0 : 0.0, "i=" + std::to_string(i));
      check(complement, fixed.contains(0) ? 1.0 : 0.0, "d-minus-sum");
    }
  }
  return res;
}

double wedge_min_singular_value(const OddParams& odd, int d, WedgeSide side) {
  const auto subsets = enumerate_subsets(static_cast<int>(odd.size()), d);
  if (subsets.empty()) return 0.0;
  Matrix m(subsets.size(), subsets.size());
  for (std::size_t c = 0; c < subsets.size(); ++c) {
    const auto v = wedge_vector(subsets[c].mask(), side, odd);
    double norm = 0.0;
    for (const Scalar& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = v[r] / norm;
  }
  return singular_values(m).back();
}

Residual cauchy_binet_residual(const ParamSet& ps, int d) {
  const Matrix c = odd_substitution(ps);
  const std::size_t k = ps.odd.size();
  std::vector<Scalar> w(k);
  for (std::size_t j = 0; j < k; ++j) w[j] = ps.norms.kappa / ps.odd.dual_weights[j];
  const Matrix cwct = c * Matrix::diagonal(w) * c.transpose();
  const auto subsets = enumerate_subsets(static_cast<int>(k), d);
  std::vector<Scalar> expect(subsets.size());
  for (std::size_t a = 0; a < subsets.size(); ++a) {
    Scalar e = std::pow(ps.norms.kappa_tilde, d);
    for (int i : subsets[a].members()) e /= ps.odd.weights[static_cast<std::size_t>(i)];
    expect[a] = e;
  }
  Residual res;
  for (std::size_t a = 0; a < subsets.size(); ++a)
    for (std::size_t b = 0; b < subsets.size(); ++b) {
      Scalar sum = 0.0;
      for (const auto& j : subsets) {
        Scalar wj = 1.0;
        for (int idx : j.members()) wj *= w[static_cast<std::size_t>(idx)];
        sum += minor(c, subsets[a], j) * minor(c, subsets[b], j) * wj;
      }
      const Scalar direct = minor(cwct, subsets[a], subsets[b]);
      const double scale = std::sqrt(std::abs(expect[a]) * std::abs(expect[b]));
      const std::string where = subsets[a].to_string() + " / " + subsets[b].to_string();
      res.update(std::abs(sum - direct) / scale, [&] { return "cauchy-binet " + where; });
      res.update(std::abs(sum - (a == b ? expect[a] : Scalar{})) / scale, [&] { return "diagonal " + where; });
    }
  return res;
}

}  // namespace skraw
