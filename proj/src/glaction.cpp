#include "skraw/glaction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace skraw {

GeneratorBlock GeneratorId::block() const {
  const bool r = dims.is_odd(row);
  const bool c = dims.is_odd(col);
  if (!r && !c) return GeneratorBlock::A;
  if (!r && c) return GeneratorBlock::B;
  if (r && !c) return GeneratorBlock::C;
  return GeneratorBlock::D;
}

Bits GeneratorId::multicolor() const {
  const int off = dims.m + 1;
  Bits b = 0;
  if (dims.is_odd(row)) b ^= Bits{1} << (row - off);
  if (dims.is_odd(col)) b ^= Bits{1} << (col - off);
  return b;
}

std::pair<int, int> GeneratorId::block_indices() const {
  const int off = dims.m + 1;
  return {dims.is_odd(row) ? row - off : row, dims.is_odd(col) ? col - off : col};
}

std::string GeneratorId::name() const {
  static constexpr const char* kLetters = "ABCD";
  const auto [i, j] = block_indices();
  std::ostringstream os;
  os << kLetters[static_cast<int>(block())] << (frame == Frame::tilde ? "~" : "") << "_{" << i << ","
     << j << "}";
  return os.str();
}

GeneratorId GeneratorId::from_block(GlDims dims, GeneratorBlock b, int i, int j, Frame f) {
  const int off = dims.m + 1;
  const bool r_odd = b == GeneratorBlock::C || b == GeneratorBlock::D;
  const bool c_odd = b == GeneratorBlock::B || b == GeneratorBlock::D;
  const int row = r_odd ? i + off : i;
  const int col = c_odd ? j + off : j;
  if (i < 0 || j < 0 || row >= dims.size() || col >= dims.size() || (!r_odd && row > dims.m) ||
      (!c_odd && col > dims.m))
    throw DimensionError("generator index out of range");
  return {dims, row, col, f};
}

std::vector<GeneratorId> all_generators(GlDims dims, Frame frame) {
  std::vector<GeneratorId> out;
  out.reserve(static_cast<std::size_t>(dims.size() * dims.size()));
  for (int r = 0; r < dims.size(); ++r)
    for (int c = 0; c < dims.size(); ++c) out.push_back({dims, r, c, frame});
  return out;
}

SuperPolynomial apply_generator(const GeneratorId& x, const SuperMonomial& mono) {
  const int even_vars = x.dims.m + 1;
  if (static_cast<int>(mono.alpha.size()) != even_vars)
    throw DimensionError("apply_generator: monomial shape differs from generator shape");
  SuperPolynomial out(even_vars);
  const auto [i, j] = x.block_indices();
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  const Bits vi = Bits{1} << i;
  const Bits vj = Bits{1} << j;
  SuperMonomial res = mono;

  switch (x.block()) {
    case GeneratorBlock::A: {
      if (mono.alpha[uj] == 0) break;
      const double c = mono.alpha[uj];
      --res.alpha[uj];
      ++res.alpha[ui];
      out.add(res, c);
      break;
    }
    case GeneratorBlock::B: {
      if ((mono.eps & vj) == 0) break;
      const double s = sign_prefix(mono.eps, j) % 2 ? -1.0 : 1.0;
      res.eps &= ~vj;
      ++res.alpha[ui];
      out.add(res, s);
      break;
    }
    case GeneratorBlock::C: {
      if (mono.alpha[uj] == 0 || (mono.eps & vi) != 0) break;
      const double s = sign_prefix(mono.eps, i) % 2 ? -1.0 : 1.0;
      const double c = mono.alpha[uj];
      --res.alpha[uj];
      res.eps |= vi;
      out.add(res, s * c);
      break;
    }
    case GeneratorBlock::D: {
      if ((mono.eps & vj) == 0) break;
      const Bits lowered = mono.eps & ~vj;
      if ((lowered & vi) != 0) break;
      const int k = sign_prefix(mono.eps, j) + sign_prefix(lowered, i);
      res.eps = lowered | vi;
      out.add(res, k % 2 ? -1.0 : 1.0);
      break;
    }
  }
  return out;
}

Matrix frame_matrix(const ParamSet& ps) {
  const std::size_t k = ps.even.size();
  const std::size_t l = ps.odd.size();
  Matrix m(k + l, k + l);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) m(a, b) = ps.norms.R(a, b);
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b) m(k + a, k + b) = ps.norms.S(a, b);
  return m;
}

Matrix frame_matrix_inverse(const ParamSet& ps) {
  const std::size_t k = ps.even.size();
  const std::size_t l = ps.odd.size();
  Matrix m(k + l, k + l);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      m(a, b) = ps.norms.theta * ps.even.weights[a] * ps.even.matrix(a, b);
  for (std::size_t a = 0; a < l; ++a)
    for (std::size_t b = 0; b < l; ++b)
      m(k + a, k + b) = ps.norms.kappa * ps.odd.weights[a] * ps.odd.matrix(a, b);
  return m;
}

Matrix gl_matrix(const GeneratorId& x, const ParamSet& ps) {
  const auto sz = static_cast<std::size_t>(x.dims.size());
  if (GlDims::of(ps) != x.dims) throw DimensionError("gl_matrix: generator shape differs from parameters");
  Matrix e(sz, sz);
  const auto r = static_cast<std::size_t>(x.row);
  const auto c = static_cast<std::size_t>(x.col);
  if (x.frame == Frame::plain) {
    e(r, c) = 1.0;
    return e;
  }
  const Matrix m = frame_matrix(ps);
  const Matrix minv = frame_matrix_inverse(ps);
  for (std::size_t k = 0; k < sz; ++k)
    for (std::size_t l = 0; l < sz; ++l) e(k, l) = m(k, r) * minv(c, l);
  return e;
}

SuperPolynomial apply_element(const Matrix& element, const SuperPolynomial& u) {
  const int even_vars = u.even_vars();
  GlDims dims{even_vars - 1, static_cast<int>(element.rows()) - even_vars - 1};
  if (!element.square() || dims.n < 0) throw DimensionError("apply_element: element shape mismatch");
  SuperPolynomial out(even_vars);
  for (std::size_t r = 0; r < element.rows(); ++r) {
    for (std::size_t c = 0; c < element.cols(); ++c) {
      const Scalar w = element(r, c);
      if (w == Scalar{}) continue;
      const GeneratorId g{dims, static_cast<int>(r), static_cast<int>(c), Frame::plain};
      for (const auto& [mono, coeff] : u.terms()) {
        SuperPolynomial img = apply_generator(g, mono);
        img *= w * coeff;
        out += img;
      }
    }
  }
  out.prune();
  return out;
}

SuperPolynomial apply_in_plain(const GeneratorId& x, const SuperPolynomial& u, const ParamSet& ps) {
  if (x.frame == Frame::tilde) return apply_element(gl_matrix(x, ps), u);
  SuperPolynomial out(u.even_vars());
  for (const auto& [mono, coeff] : u.terms()) {
    SuperPolynomial img = apply_generator(x, mono);
    img *= coeff;
    out += img;
  }
  return out;
}

namespace {

void accumulate_columns(Matrix& out, const GeneratorId& g, const SuperBasis& basis, Scalar w) {
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const SuperPolynomial img = apply_generator(g, basis[col]);
    for (const auto& [mono, c] : img.terms()) {
      const auto row = basis.index_of(mono);
      if (!row) throw DimensionError("generator image leaves the basis");
      out(*row, col) += w * c;
    }
  }
}

double norm_scale(const Matrix& a) { return std::max(1.0, a.max_abs()); }

}  // namespace

Matrix operator_matrix(const Matrix& element, const SuperBasis& basis) {
  const GlDims dims{basis.m(), basis.n()};
  if (element.rows() != static_cast<std::size_t>(dims.size()) || !element.square())
    throw DimensionError("operator_matrix: element shape mismatch");
  Matrix out(basis.size(), basis.size());
  for (int r = 0; r < dims.size(); ++r)
    for (int c = 0; c < dims.size(); ++c) {
      const Scalar w = element(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      if (w != Scalar{}) accumulate_columns(out, {dims, r, c, Frame::plain}, basis, w);
    }
  return out;
}

Matrix frame_operator_matrix(const GeneratorId& x, const SuperBasis& basis) {
  if (x.dims != GlDims{basis.m(), basis.n()}) throw DimensionError("frame_operator_matrix: shape mismatch");
  Matrix out(basis.size(), basis.size());
  accumulate_columns(out, x, basis, 1.0);
  return out;
}

Matrix supertranspose(const Matrix& x, GlDims dims) {
  const auto sz = static_cast<std::size_t>(dims.size());
  if (x.rows() != sz || x.cols() != sz) throw DimensionError("supertranspose: shape mismatch");
  Matrix out(sz, sz);
  for (std::size_t i = 0; i < sz; ++i)
    for (std::size_t j = 0; j < sz; ++j) {
      const bool neg = !dims.is_odd(static_cast<int>(i)) && dims.is_odd(static_cast<int>(j));
      out(j, i) = neg ? -x(i, j) : x(i, j);
    }
  return out;
}

Matrix phi_matrix(const Matrix& x, const ParamSet& ps) {
  const GlDims dims = GlDims::of(ps);
  const auto sz = static_cast<std::size_t>(dims.size());
  const std::size_t k = ps.even.size();
  std::vector<Scalar> g(sz);
  for (std::size_t i = 0; i < sz; ++i)
    g[i] = i < k ? ps.even.dual_weights[i] / ps.norms.theta : ps.odd.dual_weights[i - k] / ps.norms.kappa;
  Matrix st = supertranspose(x, dims);
  for (std::size_t i = 0; i < sz; ++i)
    for (std::size_t j = 0; j < sz; ++j) st(i, j) *= g[i] / g[j];
  return st;
}

PhiImage phi(const GeneratorId& x, const ParamSet& ps) {
  const bool tilde = x.frame == Frame::tilde;
  const auto& pw = tilde ? ps.even.weights : ps.even.dual_weights;
  const auto& qw = tilde ? ps.odd.weights : ps.odd.dual_weights;
  const Scalar th = tilde ? ps.norms.theta_tilde : ps.norms.theta;
  const Scalar ka = tilde ? ps.norms.kappa_tilde : ps.norms.kappa;
  const auto [i, j] = x.block_indices();
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  switch (x.block()) {
    case GeneratorBlock::A:
      return {GeneratorId::from_block(x.dims, GeneratorBlock::A, j, i, x.frame), pw[uj] / pw[ui]};
    case GeneratorBlock::B:
      return {GeneratorId::from_block(x.dims, GeneratorBlock::C, j, i, x.frame), -th * qw[uj] / (ka * pw[ui])};
    case GeneratorBlock::C:
      return {GeneratorId::from_block(x.dims, GeneratorBlock::B, j, i, x.frame), ka * pw[uj] / (th * qw[ui])};
    case GeneratorBlock::D:
      return {GeneratorId::from_block(x.dims, GeneratorBlock::D, j, i, x.frame), qw[uj] / qw[ui]};
  }
  throw DimensionError("phi: unreachable block");
}

namespace {

Scalar norm_with(const SuperMonomial& mono, const std::vector<Scalar>& pw, const std::vector<Scalar>& qw,
                 Scalar th, Scalar ka) {
  Scalar r = 1.0;
  for (std::size_t i = 0; i < mono.alpha.size(); ++i) {
    const int a = mono.alpha[i];
    r *= factorial(a) * std::pow(th / pw[i], a);
  }
  for (Bits b = mono.eps; b != 0; b &= b - 1) r *= ka / qw[static_cast<std::size_t>(std::countr_zero(b))];
  return r;
}

}  // namespace

Scalar monomial_norm(const SuperMonomial& mono, const ParamSet& ps) {
  return norm_with(mono, ps.even.dual_weights, ps.odd.dual_weights, ps.norms.theta, ps.norms.kappa);
}

Scalar tilde_monomial_norm(const SuperMonomial& mono, const ParamSet& ps) {
  return norm_with(mono, ps.even.weights, ps.odd.weights, ps.norms.theta_tilde, ps.norms.kappa_tilde);
}

Scalar pair(const SuperPolynomial& u, const SuperPolynomial& v, const ParamSet& ps) {
  Scalar s = 0.0;
  for (const auto& [mono, c] : u.terms()) {
    const Scalar d = v.coefficient(mono);
    if (d != Scalar{}) s += c * d * monomial_norm(mono, ps);
  }
  return s;
}

namespace {

int contravariance_sign(const GeneratorId& x, Bits u_eps) {
  if (x.parity() == 0) return 1;
  return std::popcount(x.multicolor() & u_eps) % 2 ? -1 : 1;
}

SuperPolynomial in_plain(const SuperPolynomial& p, Frame f, const ParamSet& ps) {
  return f == Frame::plain ? p : tilde_to_plain(p, ps);
}

}  // namespace

double contravariance_residual(const GeneratorId& x, const SuperMonomial& u, const SuperMonomial& v,
                               const ParamSet& ps, ContravarianceScale scale) {
  const SuperPolynomial pu = SuperPolynomial::monomial(u);
  const SuperPolynomial pv = SuperPolynomial::monomial(v);
  const PhiImage ph = phi(x, ps);
  const Scalar lhs = pair(in_plain(apply_generator(x, u), x.frame, ps), in_plain(pv, x.frame, ps), ps);
  const Scalar rhs = static_cast<double>(contravariance_sign(x, u.eps)) * ph.coefficient *
                     pair(in_plain(pu, x.frame, ps), in_plain(apply_generator(ph.image, v), x.frame, ps), ps);
  if (scale == ContravarianceScale::mixed) return mixed_residual(lhs, rhs);
  const Scalar nu = pair(in_plain(pu, x.frame, ps), in_plain(pu, x.frame, ps), ps);
  const Scalar nv = pair(in_plain(pv, x.frame, ps), in_plain(pv, x.frame, ps), ps);
  return std::abs(lhs - rhs) / std::sqrt(std::abs(nu) * std::abs(nv));
}

namespace {

Matrix plain_gram(const SuperBasis& basis, const ParamSet& ps) {
  Matrix g(basis.size(), basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) g(a, a) = monomial_norm(basis[a], ps);
  return g;
}

}  // namespace

Residual contravariance_sweep(const ParamSet& ps, int degree, ContravarianceScale scale) {
  const GlDims dims = GlDims::of(ps);
  const SuperBasis basis(dims.m, dims.n, degree);
  const Matrix n = plain_gram(basis, ps);
  const Matrix t = tilde_to_plain_matrix(basis, ps);
  const Matrix nt = t.transpose() * n * t;
  Residual res;
  for (Frame f : {Frame::plain, Frame::tilde}) {
    const Matrix& g = f == Frame::plain ? n : nt;
    for (const auto& x : all_generators(dims, f)) {
      const PhiImage ph = phi(x, ps);
      const Matrix lhs = frame_operator_matrix(x, basis).transpose() * g;
      const Matrix rhs = g * frame_operator_matrix(ph.image, basis);
      for (std::size_t a = 0; a < basis.size(); ++a) {
        const double s = contravariance_sign(x, basis[a].eps);
        for (std::size_t b = 0; b < basis.size(); ++b) {
          const Scalar want = s * ph.coefficient * rhs(a, b);
          const double r = scale == ContravarianceScale::mixed
                               ? mixed_residual(lhs(a, b), want)
                               : std::abs(lhs(a, b) - want) / std::sqrt(std::abs(g(a, a)) * std::abs(g(b, b)));
          res.update(r, [&] { return x.name() + " u=" + basis[a].to_string() + " v=" + basis[b].to_string(); });
        }
      }
    }
  }
  return res;
}

std::string to_string(CartanIdentity which) {
  switch (which) {
    case CartanIdentity::even_tilde_from_plain: return "even_tilde_from_plain";
    case CartanIdentity::even_plain_from_tilde: return "even_plain_from_tilde";
    case CartanIdentity::odd_tilde_from_plain: return "odd_tilde_from_plain";
    case CartanIdentity::odd_plain_from_tilde: return "odd_plain_from_tilde";
  }
  return "unknown";
}

double cartan_swap_residual(int i, CartanIdentity which, const ParamSet& ps, int degree) {
  const GlDims dims = GlDims::of(ps);
  const bool even = which == CartanIdentity::even_tilde_from_plain || which == CartanIdentity::even_plain_from_tilde;
  const bool to_tilde = which == CartanIdentity::even_tilde_from_plain || which == CartanIdentity::odd_tilde_from_plain;
  const ParamTuple& tup = even ? ps.even : ps.odd;
  if (i < 0 || i > tup.top()) throw DimensionError("cartan_swap_residual: index out of range");
  const GeneratorBlock blk = even ? GeneratorBlock::A : GeneratorBlock::D;
  const SuperBasis basis(dims.m, dims.n, degree);
  const Matrix t = tilde_to_plain_matrix(basis, ps);
  const std::size_t k = tup.size();
  const auto ui = static_cast<std::size_t>(i);
  const Scalar w0 = tup.weights[0];

  Matrix plain_op(basis.size(), basis.size());
  Matrix tilde_op(basis.size(), basis.size());
  if (to_tilde) {
    tilde_op = frame_operator_matrix(GeneratorId::from_block(dims, blk, i, i, Frame::tilde), basis);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const Scalar c = tup.weights[ui] * tup.dual_weights[a] * tup.matrix(ui, a) * tup.matrix(ui, b) / w0;
        plain_op += c * frame_operator_matrix(
                            GeneratorId::from_block(dims, blk, static_cast<int>(a), static_cast<int>(b)), basis);
      }
  } else {
    plain_op = frame_operator_matrix(GeneratorId::from_block(dims, blk, i, i), basis);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        const Scalar c = tup.dual_weights[ui] * tup.weights[a] * tup.matrix(a, ui) * tup.matrix(b, ui) / w0;
        tilde_op += c * frame_operator_matrix(GeneratorId::from_block(dims, blk, static_cast<int>(a),
                                                                      static_cast<int>(b), Frame::tilde),
                                              basis);
      }
  }
  const Matrix lhs = plain_op * t;
  const Matrix rhs = t * tilde_op;
  return max_abs_diff(lhs, rhs) / std::max(norm_scale(lhs), norm_scale(rhs));
}

Residual cartan_swap_sweep(const ParamSet& ps, int degree) {
  Residual res;
  for (CartanIdentity w : {CartanIdentity::even_tilde_from_plain, CartanIdentity::even_plain_from_tilde,
                           CartanIdentity::odd_tilde_from_plain, CartanIdentity::odd_plain_from_tilde}) {
    const bool even = w == CartanIdentity::even_tilde_from_plain || w == CartanIdentity::even_plain_from_tilde;
    const int top = even ? ps.m() : ps.n();
    for (int i = 0; i <= top; ++i)
      res.update(cartan_swap_residual(i, w, ps, degree),
                 [&] { return to_string(w) + " i=" + std::to_string(i) + " D=" + std::to_string(degree); });
  }
  return res;
}

Residual supercommutator_sweep(GlDims dims, int degree) {
  const SuperBasis basis(dims.m, dims.n, degree);
  const auto gens = all_generators(dims, Frame::plain);
  std::vector<Matrix> ops;
  ops.reserve(gens.size());
  for (const auto& g : gens) ops.push_back(frame_operator_matrix(g, basis));
  const auto op_of = [&](int r, int c) -> const Matrix& {
    return ops[static_cast<std::size_t>(r * dims.size() + c)];
  };
  Residual res;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b) {
      const auto& x = gens[a];
      const auto& y = gens[b];
      const double s = (x.parity() * y.parity()) % 2 ? -1.0 : 1.0;
      const Matrix lhs = ops[a] * ops[b] - s * (ops[b] * ops[a]);
      Matrix rhs(basis.size(), basis.size());
      if (x.col == y.row) rhs += op_of(x.row, y.col);
      if (x.row == y.col) rhs -= s * op_of(y.row, x.col);
      res.update(max_abs_diff(lhs, rhs), [&] { return "[" + x.name() + "," + y.name() + "]"; });
    }
  return res;
}

Residual multicolor_sweep(GlDims dims, int degree) {
  const SuperBasis basis(dims.m, dims.n, degree);
  Residual res;
  for (const auto& x : all_generators(dims, Frame::plain))
    for (const auto& mono : basis.monomials())
      for (const SuperPolynomial out = apply_generator(x, mono); const auto& [img, c] : out.terms())
        if (img.eps != (mono.eps ^ x.multicolor()))
          res.update(1.0, [&] { return x.name() + " on " + mono.to_string(); });
  return res;
}

Residual phi_antiautomorphism_sweep(const ParamSet& ps, int degree) {
  const GlDims dims = GlDims::of(ps);
  const SuperBasis basis(dims.m, dims.n, degree);
  const auto gens = all_generators(dims, Frame::plain);
  std::vector<Matrix> ops;
  std::vector<Matrix> phi_ops;
  for (const auto& g : gens) {
    ops.push_back(gl_matrix(g, ps));
    const PhiImage ph = phi(g, ps);
    phi_ops.push_back(ph.coefficient * frame_operator_matrix(ph.image, basis));
  }
  Residual res;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = 0; b < gens.size(); ++b) {
      const double s = (gens[a].parity() * gens[b].parity()) % 2 ? -1.0 : 1.0;
      const Matrix bracket = ops[a] * ops[b] - s * (ops[b] * ops[a]);
      const Matrix lhs = operator_matrix(phi_matrix(bracket, ps), basis);
      const Matrix rhs = s * (phi_ops[b] * phi_ops[a] - s * (phi_ops[a] * phi_ops[b]));
      res.update(max_abs_diff(lhs, rhs) / std::max(norm_scale(lhs), norm_scale(rhs)),
                 [&] { return "phi([" + gens[a].name() + "," + gens[b].name() + "])"; });
    }
  return res;
}

Residual phi_table_residual(const ParamSet& ps) {
  const GlDims dims = GlDims::of(ps);
  Residual res;
  for (Frame f : {Frame::plain, Frame::tilde})
    for (const auto& x : all_generators(dims, f)) {
      const PhiImage ph = phi(x, ps);
      const Matrix lhs = phi_matrix(gl_matrix(x, ps), ps);
      const Matrix rhs = ph.coefficient * gl_matrix(ph.image, ps);
      res.update(max_abs_diff(lhs, rhs) / std::max(norm_scale(lhs), norm_scale(rhs)),
                 [&] { return "phi(" + x.name() + ")"; });
    }
  return res;
}

Residual tilde_gram_residual(const ParamSet& ps, int degree) {
  const GlDims dims = GlDims::of(ps);
  const SuperBasis basis(dims.m, dims.n, degree);
  const Matrix t = tilde_to_plain_matrix(basis, ps);
  const Matrix g = t.transpose() * plain_gram(basis, ps) * t;
  std::vector<Scalar> pred(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) pred[a] = tilde_monomial_norm(basis[a], ps);
  Residual res;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Scalar expect = a == b ? pred[a] : Scalar{};
      const double scale = std::sqrt(std::abs(pred[a]) * std::abs(pred[b]));
      res.update(std::abs(g(a, b) - expect) / scale,
                 [&] { return basis[a].to_string() + " / " + basis[b].to_string(); });
    }
  return res;
}

std::size_t reachable_count(GlDims dims, int degree, const SuperMonomial& start) {
  if (start.degree() != degree || static_cast<int>(start.alpha.size()) != dims.m + 1)
    throw DimensionError("reachable_count: start monomial is not in P^D");
  const auto gens = all_generators(dims, Frame::plain);
  std::set<SuperMonomial> seen{start};
  std::deque<SuperMonomial> queue{start};
  while (!queue.empty()) {
    const SuperMonomial cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens)
      for (const SuperPolynomial out = apply_generator(g, cur); const auto& [img, c] : out.terms())
        if (seen.insert(img).second) queue.push_back(img);
  }
  return seen.size();
}

}  // namespace skraw
