#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "skraw/glaction.hpp"
#include "skraw/krawtchouk.hpp"
#include "skraw/superpoly.hpp"
#include "test_support.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

using namespace skraw;
using skraw::testing::members_of;

namespace {

SuperMonomial mono(Exponents a, Bits e) { return SuperMonomial{std::move(a), e}; }

double fact(int n) { return n <= 1 ? 1.0 : n * fact(n - 1); }

double alpha_fact(const Exponents& a) {
  double r = 1.0;
  for (int x : a) r *= fact(x);
  return r;
}

// Odd polynomial as a Leibniz minor.
Scalar p1_oracle(Bits eps, Bits et, const OddParams& odd) {
  if (std::popcount(eps) != std::popcount(et)) return 0.0;
  return testing::leibniz_minor(odd.matrix, members_of(et), members_of(eps)) / fact(std::popcount(eps));
}

// Coefficient of x^alpha in prod_i (sum_j u_ij x_j)^{at_i}, by enumerating every choice of column per factor.
Scalar even_coefficient_oracle(const Exponents& alpha, const Exponents& at, const Matrix& u) {
  std::vector<int> rows;
  for (std::size_t i = 0; i < at.size(); ++i)
    for (int r = 0; r < at[i]; ++r) rows.push_back(static_cast<int>(i));
  const int k = static_cast<int>(alpha.size());
  Scalar total = 0.0;
  std::vector<int> count(alpha.size(), 0);
  std::function<void(std::size_t, Scalar)> rec = [&](std::size_t pos, Scalar acc) {
    if (pos == rows.size()) {
      if (count == std::vector<int>(alpha.begin(), alpha.end())) total += acc;
      return;
    }
    for (int j = 0; j < k; ++j) {
      ++count[static_cast<std::size_t>(j)];
      rec(pos + 1, acc * u(static_cast<std::size_t>(rows[pos]), static_cast<std::size_t>(j)));
      --count[static_cast<std::size_t>(j)];
    }
  };
  rec(0, 1.0);
  return total;
}

Scalar p0_oracle(const Exponents& alpha, const Exponents& at, const EvenParams& even) {
  const int n = std::accumulate(alpha.begin(), alpha.end(), 0);
  if (n != std::accumulate(at.begin(), at.end(), 0)) return 0.0;
  return alpha_fact(alpha) / fact(n) * even_coefficient_oracle(alpha, at, even.matrix);
}

Scalar p_oracle(const SuperMonomial& a, const SuperMonomial& t, const ParamSet& ps) {
  const int D = a.degree();
  const int d = a.odd_degree();
  return p0_oracle(a.alpha, t.alpha, ps.even) * p1_oracle(a.eps, t.eps, ps.odd) / binomial(D, d);
}

Scalar wpow(const SuperMonomial& u, const std::vector<Scalar>& pw, const std::vector<Scalar>& qw) {
  Scalar r = 1.0;
  for (std::size_t i = 0; i < u.alpha.size(); ++i)
    for (int k = 0; k < u.alpha[i]; ++k) r *= pw[i];
  for (int j : members_of(u.eps)) r *= qw[static_cast<std::size_t>(j)];
  return r;
}

int parity_below(Bits e, int j) {
  int c = 0;
  for (int k : members_of(e)) c += k < j;
  return c;
}

}  // namespace

TEST_CASE("odd polynomial worked values") {
  const OddParams bin = binary_params(0.5);
  CHECK(eval_p1(0u, 0u, bin) == Scalar(1.0));
  CHECK(eval_p1(0b10u, 0b10u, bin) == Scalar(-1.0));
  CHECK(eval_p1(0b01u, 0b10u, bin) == Scalar(1.0));
  CHECK(eval_p1(0b11u, 0b11u, bin) == Scalar(-1.0));
  CHECK(eval_p1(0b11u, 0b10u, bin) == Scalar(0.0));
}

TEST_CASE("odd polynomial: minor, full sum, expansion and Leibniz agree") {
  for (int n = 0; n <= 4; ++n) {
    const OddParams odd = random_admissible_general(n, 31 + static_cast<std::uint64_t>(n));
    const Bits top = Bits{1} << (n + 1);
    for (Bits e = 0; e < top; ++e)
      for (Bits et = 0; et < top; ++et) {
        const Scalar ref = p1_oracle(e, et, odd);
        const Scalar v = eval_p1(e, et, odd);
        CHECK(std::abs(v - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        CHECK(std::abs(eval_p1(e, et, odd, P1Method::full_sum) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        CHECK(std::abs(eval_p1_generating(e, et, odd) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
      }
  }
}

TEST_CASE("even polynomial worked values") {
  const EvenParams bin = binary_params(0.5);
  CHECK(std::abs(eval_p0({1, 0}, {0, 1}, bin) - 1.0) < 1e-15);
  CHECK(std::abs(eval_p0({0, 1}, {0, 1}, bin) + 1.0) < 1e-15);
  const EvenParams r = random_admissible(2, 4);
  for (const auto& a : enumerate_compositions(3, 3)) CHECK(std::abs(eval_p0(a, {3, 0, 0}, r) - 1.0) < 1e-13);
  CHECK(eval_p0({1, 0, 0}, {2, 0, 0}, r) == Scalar(0.0));
}

TEST_CASE("even polynomial against brute-force coefficient extraction") {
  for (int m = 1; m <= 3; ++m) {
    const EvenParams ev = random_admissible_general(m, 70 + static_cast<std::uint64_t>(m));
    for (int N = 0; N <= 3; ++N)
      for (const auto& a : enumerate_compositions(N, m + 1))
        for (const auto& at : enumerate_compositions(N, m + 1)) {
          const Scalar ref = p0_oracle(a, at, ev);
          CHECK(std::abs(eval_p0(a, at, ev) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        }
  }
}

TEST_CASE("mixed polynomial factorization against oracles") {
  for (const ParamSet& ps : {ParamSet::make(binary_params(0.5), binary_params(0.5)), testing::general_param_set(2, 2, 12)}) {
    for (int D = 1; D <= 3; ++D) {
      const SuperBasis basis(ps.m(), ps.n(), D);
      for (const auto& a : basis.monomials())
        for (const auto& t : basis.monomials()) {
          const Scalar v = eval_p(a, t, ps);
          const Scalar gen = eval_p_generating(a, t, ps);
          CHECK(std::abs(v - gen) <= 1e-11 * std::max(1.0, std::abs(v)));
          if (a.odd_degree() == t.odd_degree()) {
            const Scalar ref = p_oracle(a, t, ps);
            CHECK(std::abs(v - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
          } else {
            CHECK(v == Scalar(0.0));
          }
        }
    }
  }
  const ParamSet ps = testing::general_param_set(1, 1, 3);
  CHECK(std::abs(eval_p(mono({2, 0}, 0), mono({1, 1}, 0), ps) - eval_p0({2, 0}, {1, 1}, ps.even)) < 1e-15);
  CHECK(std::abs(eval_p(mono({0, 0}, 3u), mono({0, 0}, 3u), ps) - eval_p1(3u, 3u, ps.odd)) < 1e-15);
}

TEST_CASE("polynomials equal the scaled pairing of tilde and plain monomials") {
  for (const ParamSet& ps : {testing::standard_param_sets(2, 1)[1], testing::general_param_set(1, 2, 14)}) {
    for (int D = 1; D <= 3; ++D) {
      const SuperBasis basis(ps.m(), ps.n(), D);
      const Matrix t = tilde_to_plain_matrix(basis, ps);
      const Matrix k = krawtchouk_matrix(ps, basis);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const int d = basis[b].odd_degree();
        const Scalar c = std::pow(ps.even.weights[0], D - d) * std::pow(ps.odd.weights[0], d) / fact(D);
        for (std::size_t a = 0; a < basis.size(); ++a) {
          const auto& u = basis[a];
          const Scalar norm = alpha_fact(u.alpha) / wpow(u, ps.even.dual_weights, ps.odd.dual_weights) *
                              std::pow(ps.norms.theta, D - u.odd_degree()) * std::pow(ps.norms.kappa, u.odd_degree());
          CHECK(mixed_residual(k(a, b), c * t(a, b) * norm) <= 1e-10);
        }
      }
      CHECK(pairing_residual(ps, D).value <= 1e-10);
    }
  }
}

TEST_CASE("orthogonality on the binary slice by direct summation") {
  const ParamSet ps = ParamSet::make(binary_params(0.5), binary_params(0.5));
  const SuperBasis s = SuperBasis::slice(1, 1, 2, 1);
  REQUIRE(s.size() == 4);
  const double D = 2;
  for (const auto& t1 : s.monomials())
    for (const auto& t2 : s.monomials()) {
      Scalar sum = 0.0;
      for (const auto& a : s.monomials())
        sum += wpow(a, ps.even.dual_weights, ps.odd.dual_weights) * fact(2) / alpha_fact(a.alpha) * p_oracle(a, t1, ps) *
               p_oracle(a, t2, ps);
      const Scalar expect = t1 == t2 ? ps.even.weights[0] * ps.odd.weights[0] / fact(static_cast<int>(D)) *
                                           alpha_fact(t1.alpha) / wpow(t1, ps.even.weights, ps.odd.weights)
                                     : Scalar(0.0);
      CHECK(std::abs(sum - expect) <= 1e-12);
    }
  CHECK(orthogonality_residual(ps, 2, 1).value <= 1e-10);
  const ParamSet triv = ParamSet::make(trivial_params(), trivial_params());
  CHECK(orthogonality_residual(triv, 1, 1).value < 1e-15);
  CHECK(orthogonality_residual(triv, 2, 0).value < 1e-15);
}

TEST_CASE("transition matrices: binary values, inverse pair, blocks") {
  const ParamSet bin = ParamSet::make(binary_params(0.5), binary_params(0.5));
  const TransitionMatrix t1 = transition_matrix(Direction::tilde_to_plain, bin, 1);
  // D = 1 basis: x0, x1, xi0, xi1. Odd block entries kappa~ q~_k v_{jk}.
  const Scalar kt = bin.norms.kappa_tilde;
  CHECK(std::abs(t1.entries(2, 3) - kt * 0.5) < 1e-14);
  CHECK(std::abs(t1.entries(3, 3) + kt * 0.5) < 1e-14);
  CHECK(std::abs(t1.entries(3, 2) - kt * 0.5) < 1e-14);

  const ParamSet triv = ParamSet::make(trivial_params(), trivial_params());
  const TransitionMatrix tt = transition_matrix(Direction::plain_to_tilde, triv, 2);
  CHECK(max_abs_diff(tt.entries, Matrix::identity(tt.basis.size())) < 1e-15);

  for (const ParamSet& ps : {testing::standard_param_sets(2, 2)[2], testing::general_param_set(2, 1, 2)}) {
    for (int D = 1; D <= 3; ++D) {
      const TransitionMatrix a = transition_matrix(Direction::tilde_to_plain, ps, D);
      const TransitionMatrix b = transition_matrix(Direction::plain_to_tilde, ps, D);
      const Matrix direct = tilde_to_plain_matrix(a.basis, ps);
      for (std::size_t r = 0; r < direct.rows(); ++r)
        for (std::size_t c = 0; c < direct.cols(); ++c)
          CHECK(mixed_residual(a.entries(r, c), direct(r, c)) <= 1e-10);
      CHECK(max_abs_diff(a.entries * b.entries, Matrix::identity(a.basis.size())) <= 1e-10);
      CHECK(off_block_max(a.entries, a.basis) == 0.0);
      CHECK(transition_round_trip_residual(ps, D) <= 1e-9);
      CHECK(transition_expansion_residual(ps, D).value <= 1e-10);
    }
  }
}

TEST_CASE("duality exchanges plain and tilde indices") {
  for (const ParamSet& ps : {testing::general_param_set(2, 2, 9), testing::standard_param_sets(1, 1)[0]}) {
    for (int D = 0; D <= 3; ++D)
      for (int d = 0; d <= std::min(D, ps.n() + 1); ++d) CHECK(duality_residual(ps, D, d).value <= 1e-11);
    const ParamSet dual = dualize(ps);
    for (const auto& a : enumerate_compositions(2, ps.m() + 1))
      for (const auto& b : enumerate_compositions(2, ps.m() + 1))
        CHECK(mixed_residual(eval_p0(a, b, ps.even), eval_p0(b, a, dual.even)) <= 1e-11);
  }
}

TEST_CASE("first odd recurrence against a hand-written sum") {
  for (int n = 1; n <= 3; ++n) {
    const OddParams odd = random_admissible_general(n, 90 + static_cast<std::uint64_t>(n));
    const int k1 = n + 1;
    const Scalar q0 = odd.weights[0];
    for (int d = 0; d <= k1; ++d)
      for (const auto& e : enumerate_subsets(k1, d))
        for (const auto& et : enumerate_subsets(k1, d))
          for (int i = 0; i < k1; ++i) {
            const Scalar lhs = (e.contains(i) ? 1.0 : 0.0) * p1_oracle(e.mask(), et.mask(), odd);
            Scalar rhs = 0.0;
            for (int k = 0; k < k1; ++k)
              for (int l = 0; l < k1; ++l) {
                if (!et.contains(l)) continue;
                const Bits lowered = et.mask() & ~(Bits{1} << l);
                if ((lowered >> k) & 1U) continue;
                const int s = parity_below(lowered, k) + parity_below(et.mask(), l);
                const auto uk = static_cast<std::size_t>(k), ul = static_cast<std::size_t>(l), ui = static_cast<std::size_t>(i);
                rhs += (s % 2 ? -1.0 : 1.0) * odd.weights[uk] * odd.matrix(uk, ui) * odd.matrix(ul, ui) *
                       p1_oracle(e.mask(), lowered | (Bits{1} << k), odd);
              }
            rhs *= odd.dual_weights[static_cast<std::size_t>(i)] / q0;
            CHECK(std::abs(lhs - rhs) <= 1e-12);
            CHECK(recurrence_residual(e.mask(), et.mask(), odd, Recurrence::ith, i) <= 1e-10);
          }
  }
}

TEST_CASE("recurrence sweeps, tautology and the odd summation identity") {
  for (int n = 0; n <= 4; ++n) {
    const OddParams odd = n == 1 ? binary_params(0.5) : random_admissible(n, 5 + static_cast<std::uint64_t>(n));
    CHECK(recurrence_sweep(odd).value <= 1e-10);
    CHECK(sum_lemma_residual(odd) <= 1e-11);
    for (const auto& e : enumerate_subsets(n + 1, std::min(n + 1, 2)))
      for (const auto& et : enumerate_subsets(n + 1, std::min(n + 1, 2)))
        CHECK(recurrence_tautology_residual(e.mask(), et.mask(), odd) <= 1e-12);
  }
  const OddParams odd = random_admissible(2, 1);
  for (Recurrence r : {Recurrence::ith, Recurrence::ith_tilde, Recurrence::eigen, Recurrence::eigen_tilde})
    CHECK(recurrence_residual(0u, 0u, odd, r, 0) == 0.0);
  CHECK(to_string(Recurrence::eigen_tilde) == "eigen_tilde");
}

TEST_CASE("wedge vectors are Cartan eigenvectors and a basis") {
  const OddParams bin = binary_params(0.5);
  const auto v0 = wedge_vector(0b01u, WedgeSide::tilde, bin);
  const auto v1 = wedge_vector(0b10u, WedgeSide::tilde, bin);
  REQUIRE(v0.size() == 2);
  CHECK(std::abs(v0[0] * v1[1] - v0[1] * v1[0]) > 0.5);
  CHECK(wedge_min_singular_value(bin, 1, WedgeSide::tilde) > 1e-8);

  const OddParams triv = trivial_params();
  CHECK(wedge_eigen_residual(triv, 1).value == 0.0);

  for (int n = 1; n <= 4; ++n) {
    const OddParams odd = random_admissible_general(n, 40 + static_cast<std::uint64_t>(n));
    for (int d = 0; d <= n + 1; ++d) {
      CHECK(wedge_eigen_residual(odd, d).value <= 1e-10);
      CHECK(wedge_min_singular_value(odd, d, WedgeSide::tilde) > 1e-8);
      CHECK(wedge_min_singular_value(odd, d, WedgeSide::plain) > 1e-8);
    }
    // Entries of the wedge vector are the polynomial values themselves.
    const auto subs = enumerate_subsets(n + 1, 1);
    const auto w = wedge_vector(subs[0].mask(), WedgeSide::tilde, odd);
    for (std::size_t k = 0; k < subs.size(); ++k) CHECK(std::abs(w[k] - p1_oracle(subs[0].mask(), subs[k].mask(), odd)) < 1e-14);
  }
}

TEST_CASE("Cauchy-Binet on the odd Gram matrix") {
  for (int n = 1; n <= 4; ++n) {
    const ParamSet ps = testing::general_param_set(1, n, 60 + static_cast<std::uint64_t>(n));
    for (int d = 0; d <= n + 1; ++d) CHECK(cauchy_binet_residual(ps, d).value <= 1e-11);
  }
}
