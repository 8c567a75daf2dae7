#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "skraw/superpoly.hpp"
#include "test_support.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <random>

using namespace skraw;
using skraw::testing::members_of;
using skraw::testing::reorder_sign;

namespace {

SuperMonomial mono(Exponents a, Bits e) { return SuperMonomial{std::move(a), e}; }

SuperPolynomial xi(int j, int even_vars, Scalar c = 1.0) {
  return SuperPolynomial::monomial(mono(Exponents(static_cast<std::size_t>(even_vars), 0), Bits{1} << j), c);
}

Scalar power(Scalar base, int k) {
  Scalar r = 1.0;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

}  // namespace

TEST_CASE("sign_prefix counts lower set bits") {
  CHECK(sign_prefix(0b101u, 2) == 1);
  CHECK(sign_prefix(0u, 3) == 0);
  CHECK(sign_prefix(0b111u, 0) == 0);
  CHECK(sign_prefix(0b1011u, 4) == 3);
}

TEST_CASE("sign bookkeeping identity for moving one fermion") {
  // s_i(e - v_j) + s_j(e) = s_i(e + v_i - v_j) + s_j(e - v_j) when e_j = 1 and (e - v_j)_i = 0.
  for (int n1 = 1; n1 <= 7; ++n1)
    for (Bits e = 0; e < (Bits{1} << n1); ++e)
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) {
          if (!((e >> j) & 1U)) continue;
          const Bits ej = e & ~(Bits{1} << j);
          if ((ej >> i) & 1U) continue;
          const Bits moved = ej | (Bits{1} << i);
          const int lhs = sign_prefix(ej, i) + sign_prefix(e, j);
          const int rhs = sign_prefix(moved, i) + sign_prefix(ej, j);
          CHECK((lhs - rhs) % 2 == 0);
        }
}

TEST_CASE("wedge_mul matches brute-force reordering") {
  CHECK(wedge_mul(0b01u, 0b10u).sign == 1);
  CHECK(wedge_mul(0b10u, 0b01u).sign == -1);
  CHECK(wedge_mul(0b01u, 0b01u).sign == 0);
  for (Bits a = 0; a < 64; ++a)
    for (Bits b = 0; b < 64; ++b) {
      std::vector<int> word = members_of(a);
      for (int x : members_of(b)) word.push_back(x);
      const WedgeProduct w = wedge_mul(a, b);
      CHECK(w.sign == reorder_sign(word));
      if (w.sign != 0) CHECK(w.bits == (a | b));
    }
}

TEST_CASE("wedge sign is associative on disjoint triples") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 2000; ++trial) {
    Bits a = 0, b = 0, c = 0;
    for (int i = 0; i < 7; ++i) {
      const int r = pick(rng);
      (r == 0 ? a : r == 1 ? b : c) |= Bits{1} << i;
    }
    const auto ab = wedge_mul(a, b);
    const auto bc = wedge_mul(b, c);
    CHECK(ab.sign * wedge_mul(a | b, c).sign == bc.sign * wedge_mul(a, b | c).sign);
  }
}

TEST_CASE("polynomial products respect anticommutation") {
  const SuperPolynomial x0 = SuperPolynomial::monomial(mono({1, 0}, 0));
  const SuperPolynomial a = xi(0, 2);
  const SuperPolynomial b = xi(1, 2);
  CHECK((b * a).coefficient(mono({0, 0}, 0b11u)) == Scalar(-1.0));
  CHECK((a * b).coefficient(mono({0, 0}, 0b11u)) == Scalar(1.0));
  CHECK((a * a).empty());
  CHECK(max_abs_diff(x0 * a, a * x0) == 0.0);
  SuperPolynomial s = a;
  s += xi(0, 2, -1.0);
  CHECK(s.empty());
  SuperPolynomial tiny = SuperPolynomial::monomial(mono({0, 0}, 1u), 1e-17);
  tiny.prune();
  CHECK(tiny.empty());
}

TEST_CASE("odd product of the Hadamard matrix") {
  const Matrix c{{1.0, 1.0}, {1.0, -1.0}};
  const SuperPolynomial p = expand_odd_product(c, IndexSubset{0, 1});
  CHECK(p.terms().size() == 1);
  CHECK(p.coefficient(mono({}, 0b11u)) == Scalar(-2.0));
  const SuperPolynomial id = expand_odd_product(Matrix::identity(2), IndexSubset{0, 1});
  CHECK(id.coefficient(mono({}, 0b11u)) == Scalar(1.0));
}

TEST_CASE("odd product coefficients are the row minors") {
  for (int n1 = 1; n1 <= 7; ++n1) {
    const Matrix c = testing::random_matrix(static_cast<std::size_t>(n1), static_cast<std::size_t>(n1), 300 + n1);
    for (int d = 0; d <= n1; ++d)
      for (const auto& rows : enumerate_subsets(n1, d)) {
        const SuperPolynomial p = expand_odd_product(c, rows);
        for (const auto& [m, v] : p.terms()) CHECK(std::popcount(m.eps) == d);
        for (const auto& cols : enumerate_subsets(n1, d)) {
          const Scalar ref = testing::leibniz_minor(c, rows.members(), cols.members());
          CHECK(std::abs(p.coefficient(mono({}, cols.mask())) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        }
      }
  }
}

TEST_CASE("even product expansions") {
  const auto sq = expand_even_product(Matrix::identity(2), {2, 0});
  CHECK(sq.size() == 1);
  CHECK(sq.at({2, 0}) == Scalar(1.0));

  const auto dos = expand_even_product(Matrix{{1.0, 1.0}, {1.0, -1.0}}, {1, 1});
  CHECK(std::abs(dos.at({2, 0}) - 1.0) < 1e-15);
  CHECK(std::abs(dos.at({0, 2}) + 1.0) < 1e-15);
  CHECK((dos.count({1, 1}) == 0 || std::abs(dos.at({1, 1})) < 1e-15));

  // Evaluation at random points against the product itself.
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 1; k <= 4; ++k) {
    const Matrix c = testing::random_matrix(static_cast<std::size_t>(k), static_cast<std::size_t>(k), 50 + k);
    for (const auto& at : enumerate_compositions(3, k)) {
      const auto coeffs = expand_even_product(c, at);
      std::vector<Scalar> x(static_cast<std::size_t>(k));
      for (auto& xv : x) xv = Scalar(u(rng), u(rng));
      Scalar direct = 1.0;
      for (int i = 0; i < k; ++i) {
        Scalar lin = 0.0;
        for (int j = 0; j < k; ++j) lin += c(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * x[static_cast<std::size_t>(j)];
        direct *= power(lin, at[static_cast<std::size_t>(i)]);
      }
      Scalar via = 0.0;
      for (const auto& [alpha, v] : coeffs) {
        CHECK(std::accumulate(alpha.begin(), alpha.end(), 0) == 3);
        Scalar term = v;
        for (int j = 0; j < k; ++j) term *= power(x[static_cast<std::size_t>(j)], alpha[static_cast<std::size_t>(j)]);
        via += term;
      }
      CHECK(std::abs(direct - via) < 1e-12);
    }
  }
}

TEST_CASE("tilde variables in the trivial and binary cases") {
  const ParamSet triv = ParamSet::make(trivial_params(), trivial_params());
  const SuperPolynomial x0 = to_monomial_basis(mono({1}, 0), triv);
  CHECK(x0.coefficient(mono({1}, 0)) == Scalar(1.0));
  CHECK(to_monomial_basis(mono({0}, 1u), triv).coefficient(mono({0}, 1u)) == Scalar(1.0));

  const ParamSet bin = ParamSet::make(binary_params(0.5), binary_params(0.5));
  const Scalar tt = bin.norms.theta_tilde;
  const SuperPolynomial xt0 = to_monomial_basis(mono({1, 0}, 0), bin);
  CHECK(std::abs(xt0.coefficient(mono({1, 0}, 0)) - tt / 2.0) < 1e-15);
  CHECK(std::abs(xt0.coefficient(mono({0, 1}, 0)) - tt / 2.0) < 1e-15);
  const SuperPolynomial xt1 = to_monomial_basis(mono({0, 1}, 0), bin);
  CHECK(std::abs(xt1.coefficient(mono({0, 1}, 0)) + tt / 2.0) < 1e-15);
  // Odd block at D = 1 is kappa~ q~_k v_{jk}.
  const Scalar kt = bin.norms.kappa_tilde;
  const SuperPolynomial xit1 = to_monomial_basis(mono({0, 0}, 0b10u), bin);
  CHECK(std::abs(xit1.coefficient(mono({0, 0}, 0b01u)) - kt * 0.5) < 1e-15);
  CHECK(std::abs(xit1.coefficient(mono({0, 0}, 0b10u)) + kt * 0.5) < 1e-15);
}

TEST_CASE("tilde monomials equal ordered products of tilde variables") {
  for (const ParamSet& ps : {testing::standard_param_sets(2, 2)[1], testing::general_param_set(1, 3, 4)}) {
    const int m = ps.m();
    const SuperBasis basis(m, ps.n(), 3);
    for (const auto& t : basis.monomials()) {
      SuperPolynomial prod = SuperPolynomial::monomial(mono(Exponents(static_cast<std::size_t>(m + 1), 0), 0));
      for (int i = 0; i <= m; ++i)
        for (int r = 0; r < t.alpha[static_cast<std::size_t>(i)]; ++r) {
          Exponents e(static_cast<std::size_t>(m + 1), 0);
          e[static_cast<std::size_t>(i)] = 1;
          prod = prod * to_monomial_basis(mono(e, 0), ps);
        }
      for (int j : members_of(t.eps))
        prod = prod * to_monomial_basis(mono(Exponents(static_cast<std::size_t>(m + 1), 0), Bits{1} << j), ps);
      const SuperPolynomial direct = to_monomial_basis(t, ps);
      CHECK(max_abs_diff(direct, prod) < 1e-12);
      for (const auto& [mm, v] : direct.terms()) CHECK(mm.degree() == 3);
    }
  }
}

TEST_CASE("basis ordering, sizes and empty slices") {
  const SuperBasis b(1, 1, 2);
  // d = 0: x0^2, x0x1, x1^2; d = 1: x0 xi0, x0 xi1, x1 xi0, x1 xi1; d = 2: xi0 xi1.
  REQUIRE(b.size() == 8);
  CHECK(b[0] == mono({2, 0}, 0));
  CHECK(b[2] == mono({0, 2}, 0));
  CHECK(b[3] == mono({1, 0}, 1u));
  CHECK(b[4] == mono({1, 0}, 2u));
  CHECK(b[7] == mono({0, 0}, 3u));
  REQUIRE(b.blocks().size() == 3);
  CHECK(b.blocks()[1].begin == 3);
  CHECK(b.blocks()[1].size() == 4);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.index_of(b[i]) == i);
  CHECK_FALSE(b.index_of(mono({3, 0}, 0)).has_value());

  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      for (int D = 0; D <= 6; ++D) {
        double total = 0;
        for (int d = 0; d <= D; ++d) {
          const SuperBasis s = SuperBasis::slice(m, n, D, d);
          const double expected = binomial(D - d + m, m) * binomial(n + 1, d);
          CHECK(static_cast<double>(s.size()) == expected);
          CHECK(slice_dimension(m, n, D, d) == expected);
          if (d > n + 1) CHECK(s.size() == 0);
          total += expected;
        }
        CHECK(static_cast<double>(SuperBasis(m, n, D).size()) == total);
      }

  SuperPolynomial off = SuperPolynomial::monomial(mono({3, 0}, 0));
  CHECK_THROWS_AS((void)b.coordinates(off), DimensionError);
}

TEST_CASE("tilde_to_plain agrees with columnwise expansion") {
  const ParamSet ps = testing::standard_param_sets(1, 2)[2];
  const SuperBasis basis(1, 2, 2);
  const Matrix t = tilde_to_plain_matrix(basis, ps);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const auto col = basis.coordinates(to_monomial_basis(basis[c], ps));
    for (std::size_t r = 0; r < basis.size(); ++r) CHECK(std::abs(t(r, c) - col[r]) < 1e-14);
  }
  SuperPolynomial combo(2);
  combo.add(basis[0], 2.0);
  combo.add(basis[5], Scalar(0, 1));
  SuperPolynomial expected = to_monomial_basis(basis[0], ps);
  expected *= 2.0;
  SuperPolynomial second = to_monomial_basis(basis[5], ps);
  second *= Scalar(0, 1);
  expected += second;
  CHECK(max_abs_diff(tilde_to_plain(combo, ps), expected) < 1e-14);
}
