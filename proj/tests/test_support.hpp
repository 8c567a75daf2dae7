#pragma once

// Independent reference computations shared by the unit tests.

#include "skraw/numkern.hpp"
#include "skraw/params.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace skraw::testing {

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, bool complex_entries = true) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar(u(rng), complex_entries ? u(rng) : 0.0);
  return m;
}

/// Parity of a permutation by counting inversions.
inline int permutation_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b) inv += perm[a] > perm[b];
  return inv % 2 ? -1 : 1;
}

/// Leibniz expansion over all permutations.
inline Scalar leibniz_det(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total = 0.0;
  do {
    Scalar term = static_cast<double>(permutation_sign(perm));
    for (std::size_t i = 0; i < n; ++i) term *= m(i, static_cast<std::size_t>(perm[i]));
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Rows and columns picked by explicit index lists, then Leibniz.
inline Scalar leibniz_minor(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix sub(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      sub(a, b) = m(static_cast<std::size_t>(rows[a]), static_cast<std::size_t>(cols[b]));
  return leibniz_det(sub);
}

/// Sign of reordering the concatenated index word a then b into ascending
/// order by bubble sort, or 0 on a repeated index.
inline int reorder_sign(const std::vector<int>& word) {
  std::vector<int> w = word;
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j) {
      if (w[j] == w[j + 1]) return 0;
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t j = 0; j + 1 < w.size(); ++j)
    if (w[j] == w[j + 1]) return 0;
  return sign;
}

inline std::vector<int> members_of(Bits b) {
  std::vector<int> v;
  for (int i = 0; i < 32; ++i)
    if ((b >> i) & 1U) v.push_back(i);
  return v;
}

/// Parameter sets used across the suites: binary at t = 1/2 and three random seeds.
inline std::vector<ParamSet> standard_param_sets(int m, int n) {
  std::vector<ParamSet> out;
  if (m == 1 && n == 1) out.push_back(ParamSet::make(binary_params(0.5), binary_params(0.5)));
  for (std::uint64_t seed : {1u, 2u, 3u})
    out.push_back(ParamSet::make(random_admissible(m, seed), random_admissible(n, seed + 100)));
  return out;
}

/// Random sets with p~ != p.
inline ParamSet general_param_set(int m, int n, std::uint64_t seed) {
  return ParamSet::make(random_admissible_general(m, seed), random_admissible_general(n, seed + 100));
}

}  // namespace skraw::testing
