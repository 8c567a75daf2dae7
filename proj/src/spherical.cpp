#include "skraw/spherical.hpp"

#include "skraw/krawtchouk.hpp"
#include "skraw/superpoly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

namespace skraw {

namespace {

double positive_real(Scalar s, const char* what) {
  if (std::abs(s.imag()) > 1e-14 * std::max(1.0, std::abs(s.real())) || !(s.real() > 0.0))
    throw DomainError(std::string(what) + " must be positive real for the orthogonal frame");
  return s.real();
}

Matrix assemble_g(const OddParams& odd, const std::vector<double>& qs, const std::vector<double>& qts) {
  const std::size_t k = odd.size();
  const double s0 = 1.0 / std::sqrt(odd.weights[0].real());
  Matrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(i, j) = s0 * qs[i] * odd.matrix(i, j).real() * qts[j];
  return g;
}

}  // namespace

OrthogonalFrame build_g(const OddParams& odd, bool fix_sign) {
  const std::size_t k = odd.size();
  OrthogonalFrame f;
  for (std::size_t i = 0; i < k; ++i) {
    f.q_sqrt.push_back(std::sqrt(positive_real(odd.weights[i], "q")));
    f.q_tilde_sqrt.push_back(std::sqrt(positive_real(odd.dual_weights[i], "q~")));
  }
  if (!odd.matrix.is_real(1e-14)) throw DomainError("V must be real for the orthogonal frame");
  f.g = assemble_g(odd, f.q_sqrt, f.q_tilde_sqrt);
  f.det_sign = det(f.g).real() < 0 ? -1 : 1;
  if (fix_sign && f.det_sign < 0) {
    f.q_tilde_sqrt.back() = -f.q_tilde_sqrt.back();
    f.g = assemble_g(odd, f.q_sqrt, f.q_tilde_sqrt);
    f.det_sign = 1;
  }
  return f;
}

double orthogonality_defect(const OrthogonalFrame& frame) {
  const Matrix ggt = frame.g * frame.g.transpose();
  return std::max(max_abs_diff(ggt, Matrix::identity(ggt.rows())),
                  std::abs(det(frame.g) - static_cast<double>(frame.det_sign)));
}

Matrix sigma(const IndexSubset& subset, int n_plus_1) {
  const int d = subset.size();
  if (n_plus_1 < 0 || n_plus_1 > static_cast<int>(kMaxDim) || (n_plus_1 < 32 && (subset.mask() >> n_plus_1) != 0))
    throw DimensionError("sigma: subset exceeds the ambient dimension");
  std::vector<int> pi = subset.members();
  for (int i = 0; i < n_plus_1; ++i)
    if (!subset.contains(i)) pi.push_back(i);
  int inversions = 0;
  for (std::size_t a = 0; a < pi.size(); ++a)
    for (std::size_t b = a + 1; b < pi.size(); ++b) inversions += pi[a] > pi[b];
  const auto n = static_cast<std::size_t>(n_plus_1);
  Matrix s(n, n);
  for (std::size_t k = 0; k < n; ++k) s(static_cast<std::size_t>(pi[k]), k) = 1.0;
  // An odd permutation only arises when the complement is non-empty.
  if (inversions % 2 == 1) {
    const auto c = static_cast<std::size_t>(d);
    for (std::size_t r = 0; r < n; ++r) s(r, c) = -s(r, c);
  }
  return s;
}

Scalar phi_d(const Matrix& h, int d) { return minor(h, IndexSubset::leading(d), IndexSubset::leading(d)); }

Scalar phi_d_wedge(const Matrix& h, int d) {
  const SuperPolynomial img = expand_odd_product(h.transpose(), IndexSubset::leading(d));
  return img.coefficient(SuperMonomial{{}, IndexSubset::leading(d).mask()});
}

Scalar phi_d_minus(const Matrix& h, int d) {
  const int n_plus_1 = static_cast<int>(h.rows());
  const Bits all = n_plus_1 >= 32 ? ~Bits{0} : (Bits{1} << n_plus_1) - 1;
  const IndexSubset tail(all & ~IndexSubset::leading(d).mask());
  return minor(h, tail, tail);
}

namespace {

Matrix random_special_orthogonal(int k, std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(k);
  if (k <= 1) return Matrix::identity(n);
  std::normal_distribution<double> normal;
  const auto draw = [&] {
    std::vector<double> v(n);
    for (double& x : v) x = normal(rng);
    return orthonormal_complete(v);
  };
  const OrthonormalCompletion a = draw();
  const OrthonormalCompletion b = draw();
  Matrix o = a.basis * b.basis;
  if (a.det * b.det < 0)
    for (std::size_t j = 0; j < n; ++j) o(0, j) = -o(0, j);
  return o;
}

}  // namespace

Matrix random_stabilizer(int n_plus_1, int d, std::uint64_t seed) {
  if (d < 0 || d > n_plus_1) throw DimensionError("random_stabilizer: d out of range");
  std::mt19937_64 rng(seed);
  const Matrix k0 = random_special_orthogonal(d, rng);
  const Matrix k1 = random_special_orthogonal(n_plus_1 - d, rng);
  const auto n = static_cast<std::size_t>(n_plus_1);
  const auto ud = static_cast<std::size_t>(d);
  Matrix out(n, n);
  for (std::size_t i = 0; i < ud; ++i)
    for (std::size_t j = 0; j < ud; ++j) out(i, j) = k0(i, j);
  for (std::size_t i = ud; i < n; ++i)
    for (std::size_t j = ud; j < n; ++j) out(i, j) = k1(i - ud, j - ud);
  return out;
}

Residual minor_spherical_residual(const Matrix& g, int d) {
  const int k = static_cast<int>(g.rows());
  const auto subsets = enumerate_subsets(k, d);
  std::vector<Matrix> sig;
  for (const auto& s : subsets) sig.push_back(sigma(s, k));
  Residual res;
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    const SuperPolynomial img = expand_odd_product(g.transpose(), subsets[j]);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      const Scalar direct = minor(g, subsets[i], subsets[j]);
      const Scalar via_phi = phi_d(sig[i].transpose() * g * sig[j], d);
      const Scalar via_wedge = img.coefficient(SuperMonomial{{}, subsets[i].mask()});
      const auto where = [&] { return "I=" + subsets[i].to_string() + " J=" + subsets[j].to_string(); };
      res.update(std::abs(direct - via_phi), where);
      res.update(std::abs(direct - via_wedge), where);
    }
  }
  return res;
}

Residual sigma_independence_residual(const Matrix& g, int d, std::uint64_t seed) {
  const int k = static_cast<int>(g.rows());
  const auto subsets = enumerate_subsets(k, d);
  Residual res;
  std::uint64_t s = seed;
  for (const auto& si : subsets)
    for (const auto& sj : subsets) {
      const Matrix a = sigma(si, k);
      const Matrix b = sigma(sj, k);
      const Matrix a2 = a * random_stabilizer(k, d, s++);
      const Matrix b2 = b * random_stabilizer(k, d, s++);
      const Scalar v1 = phi_d(a.transpose() * g * b, d);
      const Scalar v2 = phi_d(a2.transpose() * g * b2, d);
      res.update(std::abs(v1 - v2), [&] { return "I=" + si.to_string() + " J=" + sj.to_string(); });
    }
  return res;
}

Residual plucker_norm_residual(const Matrix& g, int d) {
  const auto subsets = enumerate_subsets(static_cast<int>(g.rows()), d);
  Residual res;
  for (const auto& j : subsets) {
    double sum = 0.0;
    for (const auto& i : subsets) sum += std::norm(minor(g, i, j));
    res.update(std::abs(sum - 1.0), [&] { return "J=" + j.to_string(); });
  }
  return res;
}

OccupationDistribution occupation_probs(const OddParams& odd, const IndexSubset& source, std::uint64_t seed) {
  const OrthogonalFrame f = build_g(odd);
  OccupationDistribution dist;
  dist.source = source;
  dist.seed = seed;
  dist.subsets = enumerate_subsets(static_cast<int>(odd.size()), source.size());
  if (dist.subsets.empty()) throw DimensionError("occupation_probs: source subset too large");
  for (const auto& i : dist.subsets) dist.probs.push_back(std::norm(minor(f.g, i, source)));
  return dist;
}

std::vector<std::size_t> sample_occupation(const OccupationDistribution& dist, std::size_t count) {
  std::vector<double> cdf(dist.probs.size());
  std::partial_sum(dist.probs.begin(), dist.probs.end(), cdf.begin());
  std::mt19937_64 rng(dist.seed);
  std::uniform_real_distribution<double> unif(0.0, cdf.back());
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double u = unif(rng);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    out.push_back(std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1));
  }
  return out;
}

std::vector<std::size_t> occupation_frequencies(const OccupationDistribution& dist, std::size_t count) {
  std::vector<std::size_t> freq(dist.subsets.size(), 0);
  for (std::size_t idx : sample_occupation(dist, count)) ++freq[idx];
  return freq;
}

double krzonal_check(const OddParams& odd, const OrthogonalFrame& frame, Bits eps, Bits eps_tilde) {
  const int d = std::popcount(eps);
  if (d != std::popcount(eps_tilde)) throw DimensionError("krzonal_check: |eps| != |eps~|");
  const int k = static_cast<int>(odd.size());
  const IndexSubset rows(eps_tilde);
  const IndexSubset cols(eps);
  double weight = std::pow(odd.weights[0].real(), 0.5 * d) / factorial(d);
  for (int i : rows.members()) weight /= frame.q_sqrt[static_cast<std::size_t>(i)];
  for (int j : cols.members()) weight /= frame.q_tilde_sqrt[static_cast<std::size_t>(j)];
  const Scalar rhs = weight * phi_d(sigma(rows, k).transpose() * frame.g * sigma(cols, k), d);
  return mixed_residual(eval_p1(eps, eps_tilde, odd), rhs);
}

double krzonal_check(const OddParams& odd, Bits eps, Bits eps_tilde) {
  return krzonal_check(odd, build_g(odd), eps, eps_tilde);
}

Residual krzonal_sweep(const OddParams& odd, const OrthogonalFrame& frame) {
  const int k = static_cast<int>(odd.size());
  Residual res;
  for (int d = 0; d <= k; ++d) {
    const auto subsets = enumerate_subsets(k, d);
    for (const auto& e : subsets)
      for (const auto& et : subsets)
        res.update(krzonal_check(odd, frame, e.mask(), et.mask()),
                   [&] { return "eps=" + e.to_string() + " eps~=" + et.to_string(); });
  }
  return res;
}

}  // namespace skraw
