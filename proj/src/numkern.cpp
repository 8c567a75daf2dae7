#include "skraw/numkern.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace skraw {

bool Tolerance::close(Scalar a, Scalar b) const {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= abs + rel * scale;
}

double mixed_residual(Scalar a, Scalar b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Scalar fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Scalar> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const {
  Matrix s(row_idx.size(), col_idx.size());
  for (std::size_t a = 0; a < row_idx.size(); ++a) {
    for (std::size_t b = 0; b < col_idx.size(); ++b) {
      const auto i = static_cast<std::size_t>(row_idx[a]);
      const auto j = static_cast<std::size_t>(col_idx[b]);
      if (i >= rows_ || j >= cols_) throw DimensionError("submatrix index out of range");
      s(a, b) = (*this)(i, j);
    }
  }
  return s;
}

double Matrix::max_abs() const {
  double r = 0.0;
  for (const auto& x : data_) r = std::max(r, std::abs(x));
  return r;
}

bool Matrix::is_real(double tol) const {
  return std::all_of(data_.begin(), data_.end(),
                     [tol](Scalar x) { return std::abs(x.imag()) <= tol; });
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Scalar s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("shape mismatch in *");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar aik = a(i, k);
      if (aik == Scalar{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch in diff");
  double r = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    r = std::max(r, std::abs(a.data()[k] - b.data()[k]));
  return r;
}

// ---------------------------------------------------------------------------

IndexSubset::IndexSubset(std::initializer_list<int> members)
    : IndexSubset(from_members(std::span<const int>(members.begin(), members.size()))) {}

IndexSubset IndexSubset::from_members(std::span<const int> members) {
  Bits mask = 0;
  int prev = -1;
  for (int i : members) {
    if (i <= prev || i < 0 || i >= 32) throw DimensionError("subset members must be strictly increasing in [0, 31]");
    mask |= Bits{1} << i;
    prev = i;
  }
  return IndexSubset(mask);
}

IndexSubset IndexSubset::leading(int d) {
  return IndexSubset(d >= 32 ? ~Bits{0} : (Bits{1} << d) - 1);
}

int IndexSubset::size() const { return std::popcount(mask_); }

std::vector<int> IndexSubset::members() const {
  std::vector<int> out;
  for (Bits m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string IndexSubset::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int i : members()) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

Scalar det_cofactor(const Matrix& m) {
  const std::size_t n = m.rows();
  switch (n) {
    case 0:
      return 1.0;
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      break;
  }
  // Expansion along the first row.
  Scalar total = 0.0;
  std::vector<int> rows(n - 1), cols(n - 1);
  std::iota(rows.begin(), rows.end(), 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0, k = 0; c < n; ++c)
      if (c != j) cols[k++] = static_cast<int>(c);
    const Scalar term = m(0, j) * det_cofactor(m.submatrix(rows, cols));
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

Scalar det_lu(Matrix a) {
  const std::size_t n = a.rows();
  Scalar result = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == Scalar{}) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      result = -result;
    }
    result *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Scalar f = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return result;
}

}  // namespace

Scalar det(const Matrix& m) {
  if (!m.square()) throw DimensionError("det of non-square matrix");
  if (m.rows() > kMaxDim) throw DimensionError("matrix exceeds the dense kernel bound");
  return m.rows() <= 4 ? det_cofactor(m) : det_lu(m);
}

Scalar minor(const Matrix& m, const IndexSubset& rows, const IndexSubset& cols) {
  if (rows.size() != cols.size()) throw DimensionError("minor with |I| != |J|");
  const auto r = rows.members();
  const auto c = cols.members();
  return det(m.submatrix(r, c));
}

OrthonormalCompletion orthonormal_complete(std::span<const double> v) {
  const std::size_t n = v.size();
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  if (n == 0 || norm2 == 0.0) throw DegeneracyError("orthonormal_complete of a zero vector");
  const double norm = std::sqrt(norm2);
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = v[i] / norm;

  // Reflection H = I - 2 w w^T / (w^T w) with w = e0 - u, so H e0 = u and H is symmetric.
  std::vector<double> w(n);
  double tail2 = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    w[i] = -u[i];
    tail2 += u[i] * u[i];
  }
  OrthonormalCompletion out{Matrix::identity(n), 1.0};
  if (tail2 == 0.0) {
    if (u[0] > 0) return out;
    out.basis(0, 0) = -1.0;
    out.det = -1.0;
    return out;
  }
  // 1 - u0 without cancellation when u0 is close to 1.
  w[0] = u[0] > 0 ? tail2 / (1.0 + u[0]) : 1.0 - u[0];
  double ww = 0.0;
  for (double x : w) ww += x * x;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.basis(i, j) -= 2.0 * w[i] * w[j] / ww;
  out.det = -1.0;
  return out;
}

std::vector<std::vector<int>> enumerate_compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  if (parts < 1 || total < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  // Recursive fill: first coordinate descending.
  auto fill = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == parts - 1) {
      cur[static_cast<std::size_t>(pos)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      cur[static_cast<std::size_t>(pos)] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  fill(fill, 0, total);
  return out;
}

std::vector<IndexSubset> enumerate_subsets(int n_plus_1, int d) {
  std::vector<IndexSubset> out;
  if (d < 0 || d > n_plus_1 || n_plus_1 > 32) return out;
  if (d == 0) {
    out.emplace_back();
    return out;
  }
  // Colex order is ascending numeric order of the masks; step with Gosper's hack.
  const std::uint64_t limit = std::uint64_t{1} << n_plus_1;
  std::uint64_t x = (std::uint64_t{1} << d) - 1;
  while (x < limit) {
    out.emplace_back(static_cast<Bits>(x));
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<double> singular_values(const Matrix& m) {
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

}  // namespace skraw
