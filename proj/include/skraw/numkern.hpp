#pragma once

// Dense complex linear algebra and the small combinatorial enumerations that
// index every basis in the library.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace skraw {

using Scalar = std::complex<double>;
using Bits = std::uint32_t;

/// Largest matrix dimension handled by the dense kernels.
inline constexpr std::size_t kMaxDim = 32;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegeneracyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Mixed absolute/relative comparison used for every scalar equality test.
struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-9;

  bool close(Scalar a, Scalar b) const;
};

/// Scale-aware residual |a - b| / max(1, |a|, |b|).
double mixed_residual(Scalar a, Scalar b);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Scalar fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Scalar> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Scalar> data() const { return data_; }

  Matrix transpose() const;
  Matrix submatrix(std::span<const int> row_idx, std::span<const int> col_idx) const;

  /// Entry-wise max modulus.
  double max_abs() const;
  bool is_real(double tol = 0.0) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Scalar s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Scalar s) { return a *= s; }
  friend Matrix operator*(Scalar s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// A subset of {0, ..., 31}, stored as a bit mask. Members iterate ascending.
class IndexSubset {
 public:
  IndexSubset() = default;
  explicit IndexSubset(Bits mask) : mask_(mask) {}
  IndexSubset(std::initializer_list<int> members);
  static IndexSubset from_members(std::span<const int> members);
  /// {0, ..., d-1}
  static IndexSubset leading(int d);

  Bits mask() const { return mask_; }
  int size() const;
  bool contains(int i) const { return (mask_ >> i) & 1U; }
  std::vector<int> members() const;
  std::string to_string() const;

  auto operator<=>(const IndexSubset&) const = default;

 private:
  Bits mask_ = 0;
};

/// Determinant: cofactor expansion up to 4x4, LU with partial pivoting above.
Scalar det(const Matrix& m);

/// det of the submatrix with rows I and columns J (both ascending).
Scalar minor(const Matrix& m, const IndexSubset& rows, const IndexSubset& cols);

struct OrthonormalCompletion {
  Matrix basis;  ///< Orthogonal, first row v / |v|.
  double det = 1.0;
};

/// Householder completion of v / |v| to an orthogonal matrix.
OrthonormalCompletion orthonormal_complete(std::span<const double> v);

/// All vectors in N^parts summing to `total`, descending lexicographic order.
std::vector<std::vector<int>> enumerate_compositions(int total, int parts);

/// All size-d subsets of {0, ..., n_plus_1 - 1} in colex order.
std::vector<IndexSubset> enumerate_subsets(int n_plus_1, int d);

double binomial(int n, int k);
double factorial(int n);

/// Singular values in descending order.
std::vector<double> singular_values(const Matrix& m);

}  // namespace skraw
