#include "skraw/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace skraw {

namespace {

Matrix admissibility_product(const ParamTuple& t) {
  // diag(w) M diag(w~) M^T
  const std::size_t k = t.size();
  Matrix out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      Scalar s = 0.0;
      for (std::size_t j = 0; j < k; ++j) s += t.matrix(i, j) * t.dual_weights[j] * t.matrix(l, j);
      out(i, l) = t.weights[i] * s;
    }
  return out;
}

/// Principal k-th root; a signed zero imaginary part must not pick the lower branch.
Scalar principal_root(Scalar z, std::size_t k) {
  return std::pow(Scalar(z.real() + 0.0, z.imag() + 0.0), 1.0 / static_cast<double>(k));
}

Scalar sum(const std::vector<Scalar>& v) {
  Scalar s = 0.0;
  for (auto x : v) s += x;
  return s;
}

/// Random orthogonal k x k matrix from Gram-Schmidt on a Gaussian draw.
Matrix random_orthogonal(std::size_t k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> cols;
  while (cols.size() < k) {
    std::vector<double> v(k);
    for (auto& x : v) x = gauss(rng);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& c : cols) {
        double dot = 0.0;
        for (std::size_t i = 0; i < k; ++i) dot += c[i] * v[i];
        for (std::size_t i = 0; i < k; ++i) v[i] -= dot * c[i];
      }
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) continue;
    for (auto& x : v) x /= nrm;
    cols.push_back(std::move(v));
  }
  Matrix o(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) o(i, j) = cols[j][i];
  return o;
}

std::vector<double> random_simplex_point(std::size_t k, std::mt19937_64& rng) {
  // Entries bounded away from zero keep the sweeps well conditioned.
  std::uniform_real_distribution<double> u(1.0, 2.0);
  std::vector<double> w(k);
  double s = 0.0;
  for (auto& x : w) s += (x = u(rng));
  for (auto& x : w) x /= s;
  return w;
}

/// Orthogonal W with W e0 = sqrt(p), W^T e0 = sqrt(p~), randomized on the
/// complement of span{e0, sqrt(p)}.
Matrix admissible_core(const std::vector<double>& p, const std::vector<double>& pt,
                       std::mt19937_64& rng) {
  const std::size_t k = p.size();
  std::vector<double> s(k), st(k);
  for (std::size_t i = 0; i < k; ++i) {
    s[i] = std::sqrt(p[i]);
    st[i] = std::sqrt(pt[i]);
  }
  const Matrix hs = orthonormal_complete(s).basis;  // symmetric, hs e0 = s

  // Reflection fixing e0 and swapping s <-> s~ (both share the e0 component).
  Matrix hw = Matrix::identity(k);
  double ww = 0.0;
  for (std::size_t i = 0; i < k; ++i) ww += (st[i] - s[i]) * (st[i] - s[i]);
  // A rounding-level difference has no reliable direction; skip the reflection.
  if (ww > 1e-24) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) hw(i, j) -= 2.0 * (st[i] - s[i]) * (st[j] - s[j]) / ww;
  }

  Matrix z = Matrix::identity(k);
  if (k >= 3) {
    std::vector<double> tail(s.begin() + 1, s.end());
    const Matrix ht = orthonormal_complete(tail).basis;
    Matrix b = Matrix::identity(k);
    for (std::size_t i = 1; i < k; ++i)
      for (std::size_t j = 1; j < k; ++j) b(i, j) = ht(i - 1, j - 1);
    const Matrix o = random_orthogonal(k - 2, rng);
    Matrix inner = Matrix::identity(k);
    for (std::size_t i = 2; i < k; ++i)
      for (std::size_t j = 2; j < k; ++j) inner(i, j) = o(i - 2, j - 2);
    z = b * inner * b.transpose();
  }
  return hs * z * hw;
}

ParamTuple tuple_from_core(const std::vector<double>& p, const std::vector<double>& pt,
                           const Matrix& w) {
  const std::size_t k = p.size();
  ParamTuple t;
  t.matrix = Matrix(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    t.weights.emplace_back(p[i]);
    t.dual_weights.emplace_back(pt[i]);
  }
  const double sp0 = std::sqrt(p[0]);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == 0 || j == 0) {
        t.matrix(i, j) = 1.0;  // exact normalization
      } else {
        t.matrix(i, j) = sp0 * w(i, j).real() / (std::sqrt(p[i]) * std::sqrt(pt[j]));
      }
    }
  return t;
}

ParamTuple transpose_tuple(const ParamTuple& t) {
  return ParamTuple{t.dual_weights, t.weights, t.matrix.transpose()};
}

}  // namespace

double ValidationReport::max_residual() const {
  double r = 0.0;
  for (const auto& e : entries) r = std::max(r, e.residual);
  return r;
}

void check_shape(const ParamTuple& t, const std::string& label) {
  const std::size_t k = t.weights.size();
  if (k == 0) throw DimensionError(label + ": empty weight vector");
  if (k > kMaxDim) throw DimensionError(label + ": more than 32 variables");
  if (t.dual_weights.size() != k) throw DimensionError(label + ": dual weight length mismatch");
  if (t.matrix.rows() != k || t.matrix.cols() != k)
    throw DimensionError(label + ": matrix must be square of the weight length");
}

ValidationReport validate(const ParamTuple& t, const std::string& label, double tol) {
  check_shape(t, label);
  ValidationReport rep;
  auto add = [&](std::string name, double r) {
    const bool ok = r <= tol;
    rep.entries.push_back({label + "." + std::move(name), r, ok});
    rep.pass = rep.pass && ok;
  };

  const Scalar w0 = t.weights[0];
  add("w0_eq_dual_w0", std::abs(w0 - t.dual_weights[0]));
  rep.entries.push_back({label + ".w0_nonzero", std::abs(w0) == 0.0 ? 1.0 : 0.0, w0 != Scalar{}});
  rep.pass = rep.pass && w0 != Scalar{};

  double norm_res = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    norm_res = std::max(norm_res, std::abs(t.matrix(0, i) - 1.0));
    norm_res = std::max(norm_res, std::abs(t.matrix(i, 0) - 1.0));
  }
  add("unit_first_row_col", norm_res);

  const Matrix prod = admissibility_product(t);
  add("admissibility", max_abs_diff(prod, Matrix::identity(t.size()) * w0));
  add("weights_sum", std::abs(sum(t.weights) - 1.0));
  add("dual_weights_sum", std::abs(sum(t.dual_weights) - 1.0));
  return rep;
}

ValidationReport validate(const ParamSet& ps, double tol) {
  ValidationReport rep = validate(ps.even, "even", tol);
  const ValidationReport odd = validate(ps.odd, "odd", tol);
  rep.entries.insert(rep.entries.end(), odd.entries.begin(), odd.entries.end());
  rep.pass = rep.pass && odd.pass;
  if (!rep.pass) return rep;  // normalizers are meaningless otherwise

  auto add = [&](std::string name, double r) {
    const bool ok = r <= tol;
    rep.entries.push_back({std::move(name), r, ok});
    rep.pass = rep.pass && ok;
  };
  const auto& nm = ps.norms;
  add("det_R", std::abs(det(nm.R) - 1.0));
  add("det_S", std::abs(det(nm.S) - 1.0));
  add("theta_product", std::abs(nm.theta * nm.theta_tilde * ps.even.weights[0] - 1.0));
  add("kappa_product", std::abs(nm.kappa * nm.kappa_tilde * ps.odd.weights[0] - 1.0));
  add("concatenated_identity", concatenated_identity_residual(ps));
  return rep;
}

ParamTuple binary_params(Scalar t) {
  if (t == Scalar{0.0} || t == Scalar{1.0})
    throw DegeneracyError("binary_params: t must differ from 0 and 1");
  ParamTuple out;
  out.weights = {t, 1.0 - t};
  out.dual_weights = out.weights;
  out.matrix = Matrix{{1.0, 1.0}, {1.0, -t / (1.0 - t)}};
  return out;
}

ParamTuple trivial_params() { return ParamTuple{{1.0}, {1.0}, Matrix{{1.0}}}; }

ParamTuple random_admissible(int top, std::uint64_t seed) {
  if (top < 0) throw DimensionError("random_admissible: negative size");
  if (top == 0) return trivial_params();
  std::mt19937_64 rng(seed);
  const auto p = random_simplex_point(static_cast<std::size_t>(top) + 1, rng);
  return tuple_from_core(p, p, admissible_core(p, p, rng));
}

ParamTuple random_admissible_general(int top, std::uint64_t seed) {
  if (top < 0) throw DimensionError("random_admissible_general: negative size");
  if (top == 0) return trivial_params();
  std::mt19937_64 rng(seed);
  const auto k = static_cast<std::size_t>(top) + 1;
  const auto p = random_simplex_point(k, rng);
  // Same first entry, independent remaining mass split.
  auto tail = random_simplex_point(k - 1, rng);
  std::vector<double> pt(k);
  pt[0] = p[0];
  for (std::size_t i = 1; i < k; ++i) pt[i] = tail[i - 1] * (1.0 - p[0]);
  return tuple_from_core(p, pt, admissible_core(p, pt, rng));
}

Normalizers normalizers(const EvenParams& even, const OddParams& odd) {
  auto scaled_transpose = [](const ParamTuple& t) {
    // diag(w~) M^T
    Matrix r = t.matrix.transpose();
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t.size(); ++j) r(i, j) *= t.dual_weights[i];
    return r;
  };
  const Matrix pu = scaled_transpose(even);
  const Matrix qv = scaled_transpose(odd);
  const Scalar dp = det(pu);
  const Scalar dq = det(qv);
  if (dp == Scalar{} || dq == Scalar{}) throw DegeneracyError("normalizers: singular change of basis");

  Normalizers nm;
  nm.theta_tilde = principal_root(1.0 / dp, even.size());
  nm.kappa_tilde = principal_root(1.0 / dq, odd.size());
  nm.theta = 1.0 / (even.weights[0] * nm.theta_tilde);
  nm.kappa = 1.0 / (odd.weights[0] * nm.kappa_tilde);
  nm.R = pu * nm.theta_tilde;
  nm.S = qv * nm.kappa_tilde;
  return nm;
}

ParamSet ParamSet::make(EvenParams even, OddParams odd) {
  check_shape(even, "even");
  check_shape(odd, "odd");
  ParamSet ps;
  ps.norms = normalizers(even, odd);
  ps.even = std::move(even);
  ps.odd = std::move(odd);
  return ps;
}

ParamSet dualize(const ParamSet& ps) {
  return ParamSet::make(transpose_tuple(ps.even), transpose_tuple(ps.odd));
}

double concatenated_identity_residual(const ParamSet& ps) {
  // Block diagonal, so each block is checked on its own.
  double r = 0.0;
  for (const ParamTuple* t : {&ps.even, &ps.odd}) {
    Matrix prod = admissibility_product(*t);
    prod *= 1.0 / t->weights[0];
    r = std::max(r, max_abs_diff(prod, Matrix::identity(t->size())));
  }
  return r;
}

// ---------------------------------------------------------------------------

nlohmann::json scalar_to_json(Scalar s) {
  if (s.imag() == 0.0) return s.real();
  return nlohmann::json::array({s.real(), s.imag()});
}

Scalar scalar_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParamFormatError("scalar must be a number or a [re, im] pair");
}

namespace {

nlohmann::json vector_to_json(const std::vector<Scalar>& v) {
  auto a = nlohmann::json::array();
  for (auto s : v) a.push_back(scalar_to_json(s));
  return a;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  auto a = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    a.push_back(std::move(row));
  }
  return a;
}

std::vector<Scalar> vector_from_json(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array()) throw ParamFormatError(key + " must be an array");
  std::vector<Scalar> v;
  for (const auto& e : j) v.push_back(scalar_from_json(e));
  return v;
}

Matrix matrix_from_json(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array() || j.empty()) throw ParamFormatError(key + " must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw ParamFormatError(key + " rows must be arrays");
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParamFormatError(key + " is ragged");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json(j[i][c]);
  }
  return m;
}

ParamTuple tuple_from_json(const nlohmann::json& j, const std::string& label, const char* w,
                           const char* wt, const char* mat) {
  if (!j.is_object()) throw ParamFormatError(label + " must be an object");
  for (const char* key : {w, wt, mat})
    if (!j.contains(key)) throw ParamFormatError(label + " is missing \"" + key + "\"");
  ParamTuple t{vector_from_json(j.at(w), w), vector_from_json(j.at(wt), wt),
               matrix_from_json(j.at(mat), mat)};
  check_shape(t, label);
  return t;
}

}  // namespace

nlohmann::json params_to_json(const ParamSet& ps) {
  return {{"even",
           {{"p", vector_to_json(ps.even.weights)},
            {"p_tilde", vector_to_json(ps.even.dual_weights)},
            {"U", matrix_to_json(ps.even.matrix)}}},
          {"odd",
           {{"q", vector_to_json(ps.odd.weights)},
            {"q_tilde", vector_to_json(ps.odd.dual_weights)},
            {"V", matrix_to_json(ps.odd.matrix)}}}};
}

std::pair<EvenParams, OddParams> tuples_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("even") || !j.contains("odd"))
    throw ParamFormatError("parameter file needs top-level \"even\" and \"odd\" objects");
  return {tuple_from_json(j.at("even"), "even", "p", "p_tilde", "U"),
          tuple_from_json(j.at("odd"), "odd", "q", "q_tilde", "V")};
}

ParamSet params_from_json(const nlohmann::json& j) {
  auto [even, odd] = tuples_from_json(j);
  return ParamSet::make(std::move(even), std::move(odd));
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamFormatError("cannot open parameter file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParamFormatError(std::string("malformed parameter file: ") + e.what());
  }
  return j;
}

ParamSet read_params(const std::string& path) { return params_from_json(read_json_file(path)); }

void write_params(const ParamSet& ps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParamFormatError("cannot write parameter file " + path);
  out << params_to_json(ps).dump(2) << '\n';
}

}  // namespace skraw
