#pragma once

// Admissible parameter tuples for the even (commuting) and odd (Grassmann)
// sectors, their normalizers and change-of-basis matrices.

#include "skraw/numkern.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace skraw {

/// One admissible tuple (w, w~, M) with diag(w) M diag(w~) M^T = w_0 I.
/// The even sector stores (p, p~, U); the odd sector stores (q, q~, V).
struct ParamTuple {
  std::vector<Scalar> weights;
  std::vector<Scalar> dual_weights;
  Matrix matrix;

  /// Index of the last variable: m for the even tuple, n for the odd one.
  int top() const { return static_cast<int>(weights.size()) - 1; }
  std::size_t size() const { return weights.size(); }

  friend bool operator==(const ParamTuple&, const ParamTuple&) = default;
};

using EvenParams = ParamTuple;
using OddParams = ParamTuple;

struct Normalizers {
  Scalar theta_tilde;
  Scalar theta;
  Scalar kappa_tilde;
  Scalar kappa;
  Matrix R;  ///< theta~ P~ U^T
  Matrix S;  ///< kappa~ Q~ V^T
};

struct ParamSet {
  EvenParams even;
  OddParams odd;
  Normalizers norms;

  /// Checks shapes and derives the normalizers.
  static ParamSet make(EvenParams even, OddParams odd);

  int m() const { return even.top(); }
  int n() const { return odd.top(); }
};

struct ResidualEntry {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ResidualEntry> entries;
  bool pass = true;

  double max_residual() const;
};

inline constexpr double kDefaultValidationTol = 1e-10;

/// Throws DimensionError on shape violations; residual failures are reported.
void check_shape(const ParamTuple& t, const std::string& label);
ValidationReport validate(const ParamTuple& t, const std::string& label,
                          double tol = kDefaultValidationTol);
ValidationReport validate(const ParamSet& ps, double tol = kDefaultValidationTol);

/// Two-state tuple with weights (t, 1 - t).
ParamTuple binary_params(Scalar t);

/// Random admissible tuple of size top + 1 with positive weights and w~ = w.
ParamTuple random_admissible(int top, std::uint64_t seed);

/// Random admissible tuple with positive weights and w~ != w in general
/// (shared first entry).
ParamTuple random_admissible_general(int top, std::uint64_t seed);

/// The trivial one-variable tuple (1), (1), [[1]].
ParamTuple trivial_params();

Normalizers normalizers(const EvenParams& even, const OddParams& odd);

/// (p, p~, U, q, q~, V) -> (p~, p, U^T, q~, q, V^T).
ParamSet dualize(const ParamSet& ps);

/// Largest deviation of (w0^{-1} W | ...) Y (W~ | ...) Y^T from the identity.
double concatenated_identity_residual(const ParamSet& ps);

// Serialization -------------------------------------------------------------

nlohmann::json scalar_to_json(Scalar s);
Scalar scalar_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const ParamSet& ps);
/// Shape-checked tuples without deriving normalizers (usable on inadmissible input).
std::pair<EvenParams, OddParams> tuples_from_json(const nlohmann::json& j);
ParamSet params_from_json(const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);
ParamSet read_params(const std::string& path);
void write_params(const ParamSet& ps, const std::string& path);

class ParamFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skraw
