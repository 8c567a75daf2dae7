#pragma once

#include <string>
#include <utility>

namespace skraw {

/// Running maximum of a residual together with the argument that produced it.
struct Residual {
  double value = 0.0;
  std::string witness;

  template <class WitnessFn>
  void update(double r, WitnessFn&& witness_fn) {
    // NaN must never hide behind a comparison.
    if (r > value || r != r) {
      value = r;
      witness = std::forward<WitnessFn>(witness_fn)();
    }
  }

  void merge(const Residual& o) {
    if (o.value > value || o.value != o.value) *this = o;
  }

  bool within(double tol) const { return value <= tol; }
};

}  // namespace skraw
