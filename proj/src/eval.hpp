#ifndef ELLIK_EVAL_HPP
#define ELLIK_EVAL_HPP

#include <string>

#include "precision.hpp"
#include "special.hpp"

namespace ellik {

struct EvalResult {
  std::string value;
  std::string abs_error_estimate;
  KMethod method_used = KMethod::automatic;
};

/// K(r) for a decimal argument, by the requested method, serialized in the
/// context's format. `automatic` picks series up to r = 0.9 and AGM beyond.
/// Quadrature runs at a fixed 1e-12 tolerance (it is the double-grade
/// oracle, not an extended evaluator).
EvalResult eval_k(const std::string& r, KMethod method, const PrecisionContext& ctx);

} // namespace ellik

#endif
