#ifndef ELLIK_VERIFY_HPP
#define ELLIK_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "grid.hpp"
#include "precision.hpp"
#include "report.hpp"

namespace ellik {

/// Checks the printed six-digit prefixes of the bound constants and the
/// bookkeeping identity beta - alpha = delta + zeta.
std::vector<VerificationReport> verify_constants(const PrecisionContext& ctx);

/// Q_n > P_n > 0 and the positive quadratic prefactor, for n = 1..n_max.
/// A margin only counts when it clears the per-n evaluation error bound.
VerificationReport verify_lemma(unsigned long n_max, const PrecisionContext& ctx);

/// c_n > 0 up to n_max; closed form against the Cauchy-product assembly up
/// to min(n_max, 64); sign structure of the g expansion; partial-sum limits.
std::vector<VerificationReport> verify_coefficients(unsigned long n_max,
                                                    const PrecisionContext& ctx);

/// The sandwich and every prior-art ordering over a grid. Hardware contexts
/// sweep in doubles and escalate any margin inside rounding noise to
/// extended precision, then spot-check 100 grid points at extended
/// precision (fixed seed); extended contexts sweep entirely at their digit
/// count. One report per ordering.
std::vector<VerificationReport> verify_sandwich(const GridSpec& grid,
                                                const PrecisionContext& ctx);

/// Monotonicity/convexity witnesses via divided differences, range
/// enclosures, and the finite-difference versus differentiated-series
/// derivative check.
std::vector<VerificationReport> verify_shape(const GridSpec& grid, const PrecisionContext& ctx);

enum class VerifyTarget { constants, lemma, coefficients, sandwich, shape, all };

std::optional<VerifyTarget> parse_verify_target(const std::string& name);

struct VerifyOptions {
  unsigned long n_max = 10000;
  std::optional<GridSpec> grid; // target-specific default when absent
};

struct VerifySuite {
  std::vector<VerificationReport> reports;
  bool all_passed = true;
};

VerifySuite run_verify(VerifyTarget target, const VerifyOptions& options,
                       const PrecisionContext& ctx);

} // namespace ellik

#endif
