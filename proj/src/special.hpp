#ifndef ELLIK_SPECIAL_HPP
#define ELLIK_SPECIAL_HPP

#include <cmath>
#include <cstdint>
#include <utility>

#include "errors.hpp"
#include "modulus.hpp"
#include "precision.hpp"

namespace ellik {

/// Rising factorial a(a+1)...(a+n-1), with (a,0) = 1 (a != 0 by convention).
template <class Real>
Real pochhammer(const Real& a, unsigned long n) {
  if (n == 0 && a == 0) throw DomainError("pochhammer requires a != 0 when n = 0");
  Real result = 1;
  Real factor = a;
  for (unsigned long k = 0; k < n; ++k) {
    result *= factor;
    factor += 1;
  }
  return result;
}

namespace detail {

// ratio(1) = sqrt(pi), ratio(n) = ratio(n-1) * (n-3/2)/(n-1). Keeps the
// Gamma ratio bounded; no large-argument Gamma evaluation anywhere.
template <class Real>
Real gamma_half_ratio_step(const Real& previous, unsigned long n) {
  return previous * (Real(2 * n - 3) / Real(2 * n - 2));
}

} // namespace detail

/// Gamma(n - 1/2) / Gamma(n) by the stable downward-free recurrence.
template <class Real>
Real gamma_half_ratio(unsigned long n) {
  if (n < 1) throw DomainError("gamma_half_ratio requires n >= 1");
  Real ratio = sqrt(RealOps<Real>::pi());
  for (unsigned long k = 2; k <= n; ++k) ratio = detail::gamma_half_ratio_step(ratio, k);
  return ratio;
}

/// Incremental Gamma(n-1/2)/Gamma(n) for batch sweeps: O(1) per advance.
template <class Real>
class GammaHalfRatioWalker {
public:
  GammaHalfRatioWalker() : n_(1), ratio_(sqrt(RealOps<Real>::pi())) {}

  unsigned long index() const { return n_; }
  const Real& value() const { return ratio_; }

  void advance() {
    ++n_;
    ratio_ = detail::gamma_half_ratio_step(ratio_, n_);
  }

private:
  unsigned long n_;
  Real ratio_;
};

/// log(1 - r^2) without cancellation: log1p(-r^2) for small r, split factors
/// near 1 where 1 - r^2 itself would lose digits.
template <class Real>
Real log_one_minus_r_squared(const Modulus<Real>& r) {
  const Real& x = r.value();
  if (x == 0) return Real(0);
  if (x <= Real(1) / 2) return log1p(-x * x);
  return log1p(-x) + log1p(x);
}

inline constexpr unsigned long default_series_term_cap = 200000;

/// K(r) as (pi/2) * sum of [(1/2,n)^2 / (n!)^2] r^{2n}, terms generated by the
/// ratio recurrence. Stops once the geometric tail bound drops below `tol`
/// (absolute, on the result). Near r = 1 the cap trips; use the AGM there.
template <class Real>
Real ellipk_series(const Modulus<Real>& r, const Real& tol,
                   unsigned long term_cap = default_series_term_cap) {
  if (!(tol > 0)) throw DomainError("ellipk_series requires tol > 0");
  const Real x = r.value() * r.value();
  const Real half_pi = RealOps<Real>::pi() / 2;
  if (x == 0) return half_pi;

  // Work in units of the hypergeometric sum; scale tol accordingly.
  const Real tol_sum = tol / half_pi;
  Real term = 1;
  Real sum = 1;
  for (unsigned long n = 0; n < term_cap; ++n) {
    const Real ratio = Real(2 * n + 1) / Real(2 * n + 2);
    term *= ratio * ratio * x;
    sum += term;
    // Remaining terms shrink by factors < x, so tail < term * x / (1 - x).
    if (term * x / (1 - x) <= tol_sum) return half_pi * sum;
  }
  throw ConvergenceError("ellipk_series exceeded its term cap; use ellipk_agm for r near 1");
}

/// K(r) = pi / (2 AGM(1, sqrt(1-r^2))). Quadratic convergence, uniform in r.
template <class Real>
Real ellipk_agm(const Modulus<Real>& r) {
  const Real& x = r.value();
  Real a = 1;
  Real b = sqrt((1 - x) * (1 + x));
  const Real eps = RealOps<Real>::eps();
  for (int i = 0; i < 1000; ++i) {
    if (abs(a - b) <= 2 * eps * a) break;
    Real mean = (a + b) / 2;
    b = sqrt(a * b);
    a = mean;
  }
  return RealOps<Real>::pi() / (2 * a);
}

namespace detail {

template <class Real, class Fn>
struct SimpsonState {
  Fn& f;
  unsigned long evaluations = 0;
  unsigned long budget = 0;
  Real error_sum = 0;

  Real eval(const Real& t) {
    if (++evaluations > budget) throw ToleranceError("quadrature refinement budget exhausted");
    return f(t);
  }
};

// Rule pair on one panel: Simpson over [a,b] against the two-half composite.
template <class Real, class Fn>
Real simpson_recurse(SimpsonState<Real, Fn>& st, const Real& a, const Real& fa, const Real& m,
                     const Real& fm, const Real& b, const Real& fb, const Real& whole,
                     const Real& tol, int depth) {
  const Real lm = (a + m) / 2;
  const Real rm = (m + b) / 2;
  const Real flm = st.eval(lm);
  const Real frm = st.eval(rm);
  const Real h = b - a;
  const Real left = h / 12 * (fa + 4 * flm + fm);
  const Real right = h / 12 * (fm + 4 * frm + fb);
  const Real split = left + right;
  const Real diff = split - whole;
  if (abs(diff) <= 15 * tol) {
    st.error_sum += abs(diff) / 15;
    return split + diff / 15;
  }
  if (depth <= 0) throw ToleranceError("quadrature recursion depth exhausted");
  const Real half_tol = tol / 2;
  return simpson_recurse(st, a, fa, lm, flm, m, fm, left, half_tol, depth - 1) +
         simpson_recurse(st, m, fm, rm, frm, b, fb, right, half_tol, depth - 1);
}

} // namespace detail

template <class Real>
struct QuadratureResult {
  Real value;
  Real error_estimate;
  unsigned long evaluations;
};

/// Adaptive Simpson pair with a fixed-order rule per panel; the rule-pair
/// difference drives both refinement and the error estimate.
template <class Real, class Fn>
QuadratureResult<Real> integrate_adaptive(Fn f, const Real& a, const Real& b, const Real& tol,
                                          unsigned long eval_budget = 4000000) {
  detail::SimpsonState<Real, Fn> st{f};
  st.budget = eval_budget;
  const Real fa = st.eval(a);
  const Real fb = st.eval(b);
  const Real m = (a + b) / 2;
  const Real fm = st.eval(m);
  const Real whole = (b - a) / 6 * (fa + 4 * fm + fb);
  const Real value = detail::simpson_recurse(st, a, fa, m, fm, b, fb, whole, tol, 64);
  return {value, st.error_sum, st.evaluations};
}

/// Direct quadrature of the defining integral over [0, pi/2]. Serves as the
/// implementation-independent oracle for the series and AGM evaluators. The
/// integrand turns near-singular past r = 1 - 1e-8, so that is the cutoff.
template <class Real>
Real ellipk_quadrature(const Modulus<Real>& r, const Real& tol) {
  if (!(tol > 0)) throw DomainError("ellipk_quadrature requires tol > 0");
  const Real& x = r.value();
  if (x > 1 - Real(1) / 100000000)
    throw DomainError("ellipk_quadrature requires r <= 1 - 1e-8");
  const Real x2 = x * x;
  auto integrand = [&](const Real& t) {
    const Real s = sin(t);
    return 1 / sqrt(1 - x2 * s * s);
  };
  return integrate_adaptive<Real>(integrand, Real(0), RealOps<Real>::pi() / 2, tol).value;
}

enum class KMethod { automatic, series, agm, quadrature };

/// Default evaluator: series while it converges briskly, AGM otherwise.
template <class Real>
Real ellipk(const Modulus<Real>& r) {
  if (r.value() > Real(9) / 10) return ellipk_agm(r);
  return ellipk_series(r, Real(8 * RealOps<Real>::eps()));
}

} // namespace ellik

#endif
