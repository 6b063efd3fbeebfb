#ifndef ELLIK_BOUNDS_HPP
#define ELLIK_BOUNDS_HPP

#include <array>
#include <string>

#include "constants.hpp"
#include "errors.hpp"
#include "modulus.hpp"
#include "precision.hpp"
#include "sequences.hpp"
#include "special.hpp"

namespace ellik {

/// Tags for the implemented bound expressions.
enum class BoundFamily { ar_upper, avv_upper, wclc_lower, wclc_upper, new_lower, new_upper };

inline std::string to_string(BoundFamily family) {
  switch (family) {
    case BoundFamily::ar_upper: return "AR_UPPER";
    case BoundFamily::avv_upper: return "AVV_UPPER";
    case BoundFamily::wclc_lower: return "WCLC_LOWER";
    case BoundFamily::wclc_upper: return "WCLC_UPPER";
    case BoundFamily::new_lower: return "NEW_LOWER";
    case BoundFamily::new_upper: return "NEW_UPPER";
  }
  return "?";
}

/// Alzer-Richards upper bound: (pi/2)(16 - 5 log(1-r^2)) / (16 + (5pi-16) r^2).
template <class Real>
Real upper_ar(const Modulus<Real>& r) {
  const Real pi = RealOps<Real>::pi();
  const Real x = r.value();
  const Real logterm = log_one_minus_r_squared(r);
  return pi / 2 * (16 - 5 * logterm) / (16 + (5 * pi - 16) * x * x);
}

/// The proven AVV bound: log(1 + 4/sqrt(1-r^2)) - (log 5 - pi/2)(1 - r).
/// Sharp at both endpoints; equals pi/2 in the r -> 0 limit.
template <class Real>
Real upper_avv(const Modulus<Real>& r) {
  const Real pi = RealOps<Real>::pi();
  const Real x = r.value();
  const Real root = sqrt((1 - x) * (1 + x));
  return log((4 + root) / root) - (log(Real(5)) - pi / 2) * (1 - x);
}

template <class Real>
struct BoundPair {
  Real lower;
  Real upper;
};

/// The quartic-correction double bound around log(1 + 4/sqrt(1-r^2)):
/// shared head plus alpha* r^4 below and beta* r^4 above.
template <class Real>
BoundPair<Real> wclc_bounds(const Modulus<Real>& r, const BoundConstants<Real>& c) {
  const Real pi = RealOps<Real>::pi();
  const Real x = r.value();
  const Real x2 = x * x;
  const Real x4 = x2 * x2;
  const Real root = sqrt((1 - x) * (1 + x));
  const Real head = log((4 + root) / root) - (log(Real(5)) - pi / 2) + (pi / 8 - Real(2) / 5) * x2;
  return {head + c.alpha_star * x4, head + c.beta_star * x4};
}

/// The two expressions inside the sharp double bound's max/min: one descends
/// from the f_1 enclosure, the other from the g_1 enclosure.
template <class Real>
struct BoundBranches {
  Real from_f;
  Real from_g;
};

namespace detail {

template <class Real>
struct SharpBoundParts {
  Real numerator;   // pi (16 - 5 log(1-r^2))
  Real denominator; // 32 + 2 (5pi - 16) r^2
  Real x2;
};

template <class Real>
SharpBoundParts<Real> sharp_bound_parts(const Modulus<Real>& r) {
  const Real pi = RealOps<Real>::pi();
  const Real x = r.value();
  const Real x2 = x * x;
  return {pi * (16 - 5 * log_one_minus_r_squared(r)), 32 + 2 * (5 * pi - 16) * x2, x2};
}

} // namespace detail

template <class Real>
BoundBranches<Real> new_upper_branches(const Modulus<Real>& r, const BoundConstants<Real>& c) {
  const auto parts = detail::sharp_bound_parts(r);
  const Real x4 = parts.x2 * parts.x2;
  BoundBranches<Real> out;
  out.from_f = (parts.numerator - 2 * c.alpha * x4) / parts.denominator - c.theta * parts.x2;
  out.from_g = (parts.numerator + 2 * c.delta * parts.x2) / parts.denominator - c.lambda * parts.x2;
  return out;
}

template <class Real>
BoundBranches<Real> new_lower_branches(const Modulus<Real>& r, const BoundConstants<Real>& c) {
  const auto parts = detail::sharp_bound_parts(r);
  const Real x = r.value();
  const Real x4 = parts.x2 * parts.x2;
  BoundBranches<Real> out;
  out.from_f =
      (parts.numerator - 2 * (c.alpha + (c.beta - c.alpha) * x) * x4) / parts.denominator -
      c.theta * parts.x2;
  out.from_g = (parts.numerator + 2 * c.delta * (1 - x) * parts.x2) / parts.denominator -
               c.lambda * parts.x2;
  return out;
}

template <class Real>
Real new_upper(const Modulus<Real>& r, const BoundConstants<Real>& c) {
  const auto b = new_upper_branches(r, c);
  return b.from_f < b.from_g ? b.from_f : b.from_g;
}

template <class Real>
Real new_lower(const Modulus<Real>& r, const BoundConstants<Real>& c) {
  const auto b = new_lower_branches(r, c);
  return b.from_f > b.from_g ? b.from_f : b.from_g;
}

/// Every bound value plus the AGM reference at one modulus; the raw material
/// for sandwich checks and comparison rows.
template <class Real>
struct BoundSample {
  Real k;
  Real ar_upper;
  Real avv_upper;
  Real wclc_lower;
  Real wclc_upper;
  Real new_lower;
  Real new_upper;
  BoundBranches<Real> lower_branches;
  BoundBranches<Real> upper_branches;
};

template <class Real>
BoundSample<Real> sample_bounds(const Modulus<Real>& r, const BoundConstants<Real>& c) {
  BoundSample<Real> s;
  s.k = ellipk_agm(r);
  s.ar_upper = upper_ar(r);
  s.avv_upper = upper_avv(r);
  const auto wclc = wclc_bounds(r, c);
  s.wclc_lower = wclc.lower;
  s.wclc_upper = wclc.upper;
  s.lower_branches = new_lower_branches(r, c);
  s.upper_branches = new_upper_branches(r, c);
  s.new_lower = s.lower_branches.from_f > s.lower_branches.from_g ? s.lower_branches.from_f
                                                                  : s.lower_branches.from_g;
  s.new_upper = s.upper_branches.from_f < s.upper_branches.from_g ? s.upper_branches.from_f
                                                                  : s.upper_branches.from_g;
  return s;
}

/// The seven orderings a sandwich sweep certifies at each point, as
/// (margin, positive-is-good) values in a fixed order.
inline constexpr int sandwich_margin_count = 7;

inline const char* sandwich_margin_name(int i) {
  static const char* names[sandwich_margin_count] = {
      "in7_lower", "in7_upper", "in2_dominance", "in2_upper",
      "in5_upper", "in6_lower", "in6_upper"};
  return names[i];
}

template <class Real>
std::array<Real, sandwich_margin_count> sandwich_margins(const BoundSample<Real>& s) {
  return {s.k - s.new_lower,      s.new_upper - s.k, s.ar_upper - s.new_upper,
          s.ar_upper - s.k,       s.avv_upper - s.k, s.k - s.wclc_lower,
          s.wclc_upper - s.k};
}

/// Value of a truncated series together with a proven bound on what was cut.
template <class Real>
struct SeriesEval {
  Real value;
  Real tail_bound;
};

namespace detail {

// Ceiling for n^2 c_n. Kershaw's upper Gamma bound gives
// Q_n < 5 pi n/(5 pi n^2-16n+4) - 1/(n - (3-sqrt(3))/2), and the resulting
// n^2 c-hat_n climbs monotonically to 8 - (5 pi/2)(3-sqrt(3))/2; one part in
// a thousand of headroom covers the approach. Every series evaluation
// revalidates the ceiling against the terms just past its truncation point.
template <class Real>
Real coefficient_envelope() {
  const Real pi = RealOps<Real>::pi();
  const Real sigma = (3 - sqrt(Real(3))) / 2;
  return (8 - 5 * pi / 2 * sigma) * (1 + Real(1) / 1000);
}

template <class Real>
void validate_envelope(LemmaWalker<Real>& walker, const Real& envelope) {
  for (int i = 0; i < 10; ++i) {
    walker.advance();
    const Real n = Real(walker.index());
    if (walker.c() * n * n > envelope)
      throw Error("coefficient envelope violated at n = " + std::to_string(walker.index()));
  }
}

// Bound on sum_{n > n_max} c_n r^{2n-4+2*offset} given c_n <= C/n^2.
template <class Real>
Real series_tail_bound(const Real& r, unsigned long n_max, const Real& envelope, int offset) {
  const Real n1 = Real(n_max + 1);
  if (r == 1) return envelope / Real(n_max);
  const Real r2 = r * r;
  Real lead = pow(r2, static_cast<int>(n_max - 1 + offset)); // r^{2(n_max+1)-4+2*offset}
  return envelope * lead / (n1 * n1 * (1 - r2));
}

} // namespace detail

/// f_1 by its positive-coefficient expansion: alpha + sum_{n>=3} c_n r^{2n-4}.
/// Valid on 0 < r <= 1; the tail bound is O(1/n_max) at r = 1 and geometric
/// inside.
template <class Real>
SeriesEval<Real> f1_series(const Real& r, unsigned long n_max, const BoundConstants<Real>& c) {
  if (!(r > 0 && r <= 1)) throw DomainError("f1_series requires 0 < r <= 1");
  if (n_max < 3) throw DomainError("f1_series requires n_max >= 3");
  const Real r2 = r * r;
  LemmaWalker<Real> walker;
  walker.advance();
  walker.advance(); // n = 3
  Real sum = c.alpha;
  Real power = r2; // r^{2n-4} at n = 3
  for (;;) {
    sum += walker.c() * power;
    if (walker.index() == n_max) break;
    walker.advance();
    power *= r2;
  }
  const Real envelope = detail::coefficient_envelope<Real>();
  detail::validate_envelope(walker, envelope);
  return {sum, detail::series_tail_bound(r, n_max, envelope, 0)};
}

/// g_1 by its expansion: delta + zeta r^2 - sum_{n>=3} c_n r^{2n-2}.
template <class Real>
SeriesEval<Real> g1_series(const Real& r, unsigned long n_max, const BoundConstants<Real>& c) {
  if (!(r > 0 && r <= 1)) throw DomainError("g1_series requires 0 < r <= 1");
  if (n_max < 3) throw DomainError("g1_series requires n_max >= 3");
  const Real r2 = r * r;
  LemmaWalker<Real> walker;
  walker.advance();
  walker.advance();
  Real sum = c.delta + c.zeta * r2;
  Real power = r2 * r2; // r^{2n-2} at n = 3
  for (;;) {
    sum -= walker.c() * power;
    if (walker.index() == n_max) break;
    walker.advance();
    power *= r2;
  }
  const Real envelope = detail::coefficient_envelope<Real>();
  detail::validate_envelope(walker, envelope);
  return {sum, detail::series_tail_bound(r, n_max, envelope, 1)};
}

/// Term-wise derivative of the f_1 expansion: sum c_n (2n-4) r^{2n-5}.
template <class Real>
SeriesEval<Real> f1_series_derivative(const Real& r, unsigned long n_max,
                                      const BoundConstants<Real>& c) {
  if (!(r > 0 && r < 1)) throw DomainError("f1_series_derivative requires 0 < r < 1");
  if (n_max < 3) throw DomainError("f1_series_derivative requires n_max >= 3");
  const Real r2 = r * r;
  LemmaWalker<Real> walker;
  walker.advance();
  walker.advance();
  Real sum = 0;
  Real power = r; // r^{2n-5} at n = 3
  for (;;) {
    sum += walker.c() * Real(2 * walker.index() - 4) * power;
    if (walker.index() == n_max) break;
    walker.advance();
    power *= r2;
  }
  const Real envelope = detail::coefficient_envelope<Real>();
  detail::validate_envelope(walker, envelope);
  // (2n-4) c_n < 2C/n, and the powers sum geometrically.
  const Real tail =
      2 * envelope / Real(n_max + 1) * pow(r2, static_cast<int>(n_max)) / (r * r2 * (1 - r2));
  return {sum, tail};
}

namespace detail {

// Adaptive truncation: stop once the tail bound sinks below tol.
template <class Real>
SeriesEval<Real> f1_series_to_tolerance(const Real& r, const Real& tol,
                                        const BoundConstants<Real>& c, unsigned long cap) {
  const Real envelope = coefficient_envelope<Real>();
  for (unsigned long n_max = 16;; n_max *= 4) {
    if (n_max > cap) n_max = cap;
    if (series_tail_bound(r, n_max, envelope, 0) <= tol || n_max == cap)
      return f1_series(r, n_max, c);
  }
}

template <class Real>
SeriesEval<Real> g1_series_to_tolerance(const Real& r, const Real& tol,
                                        const BoundConstants<Real>& c, unsigned long cap) {
  const Real envelope = coefficient_envelope<Real>();
  for (unsigned long n_max = 16;; n_max *= 4) {
    if (n_max > cap) n_max = cap;
    if (series_tail_bound(r, n_max, envelope, 1) <= tol || n_max == cap)
      return g1_series(r, n_max, c);
  }
}

} // namespace detail

/// f(r)/r^4 evaluated from the definition, with K from the kernel module.
/// No delegation, no guard rails: throws PrecisionLossError when the
/// subtraction eats more than half the working digits.
template <class Real>
Real f1_direct_raw(const Modulus<Real>& r, const BoundConstants<Real>& c) {
  const Real pi = RealOps<Real>::pi();
  const Real x = r.value();
  if (!(x > 0)) throw DomainError("f1 requires 0 < r < 1");
  const Real x2 = x * x;
  const Real minuend = pi / 2 * (16 - 5 * log_one_minus_r_squared(r));
  const Real subtrahend = (c.theta * x2 + ellipk(r)) * (16 + (5 * pi - 16) * x2);
  const Real f = minuend - subtrahend;
  const Real loss_gate = pow(Real(10), -static_cast<int>(working_digits<Real>() / 2));
  if (abs(f) < abs(minuend) * loss_gate)
    throw PrecisionLossError("f1 cancellation exceeds half the working digits; use f1_series");
  return f / (x2 * x2);
}

template <class Real>
Real g1_direct_raw(const Modulus<Real>& r, const BoundConstants<Real>& c) {
  const Real pi = RealOps<Real>::pi();
  const Real x = r.value();
  if (!(x > 0)) throw DomainError("g1 requires 0 < r < 1");
  const Real x2 = x * x;
  const Real subtrahend = pi / 2 * (16 - 5 * log_one_minus_r_squared(r));
  const Real minuend = (c.lambda * x2 + ellipk(r)) * (16 + (5 * pi - 16) * x2);
  const Real g = minuend - subtrahend;
  const Real loss_gate = pow(Real(10), -static_cast<int>(working_digits<Real>() / 2));
  if (abs(g) < abs(subtrahend) * loss_gate)
    throw PrecisionLossError("g1 cancellation exceeds half the working digits; use g1_series");
  return g / x2;
}

namespace detail {

// Direct evaluation is 0/0 at the origin and loses digits to the log-vs-K
// subtraction near 1, so both tails delegate to the series.
inline constexpr double f1_series_low_cut = 0.1;
inline constexpr double f1_series_high_cut = 0.98;
inline constexpr unsigned long f1_series_cap = 262144;

} // namespace detail

/// f_1 with method dispatch: series near the endpoints, direct in between.
/// Near 1, if the series cannot reach the context tolerance within its cap,
/// falls back to the direct form (which only sheds a few digits there).
template <class Real>
Real f1_direct(const Modulus<Real>& r, const BoundConstants<Real>& c) {
  const Real x = r.value();
  const Real tol = 32 * RealOps<Real>::eps();
  if (x < detail::f1_series_low_cut)
    return detail::f1_series_to_tolerance(x, tol, c, detail::f1_series_cap).value;
  if (x > detail::f1_series_high_cut) {
    auto eval = detail::f1_series_to_tolerance(x, tol, c, detail::f1_series_cap);
    if (eval.tail_bound <= tol) return eval.value;
    return f1_direct_raw(r, c);
  }
  return f1_direct_raw(r, c);
}

template <class Real>
Real g1_direct(const Modulus<Real>& r, const BoundConstants<Real>& c) {
  const Real x = r.value();
  const Real tol = 32 * RealOps<Real>::eps();
  if (x < detail::f1_series_low_cut)
    return detail::g1_series_to_tolerance(x, tol, c, detail::f1_series_cap).value;
  if (x > detail::f1_series_high_cut) {
    auto eval = detail::g1_series_to_tolerance(x, tol, c, detail::f1_series_cap);
    if (eval.tail_bound <= tol) return eval.value;
    return g1_direct_raw(r, c);
  }
  return g1_direct_raw(r, c);
}

} // namespace ellik

#endif
