#ifndef ELLIK_POWER_SERIES_HPP
#define ELLIK_POWER_SERIES_HPP

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "precision.hpp"
#include "special.hpp"

namespace ellik {

/// Truncated formal power series in r^2: index k holds the coefficient of
/// r^{2k}. All arithmetic is closed under truncation at `order`; a product
/// coefficient k reads exactly inputs 0..k. Immutable once built.
template <class Real>
class PowerSeries {
public:
  explicit PowerSeries(std::size_t order) : coeff_(order + 1, Real(0)) {}

  static PowerSeries from_coefficients(std::vector<Real> coefficients) {
    if (coefficients.empty()) throw InvalidArgument("a power series needs at least order 0");
    PowerSeries s(coefficients.size() - 1);
    s.coeff_ = std::move(coefficients);
    return s;
  }

  std::size_t order() const { return coeff_.size() - 1; }
  const Real& operator[](std::size_t k) const { return coeff_[k]; }
  Real& operator[](std::size_t k) { return coeff_[k]; }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(common_order(a, b));
    for (std::size_t k = 0; k <= out.order(); ++k) out.coeff_[k] = a.coeff_[k] + b.coeff_[k];
    return out;
  }

  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(common_order(a, b));
    for (std::size_t k = 0; k <= out.order(); ++k) out.coeff_[k] = a.coeff_[k] - b.coeff_[k];
    return out;
  }

  /// Cauchy product, truncated at the shared order.
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries out(common_order(a, b));
    for (std::size_t k = 0; k <= out.order(); ++k) {
      Real acc = 0;
      for (std::size_t i = 0; i <= k; ++i) acc += a.coeff_[i] * b.coeff_[k - i];
      out.coeff_[k] = acc;
    }
    return out;
  }

  PowerSeries scaled(const Real& factor) const {
    PowerSeries out = *this;
    for (auto& c : out.coeff_) c *= factor;
    return out;
  }

  /// Value at r (Horner in r^2); used by derivative cross-checks.
  Real evaluate(const Real& r) const {
    const Real r2 = r * r;
    Real acc = coeff_.back();
    for (std::size_t k = coeff_.size() - 1; k-- > 0;) acc = acc * r2 + coeff_[k];
    return acc;
  }

private:
  static std::size_t common_order(const PowerSeries& a, const PowerSeries& b) {
    if (a.order() != b.order())
      throw InvalidArgument("power series arithmetic requires matching truncation orders");
    return a.order();
  }

  std::vector<Real> coeff_;
};

/// K's expansion: coefficient of r^{2k} is (pi/2) [(1/2,k)/k!]^2, built from
/// the explicit Pochhammer route (deliberately not the ratio recurrence the
/// evaluator uses, so the two paths stay independent).
template <class Real>
PowerSeries<Real> series_K(std::size_t order) {
  const Real half = Real(1) / 2;
  PowerSeries<Real> s(order);
  Real factorial = 1;
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) factorial *= Real(k);
    const Real ratio = pochhammer(half, k) / factorial;
    s[k] = RealOps<Real>::pi() / 2 * ratio * ratio;
  }
  return s;
}

/// (pi/2)(16 - 5 log(1-r^2)) as a series: 8 pi at k = 0, (5 pi/2)/k after.
template <class Real>
PowerSeries<Real> series_log_term(std::size_t order) {
  const Real pi = RealOps<Real>::pi();
  PowerSeries<Real> s(order);
  s[0] = 8 * pi;
  for (std::size_t k = 1; k <= order; ++k) s[k] = 5 * pi / 2 / Real(k);
  return s;
}

namespace detail {

// 16 + (5 pi - 16) r^2, zero-padded to the working order.
template <class Real>
PowerSeries<Real> quadratic_factor(std::size_t order) {
  const Real pi = RealOps<Real>::pi();
  PowerSeries<Real> s(order);
  s[0] = 16;
  s[1] = 5 * pi - 16;
  return s;
}

// r^2 * constant, zero-padded.
template <class Real>
PowerSeries<Real> quadratic_term(const Real& factor, std::size_t order) {
  PowerSeries<Real> s(order);
  s[1] = factor;
  return s;
}

} // namespace detail

enum class SeriesName { f, g, f1, g1 };

inline std::string to_string(SeriesName name) {
  switch (name) {
    case SeriesName::f: return "f";
    case SeriesName::g: return "g";
    case SeriesName::f1: return "f1";
    case SeriesName::g1: return "g1";
  }
  return "?";
}

/// An assembled expansion plus the power of r^2 divided out when reading it
/// as the theorem function (2 for f -> f_1, 1 for g -> g_1).
template <class Real>
struct SeriesTable {
  SeriesName name;
  PowerSeries<Real> series;
  unsigned shift;
};

namespace detail {

// The assembly must reproduce exact cancellations in the leading
// coefficients; anything bigger than rounding there is a transcription bug.
template <class Real>
void check_vanishing_head(const Real& value, const char* where) {
  const Real scale = 8 * RealOps<Real>::pi();
  const Real slack = pow(Real(10), 10 - static_cast<int>(working_digits<Real>()));
  if (abs(value) > scale * slack)
    throw AssemblyError(std::string("series head failed to vanish at ") + where);
}

} // namespace detail

/// f = (pi/2)(16 - 5 log(1-r^2)) - (theta r^2 + K)(16 + (5pi-16) r^2),
/// assembled coefficient-wise. Heads at r^0 and r^2 must cancel; the r^4
/// coefficient is alpha.
template <class Real>
SeriesTable<Real> build_f_series(std::size_t order) {
  if (order < 3) throw InvalidArgument("f assembly needs order >= 3");
  const auto c = BoundConstants<Real>::evaluate();
  const auto inner = detail::quadratic_term(c.theta, order) + series_K<Real>(order);
  auto f = series_log_term<Real>(order) - inner * detail::quadratic_factor<Real>(order);
  detail::check_vanishing_head(f[0], "f: r^0");
  detail::check_vanishing_head(f[1], "f: r^2");
  return {SeriesName::f, std::move(f), 2};
}

/// g = (lambda r^2 + K)(16 + (5pi-16) r^2) - (pi/2)(16 - 5 log(1-r^2)).
/// The head at r^0 must cancel; r^2 is delta, r^4 is zeta.
template <class Real>
SeriesTable<Real> build_g_series(std::size_t order) {
  if (order < 3) throw InvalidArgument("g assembly needs order >= 3");
  const auto c = BoundConstants<Real>::evaluate();
  const auto inner = detail::quadratic_term(c.lambda, order) + series_K<Real>(order);
  auto g = inner * detail::quadratic_factor<Real>(order) - series_log_term<Real>(order);
  detail::check_vanishing_head(g[0], "g: r^0");
  return {SeriesName::g, std::move(g), 1};
}

/// Brute-force Maclaurin coefficient of f_1 at r^{2n-4} (= f at r^{2n}) via
/// the series assembly; never touches the closed form it cross-checks.
template <class Real>
Real coefficient_by_assembly(unsigned long n) {
  if (n < 3) throw DomainError("coefficient_by_assembly requires n >= 3");
  return build_f_series<Real>(n).series[n];
}

/// Batch variant: coefficients of f at r^{2k} for k = 0..order.
template <class Real>
std::vector<Real> f_coefficients_by_assembly(std::size_t order) {
  const auto table = build_f_series<Real>(order);
  std::vector<Real> out;
  out.reserve(order + 1);
  for (std::size_t k = 0; k <= order; ++k) out.push_back(table.series[k]);
  return out;
}

template <class Real>
std::vector<Real> g_coefficients_by_assembly(std::size_t order) {
  const auto table = build_g_series<Real>(order);
  std::vector<Real> out;
  out.reserve(order + 1);
  for (std::size_t k = 0; k <= order; ++k) out.push_back(table.series[k]);
  return out;
}

/// CSV export: one `index,coefficient` row per stored power of r^2 (of the
/// unshifted series; read index k as r^{2(k - shift)} of the named function).
template <class Real>
std::string series_table_csv(const SeriesTable<Real>& table, unsigned digits) {
  std::string out = "index,coefficient\n";
  for (std::size_t k = 0; k <= table.series.order(); ++k) {
    out += std::to_string(k);
    out += ',';
    out += RealOps<Real>::format(table.series[k], digits);
    out += '\n';
  }
  return out;
}

} // namespace ellik

#endif
