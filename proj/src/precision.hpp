#ifndef ELLIK_PRECISION_HPP
#define ELLIK_PRECISION_HPP

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <string>
#include <type_traits>

#include "errors.hpp"

namespace ellik {

// Generic numeric code below is written unqualified; these pick up the
// double overloads while ADL finds the BigFloat ones.
using std::abs;
using std::exp;
using std::log;
using std::log1p;
using std::pow;
using std::sin;
using std::sqrt;

/// Software big float with runtime-selectable precision (MPFR-backed).
using BigFloat = boost::multiprecision::mpfr_float;

enum class Mode { hardware, extended };

/// Arithmetic context for an evaluation: hardware doubles, or extended
/// precision carrying `digits` significant decimal digits. Immutable.
class PrecisionContext {
public:
  static constexpr unsigned min_extended_digits = 16;
  static constexpr unsigned default_extended_digits = 50;
  static constexpr unsigned hardware_digits = 15; // DBL_DIG

  static PrecisionContext hardware() { return PrecisionContext(Mode::hardware, hardware_digits); }

  static PrecisionContext extended(unsigned digits = default_extended_digits) {
    if (digits < min_extended_digits)
      throw InvalidArgument("extended precision requires at least 16 digits");
    return PrecisionContext(Mode::extended, digits);
  }

  Mode mode() const { return mode_; }
  unsigned digits() const { return digits_; }

  bool operator==(const PrecisionContext&) const = default;

private:
  PrecisionContext(Mode m, unsigned d) : mode_(m), digits_(d) {}
  Mode mode_;
  unsigned digits_;
};

namespace detail {

// Boost 1.74 keeps the mpfr default precision process-global, so extended
// evaluations are serialized; concurrent hardware-mode calls are unaffected.
inline std::mutex& extended_mutex() {
  static std::mutex m;
  return m;
}

// Guard digits absorb rounding inside kernels; results are still quoted at
// the context's digit count.
inline constexpr unsigned guard_digits = 10;

} // namespace detail

/// Pins the working precision of BigFloat for the lifetime of the scope.
/// One scope per top-level extended evaluation; do not nest.
class ExtendedScope {
public:
  explicit ExtendedScope(unsigned digits)
      : lock_(detail::extended_mutex()), saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(digits + detail::guard_digits);
  }
  ~ExtendedScope() { BigFloat::default_precision(saved_); }

  ExtendedScope(const ExtendedScope&) = delete;
  ExtendedScope& operator=(const ExtendedScope&) = delete;

private:
  std::lock_guard<std::mutex> lock_;
  unsigned saved_;
};

/// Numeric plumbing that differs between the two real types.
template <class Real>
struct RealOps;

template <>
struct RealOps<double> {
  static double pi() { return boost::math::constants::pi<double>(); }
  static double ln2() { return boost::math::constants::ln_two<double>(); }
  static double eps() { return std::numeric_limits<double>::epsilon(); }

  static double parse(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE)
      throw InvalidArgument("not a finite decimal number: '" + text + "'");
    if (!std::isfinite(v)) throw InvalidArgument("not a finite decimal number: '" + text + "'");
    return v;
  }

  // Shortest round-trip decimal; the serialization contract in hardware mode.
  static std::string format(double v, unsigned /*digits*/) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  }

  static double tgamma(double x) { return std::tgamma(x); }
  static double lgamma(double x) { return std::lgamma(x); }
  static double to_double(double x) { return x; }
};

template <>
struct RealOps<BigFloat> {
  static BigFloat pi() { return boost::math::constants::pi<BigFloat>(); }
  static BigFloat ln2() { return boost::math::constants::ln_two<BigFloat>(); }

  // Unit roundoff at the current working precision.
  static BigFloat eps() {
    return pow(BigFloat(10), -static_cast<int>(BigFloat::default_precision()));
  }

  static BigFloat parse(const std::string& text) {
    try {
      return BigFloat(text);
    } catch (const std::exception&) {
      throw InvalidArgument("not a finite decimal number: '" + text + "'");
    }
  }

  // Fixed significant-digit count; the serialization contract in extended mode.
  static std::string format(const BigFloat& v, unsigned digits) { return v.str(digits); }

  static BigFloat tgamma(const BigFloat& x) { return boost::multiprecision::tgamma(x); }
  static BigFloat lgamma(const BigFloat& x) { return boost::multiprecision::lgamma(x); }
  static double to_double(const BigFloat& x) { return x.convert_to<double>(); }
};

/// Decimal digits carried by the active arithmetic: DBL_DIG for doubles,
/// the pinned working precision for BigFloat.
template <class Real>
unsigned working_digits() {
  if constexpr (std::is_same_v<Real, double>) return 15;
  else return static_cast<unsigned>(BigFloat::default_precision());
}

/// Runs `fn` with the real type selected by the context. For extended
/// contexts the working precision is pinned for the whole call.
template <class Fn>
decltype(auto) with_real(const PrecisionContext& ctx, Fn&& fn) {
  if (ctx.mode() == Mode::hardware) {
    return fn(std::type_identity<double>{});
  }
  ExtendedScope scope(ctx.digits());
  return fn(std::type_identity<BigFloat>{});
}

} // namespace ellik

#endif
