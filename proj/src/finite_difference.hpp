#ifndef ELLIK_FINITE_DIFFERENCE_HPP
#define ELLIK_FINITE_DIFFERENCE_HPP

#include "errors.hpp"
#include "precision.hpp"

namespace ellik {

/// Central-difference estimate of the first or second derivative of `fn`
/// at r, with O(step^2) truncation. The stencil must stay inside (0,1).
template <class Real, class Fn>
Real finite_difference(Fn&& fn, const Real& r, const Real& step, int order) {
  if (!(step > 0)) throw DomainError("finite_difference requires step > 0");
  if (!(r - step > 0 && r + step < 1))
    throw DomainError("finite_difference stencil leaves (0,1)");
  if (order == 1) return (fn(r + step) - fn(r - step)) / (2 * step);
  if (order == 2) return (fn(r + step) - 2 * fn(r) + fn(r - step)) / (step * step);
  throw InvalidArgument("finite_difference supports orders 1 and 2");
}

/// Balanced default step: coarse enough to dodge rounding noise, fine
/// enough to keep the O(step^2) truncation term small.
template <class Real>
Real default_fd_step() {
  if constexpr (std::is_same_v<Real, double>) return 1e-4;
  else return pow(Real(10), -static_cast<int>(working_digits<Real>() / 3));
}

} // namespace ellik

#endif
