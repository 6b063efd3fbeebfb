#ifndef ELLIK_MODULUS_HPP
#define ELLIK_MODULUS_HPP

#include <string>

#include "errors.hpp"

namespace ellik {

/// Admissible range for the elliptic modulus. The bound expressions live on
/// the open interval; the K evaluators also accept r = 0.
enum class ModulusRange {
  open,        // 0 < r < 1
  closed_left, // 0 <= r < 1
};

/// Validated elliptic modulus. Construction enforces the range, so code
/// holding a Modulus never re-checks it.
template <class Real>
class Modulus {
public:
  explicit Modulus(Real r, ModulusRange range = ModulusRange::closed_left) : r_(std::move(r)) {
    if (range == ModulusRange::open && !(r_ > 0))
      throw DomainError("modulus must satisfy 0 < r < 1");
    if (!(r_ >= 0)) throw DomainError("modulus must be nonnegative");
    if (!(r_ < 1)) throw DomainError("modulus must satisfy r < 1 (K diverges at r = 1)");
  }

  const Real& value() const { return r_; }

private:
  Real r_;
};

} // namespace ellik

#endif
