#ifndef ELLIK_GRID_HPP
#define ELLIK_GRID_HPP

#include <cmath>
#include <cstddef>
#include <string>

#include "errors.hpp"
#include "precision.hpp"

namespace ellik {

/// A start:stop:step grid over (0,1). Both ends are included when they land
/// on the step lattice (within a relative fuzz of 1e-9), so 0.01:0.99:0.01
/// yields 99 points. Endpoints are kept as decimal strings so extended
/// contexts can regenerate the points exactly at working precision.
class GridSpec {
public:
  GridSpec(std::string start, std::string stop, std::string step)
      : start_(std::move(start)), stop_(std::move(stop)), step_(std::move(step)) {
    const double s0 = RealOps<double>::parse(start_);
    const double s1 = RealOps<double>::parse(stop_);
    const double h = RealOps<double>::parse(step_);
    if (!(s0 > 0 && s1 < 1 && s0 <= s1)) throw InvalidArgument("grid requires 0 < start <= stop < 1");
    if (!(h > 0)) throw InvalidArgument("grid requires step > 0");
    count_ = static_cast<std::size_t>(std::floor((s1 - s0) / h * (1 + 1e-12) + 1e-9)) + 1;
  }

  /// Parses "start:stop:step".
  static GridSpec parse(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
      throw InvalidArgument("grid spec must look like start:stop:step");
    return GridSpec(text.substr(0, first), text.substr(first + 1, second - first - 1),
                    text.substr(second + 1));
  }

  std::size_t size() const { return count_; }
  const std::string& start() const { return start_; }
  const std::string& stop() const { return stop_; }
  const std::string& step() const { return step_; }
  std::string text() const { return start_ + ":" + stop_ + ":" + step_; }

  /// i-th point, regenerated (not accumulated) in the requested arithmetic.
  template <class Real>
  Real point(std::size_t i) const {
    return RealOps<Real>::parse(start_) + Real(static_cast<unsigned long>(i)) * RealOps<Real>::parse(step_);
  }

private:
  std::string start_;
  std::string stop_;
  std::string step_;
  std::size_t count_;
};

} // namespace ellik

#endif
