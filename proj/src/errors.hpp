#ifndef ELLIK_ERRORS_HPP
#define ELLIK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ellik {

/// Base class for all library failures.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of the requested operation (e.g. r >= 1).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A malformed input that never reached numeric evaluation (bad decimal
/// string, bad grid spec, digits below the supported minimum).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// Series evaluation exceeded its term cap before meeting the tolerance.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its refinement budget.
class ToleranceError : public Error {
public:
  using Error::Error;
};

/// Catastrophic cancellation ate more than the context can absorb; the
/// caller should switch to a series form.
class PrecisionLossError : public Error {
public:
  using Error::Error;
};

/// A power-series assembly failed a structural cancellation check,
/// indicating a transcription bug rather than a numeric issue.
class AssemblyError : public Error {
public:
  using Error::Error;
};

} // namespace ellik

#endif
