#pragma once

#include <stdexcept>
#include <string>

namespace opjensen {

// Base class for every failure the toolkit raises on its own behalf.
// Catching ToolkitError separates "the inputs were inadmissible" from a
// genuine bug (std::logic_error) or an allocation failure.
class ToolkitError : public std::runtime_error {
 public:
  explicit ToolkitError(const std::string& what) : std::runtime_error(what) {}
};

// A point fell outside (or an interval escaped) the declared domain of a
// scalar function, or a spectrum escaped its declared window.
class DomainViolation : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// An interval endpoint pair with M - m below the point-collapse threshold was
// passed to an operation that genuinely needs two distinct endpoints.
class DegenerateInterval : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// The derivative never crosses the chord slope inside the interval, so no
// supporting tangent parallel to the chord exists there.
class NoTangentPoint : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// The interpolation error of an envelope exceeded the requested budget.
// `achieved` carries the width that was actually attained.
class EpsNotAchievable : public ToolkitError {
 public:
  EpsNotAchievable(const std::string& what, double achieved_eps)
      : ToolkitError(what), achieved(achieved_eps) {}
  double achieved;
};

// A spectrum (or a scalar range standing in for one) that must be strictly
// positive was not.
class NonPositiveSpectrum : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

class DimensionMismatch : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// A matrix factory was asked for an impossible shape (e.g. an isometry with
// more columns than rows).
class BadShape : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// A function declared to have one sign on an interval changes sign there, or
// an operator that must be definite of a declared sign is not.
class SignViolation : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// The congruence family needs g > 0 on the optimization range.
class NonPositiveG : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// A named-target bound was requested whose sign gate (range >= 0 for real
// powers, range > 0 for log) fails on the combined range.
class RangeSignViolation : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// Interval products (and product certificates) are defined for strictly
// positive intervals only.
class PositivityViolation : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// Ky Fan norms need 1 <= ell <= dim.
class BadEll : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// An iterative routine ran out of iterations before reaching its tolerance.
class ConvergenceFailure : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

// Malformed user-facing input: ensembles whose weights do not sum to one,
// unparseable scalar-function names, scenario JSON with missing fields, ...
class ValidationError : public ToolkitError {
 public:
  using ToolkitError::ToolkitError;
};

}  // namespace opjensen
