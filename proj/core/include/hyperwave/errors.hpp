#pragma once

#include <stdexcept>
#include <string>

namespace hyperwave {

// All library errors derive from Error and carry a structured triple
// (module, object, detail) so drivers can emit machine-readable records.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string object, std::string detail)
      : std::runtime_error(module + ": " + object + ": " + detail),
        module_(std::move(module)),
        object_(std::move(object)),
        detail_(std::move(detail)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& object() const noexcept { return object_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string module_, object_, detail_;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Position argument lies outside (or too close to the walls of) the
// family's convergence chamber.
struct ChamberViolation : Error {
  using Error::Error;
};

// A recurrence denominator fell under the guard threshold while building an
// unregularized coefficient table; names the offending composition.
struct SpectralPlaneSingularity : Error {
  using Error::Error;
};

// A gamma argument landed on a nonpositive integer with no compensating
// reciprocal factor.
struct PoleOfGamma : Error {
  using Error::Error;
};

// A rational one-step coefficient factor was evaluated at its pole.
struct RationalPole : Error {
  using Error::Error;
};

// Spectral point too close to an excluded hyperplane for direct orbit
// summation; callers should reroute through the extrapolated evaluator.
struct NearSingularSpectral : Error {
  using Error::Error;
};

// The extrapolation samples grow like an uncancelled simple pole.
struct ExtrapolationDivergence : Error {
  using Error::Error;
};

// A documented precondition was violated.
struct PreconditionViolation : Error {
  using Error::Error;
};

// Import/export of coefficient tables failed.
struct TableIoError : Error {
  using Error::Error;
};

}  // namespace hyperwave
