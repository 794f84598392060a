#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "hyperwave/core.hpp"
#include "hyperwave/hcseries.hpp"
#include "hyperwave/special.hpp"

namespace hyperwave {

struct WaveTerm {
  SignedPermutation w;
  CFunctionValue weight;    // C(w xi; g)
  ScaledComplex series;     // phi_{w xi}(x), scaled
  ScaledComplex term;       // weight * series, scaled
};

struct WaveOptions {
  int N = 30;
  Tolerances tol{};
  std::optional<TranslationTwist> twist;  // degeneration path support
  bool guard_spectrum = true;  // throw NearSingularSpectral under pole_guard
};

// Orbit-symmetrized sum Phi = sum_w C(w xi) phi_{w xi}(x) over all 2^n n!
// signed permutations, combined under a common exponent.
ScaledComplex wavefunction_scaled(Family f, const SpectralPoint& xi,
                                  const PositionPoint& x, const Couplings& g,
                                  const WaveOptions& opt = {});

Complex wavefunction(Family f, const SpectralPoint& xi, const PositionPoint& x,
                     const Couplings& g, int N, const Tolerances& tol = {});

// Individual orbit terms, in group enumeration order.
std::vector<WaveTerm> wavefunction_terms(Family f, const SpectralPoint& xi,
                                         const PositionPoint& x,
                                         const Couplings& g,
                                         const WaveOptions& opt = {});

struct RegularizedValue {
  Complex value{0.0, 0.0};      // extrapolated to zero displacement
  double error_estimate = 0.0;  // difference of top two extrapolation orders
  std::vector<Complex> samples; // Phi(xi0 + delta_i u), in offset order
  std::vector<double> offsets;
  std::vector<double> direction;
};

// Evaluates Phi at xi0 + delta_i * u for a seeded random real unit direction
// u and Richardson-extrapolates to delta = 0.  Throws
// ExtrapolationDivergence when samples grow like an uncancelled 1/delta.
RegularizedValue wavefunction_regular(Family f, const SpectralPoint& xi0,
                                      const PositionPoint& x, const Couplings& g,
                                      int N, std::span<const double> offsets,
                                      std::uint64_t seed,
                                      const Tolerances& tol = {});

}  // namespace hyperwave
