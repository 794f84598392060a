#pragma once

#include <utility>

#include "hyperwave/core.hpp"

namespace hyperwave {

// Principal-branch log Gamma: rational-kernel (Lanczos) evaluation on
// Re z >= 1/2, reflection with branch tracking on the left half plane.
// Throws PoleOfGamma within tau_int of a nonpositive integer.
Complex log_gamma(Complex z, double tau_int = 1e-9);

// As above but reports a pole by returning false instead of throwing.
bool try_log_gamma(Complex z, Complex& out, double tau_int = 1e-9);

enum class CKind { v, w };

// One-variable c-factors.
//   v kind: Gamma(z)/Gamma(gM + z) for bc and cs; Gamma(z) for t.
//   w kind: Gamma(2z)Gamma(gS/2 + z) / (Gamma(gS + 2z)Gamma(gS/2 + gL + z))
//           for bc and t; Gamma(2z)/Gamma(1/2 + gS + z) for cs.
Complex c_factor(Family f, CKind kind, Complex z, const Couplings& g,
                 double tau_int = 1e-9);

struct CFunctionValue {
  Complex mantissa{0.0, 0.0};
  double log_scale = 0.0;
  Complex value() const;
};

// Product of c_w over coordinates and c_v over xi_j +/- xi_k (j < k),
// accumulated as a sum of log-gamma terms.  A reciprocal-gamma factor at a
// pole contributes a (near-)zero mantissa instead of an error.
CFunctionValue c_function(Family f, const SpectralPoint& xi, const Couplings& g,
                          double tau_int = 1e-9);

// log of c_function for prefactor-limit combinations; requires a nonzero
// mantissa.
Complex log_c_function(Family f, const SpectralPoint& xi, const Couplings& g,
                       double tau_int = 1e-9);

enum class DegenerationKind { M, L };

// Normalizing constants of the parameter degenerations:
//   M: Gamma(gM)^(n(n-1))
//   L: (Gamma(gS) Gamma(gS/2 + gL) / (Gamma(gS/2) Gamma((1+gS)/2)))^n  with the
//      convention below matching the orbit-sum limits.
Complex log_confluence_prefactor(DegenerationKind k, const Couplings& g, int n,
                                 double tau_int = 1e-9);
Complex confluence_prefactor(DegenerationKind k, const Couplings& g, int n,
                             double tau_int = 1e-9);

// The symmetry-breaking weight
//   delta(x; g) = prod_j (e^{x_j/2}-e^{-x_j/2})^{gS} (e^{x_j}-e^{-x_j})^{gL}
//               * prod_{j<k} (e^{(x_j+x_k)/2}-e^{-(x_j+x_k)/2})^{gM}
//                            (e^{(x_j-x_k)/2}-e^{-(x_j-x_k)/2})^{gM}
// and the shifted weight exponent
//   rho_g = ((n-j) gM + gS/2 + gL)_j.
std::pair<Complex, std::vector<Complex>> weight_and_rho(const PositionPoint& x,
                                                        const Couplings& g,
                                                        double tau_x = 1e-6);

}  // namespace hyperwave
