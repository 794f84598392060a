#pragma once

#include "hyperwave/core.hpp"
#include "hyperwave/hcseries.hpp"
#include "hyperwave/wavefn.hpp"

namespace hyperwave {

// Coupling path g(c) entering the degenerations, solving
//   M: gM(c) (gM(c) - 1) = e^c            -> gM(c) = (1 + sqrt(1 + 4 e^c)) / 2
//   L: gS(c) = 2 gS,
//      gL(c) (gL(c) - 1) = e^{2c} / 16    -> gL(c) = (1 + sqrt(1 + e^{2c}/4)) / 2
// Other entries (and the a vector) are carried through unchanged.
Couplings coupling_path(DegenerationKind k, const Couplings& g, double c);

// Target family of each degeneration: M sends bc -> t, L sends bc -> cs.
Family degeneration_target(DegenerationKind k);

// Absolute gap | e^{-c<xi,rho_K>} Delta_U phi^{bc}(x + c rho_K; g(c))
//              - Delta_U phi^{target}(x; g) |
// with a common regularizer on both sides; the translated side is evaluated
// through the rescaled-input recurrence, which keeps it O(1) in c.
double series_confluence_error(DegenerationKind k, const SpectralPoint& xi,
                               const PositionPoint& x, const Couplings& g,
                               double c, int N, const Tolerances& tol = {});

// Per-entry gap between the rescaled-input table at g(c) and the regularized
// target table, maximized over level(nu) <= level_cap.
double coefficient_confluence_error(DegenerationKind k, const SpectralPoint& xi,
                                    const Couplings& g, double c, int N,
                                    int level_cap, const Tolerances& tol = {});

// Relative gap | gamma_K(g(c)) Phi^{bc}(x + c rho_K; g(c)) - Phi^{target}(x; g) |
//              / | Phi^{target}(x; g) |.
double wavefunction_confluence_error(DegenerationKind k, const SpectralPoint& xi,
                                     const PositionPoint& x, const Couplings& g,
                                     double c, int N, const Tolerances& tol = {});

// Relative gap | gamma_K(g(c)) e^{c<xi,rho_K>} C^{bc}(xi; g(c)) - C^{target}(xi; g) |
//              / | C^{target}(xi; g) |.
double prefactor_limit_error(DegenerationKind k, const SpectralPoint& xi,
                             const Couplings& g, double c, double tau_int = 1e-9);

}  // namespace hyperwave
