#pragma once

#include "hyperwave/core.hpp"
#include "hyperwave/hcseries.hpp"

namespace hyperwave {

// Potential part of the Schrodinger operator L = sum_j d^2/dx_j^2 + V(x).
//   bc: -sum_j [ gS(gS+2gL-1)/(4 sinh^2(x_j/2)) + gL(gL-1)/sinh^2(x_j) ]
//       - sum_{j<k} gM(gM-1)/2 * [ 1/sinh^2((x_j+x_k)/2) + 1/sinh^2((x_j-x_k)/2) ]
//   t:  -sum_{j<n} a_j e^{x_{j+1}-x_j} - a_{n-1} e^{-x_{n-1}-x_n}   (n >= 2)
//       - gS(gS+2gL-1)/(4 sinh^2(x_n/2)) - gL(gL-1)/sinh^2(x_n)
//   cs: -sum_j [ gS e^{-x_j} + a_n e^{-2x_j} ]
//       - sum_{j<k} gM(gM-1)/2 / sinh^2((x_j-x_k)/2)
Complex potential(Family f, const PositionPoint& x, const Couplings& g,
                  double tau_x = 1e-6);

// (L phi)(x) for the truncated series: termwise second derivatives plus the
// closed-form potential times the series value.
Complex apply_L_to_series(Family f, const CoeffTable& table,
                          const PositionPoint& x, const Tolerances& tol = {});

// Finite-difference application of L: per-coordinate second-derivative
// stencils of the given order (2 = three-point, 4 = five-point) plus the
// closed-form potential.
Complex apply_L_finite_difference(Family f, const CoeffTable& table,
                                  const PositionPoint& x, double h,
                                  int order = 4, const Tolerances& tol = {});

// Relative eigenvalue defect |(L - <xi,xi>) F| / |F| with F the series (or,
// with use_wavefunction, the orbit-symmetrized sum).
double eigen_residual(Family f, const SpectralPoint& xi, const PositionPoint& x,
                      const Couplings& g, int N, bool use_wavefunction = false,
                      const Tolerances& tol = {});

}  // namespace hyperwave
