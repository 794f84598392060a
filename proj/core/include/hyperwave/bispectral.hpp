#pragma once

#include <cstdint>
#include <vector>

#include "hyperwave/core.hpp"
#include "hyperwave/wavefn.hpp"

namespace hyperwave {

// One-step rational factors of the difference equations.
//   v: 1 + gM/z (bc, cs); 1/z (t)
//   w: (1 + (gS/2 + gL)/z)(1 + gS/(1+2z)) (bc, t);
//      (1/(2z))(1/2 + gS/(1+2z)) (cs)
Complex v_factor(Family f, Complex z, const Couplings& g, double tau_int = 1e-9);
Complex w_factor(Family f, Complex z, const Couplings& g, double tau_int = 1e-9);

// A signed index set (J, eps): 0-based strictly increasing indices with signs.
struct SignedIndexSet {
  std::vector<int> indices;
  std::vector<int> signs;  // +1 / -1, same length
};

// Shift coefficient V_{eps J}(xi):
//   prod_{j in J} w(eps_j xi_j)
//   * prod_{j in J, k notin J} v(eps_j xi_j + xi_k) v(eps_j xi_j - xi_k)
//   * prod_{j<j' in J} v(eps_j xi_j + eps_j' xi_j') v(eps_j xi_j + eps_j' xi_j' + 1)
Complex V_coeff(Family f, const SignedIndexSet& J, const SpectralPoint& xi,
                const Couplings& g, double tau_int = 1e-9);

// Complementary coefficient U_{K,p}(xi) = (-1)^p sum over I subset K with
// |I| = p and signs eps on I of
//   prod_{i in I} w(eps_i xi_i)
//   * prod_{i in I, k in K minus I} v(eps_i xi_i + xi_k) v(eps_i xi_i - xi_k)
//   * prod_{i<i' in I} v(eps_i xi_i + eps_i' xi_i') v(-eps_i xi_i - eps_i' xi_i' - 1)
Complex U_coeff(Family f, const std::vector<int>& K, int p,
                const SpectralPoint& xi, const Couplings& g,
                double tau_int = 1e-9);

// Eigenvalue functions:
//   bc: 4^ell sum_{|J|=ell} prod_{j in J} sinh^2(x_j/2)
//   t:  e^{x_1+...+x_ell} + [ell = n] e^{x_1+...+x_{n-1}} (e^{-x_n} - 2)
//   cs: sum_{|J|=ell} prod_{j in J} e^{x_j}
Complex E_eigenvalue(Family f, int ell, const PositionPoint& x);

enum class DifferenceRoute {
  general,      // sum_{J, eps} U_{J^c, ell-|J|} V_{eps J} Phi_{xi + e_{eps J}}
  specialized,  // the order-1/order-2 forms written over (Phi_shift - Phi)
};

// Left-hand side of the order-ell difference equation applied to Phi.
ScaledComplex difference_lhs(Family f, int ell, const SpectralPoint& xi,
                             const PositionPoint& x, const Couplings& g, int N,
                             DifferenceRoute route = DifferenceRoute::general,
                             const Tolerances& tol = {});

// Relative residual |LHS - E_ell(x) Phi| / |E_ell(x) Phi| on the general route.
double difference_residual(Family f, int ell, const SpectralPoint& xi,
                           const PositionPoint& x, const Couplings& g, int N,
                           const Tolerances& tol = {});

// Nudges xi by seeded random 1e-3 displacements until xi and all 3^n shift
// targets xi + e_{eps J} clear the excluded hyperplanes by pole_guard.
SpectralPoint screen_shift_targets(const SpectralPoint& xi, double pole_guard,
                                   std::uint64_t seed);

}  // namespace hyperwave
