#pragma once

#include <memory>
#include <optional>

#include "hyperwave/core.hpp"
#include "hyperwave/lattice.hpp"
#include "hyperwave/special.hpp"

namespace hyperwave {

// Optional rescaling of the one-step inputs: coefficient(alpha, l) is
// multiplied by exp(-c * l * <alpha, rho_K>).  Used by the degeneration
// paths, where it keeps every table entry O(1); seeded at nu = 0 it turns a
// table at translated position x + c*rho_K into one evaluated at x.
struct TranslationTwist {
  DegenerationKind kind = DegenerationKind::M;
  double c = 0.0;
};

struct CoeffTable {
  Family family = Family::bc;
  SpectralPoint xi;
  Couplings g;
  int N = 0;
  bool regularized = false;
  Complex delta_u{1.0, 0.0};  // regularizer product; 1 when not regularized
  std::optional<TranslationTwist> twist;
  std::shared_ptr<const Lattice> lattice;
  std::vector<Complex> entries;  // indexed by lattice position

  // Entry for nu; zero for absent (non-dominant) nu, throws on level > N.
  Complex at(const Composition& nu) const;
};

// One-step recurrence input a^r_{alpha,l}(g).
//   bc: gS(gS+2gL-1) l on e_j; 2 gM(gM-1) l on e_j +/- e_k; 4 gL(gL-1) l on 2e_j.
//   t:  gS(gS+2gL-1) l on e_n; a_j [l=1] on e_j - e_{j+1}; a_{n-1} [l=1] on
//       e_{n-1} + e_n; 4 gL(gL-1) l on 2e_n; zero otherwise.
//   cs: gS [l=1] on e_j; 2 gM(gM-1) l on e_j - e_k; a_n [l=1] on 2e_j; zero
//       otherwise.
Complex recurrence_coeff(Family f, const Root& alpha, int l, const Couplings& g,
                         int n);

// Product of <mu - 2xi, mu> over the mu > 0 with level(mu) <= N captured by
// the pole radius: |<mu - 2xi, mu>| < pole_radius * (1 + <mu, mu>).
Complex delta_u_product(const SpectralPoint& xi, int N, double pole_radius = 0.5);

// Solves <nu - 2xi, nu> a_nu = sum a^r_{alpha,l} a_{nu - l alpha} level by
// level with a_0 = 1.  With regularize set, the seed is the regularizer
// product so entries hold delta_u * a_nu and flagged denominators stay safe;
// without it, a denominator below tau_den * (1 + <nu,nu>) throws
// SpectralPlaneSingularity.
CoeffTable build_table(Family f, const SpectralPoint& xi, const Couplings& g,
                       int N, bool regularize = false,
                       const std::optional<TranslationTwist>& twist = {},
                       const Tolerances& tol = {});

// Largest relative defect of the recurrence identity over all entries.
double recurrence_defect(const CoeffTable& table);

struct SeriesValue {
  Complex value{0.0, 0.0};
  double tail_bound = 0.0;
  int levels_used = 0;
  bool tail_certified = false;  // geometric model certified on the shrunk chamber
};

// Sum over the truncated cone in increasing level order with compensated
// accumulation.  tail_bound is (S_{N-1} + S_N) / (1 - q) with q the ratio of
// the last two level sums clamped to 0.9; it is flagged certified only when
// x - rho/10 still lies in the bc chamber.
SeriesValue series_eval(const CoeffTable& table, const PositionPoint& x,
                        const Tolerances& tol = {});

// Same sum with the plane-wave prefactor split off:
// value = mantissa * exp(log_scale), log_scale = Re<xi, x>.
ScaledComplex series_eval_scaled(const CoeffTable& table, const PositionPoint& x,
                                 const Tolerances& tol = {});

// |phi(x) - e^{<xi,x>}| for purely imaginary xi.
double asymptotics_gap(const CoeffTable& table, const PositionPoint& x,
                       const Tolerances& tol = {});

}  // namespace hyperwave
