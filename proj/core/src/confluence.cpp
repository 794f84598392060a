#include "hyperwave/confluence.hpp"

#include <cmath>

#include "hyperwave/special.hpp"

namespace hyperwave {

Couplings coupling_path(DegenerationKind k, const Couplings& g, double c) {
  Couplings out = g;
  switch (k) {
    case DegenerationKind::M:
      out.gM = Complex(0.5 * (1.0 + std::sqrt(1.0 + 4.0 * std::exp(c))), 0.0);
      break;
    case DegenerationKind::L:
      out.gS = 2.0 * g.gS;
      out.gL = Complex(0.5 * (1.0 + std::sqrt(1.0 + std::exp(2.0 * c) / 4.0)), 0.0);
      break;
  }
  return out;
}

Family degeneration_target(DegenerationKind k) {
  return k == DegenerationKind::M ? Family::t : Family::cs;
}

namespace {

std::vector<int> rho_K(DegenerationKind k, int n) {
  return k == DegenerationKind::M ? rho_M_vector(n) : rho_L_vector(n);
}

}  // namespace

double series_confluence_error(DegenerationKind k, const SpectralPoint& xi,
                               const PositionPoint& x, const Couplings& g,
                               double c, int N, const Tolerances& tol) {
  const Couplings g_c = coupling_path(k, g, c);
  const Family target = degeneration_target(k);
  const TranslationTwist twist{k, c};
  const CoeffTable left = build_table(Family::bc, xi, g_c, N, true, twist, tol);
  const CoeffTable right = build_table(target, xi, g, N, true, std::nullopt, tol);
  const SeriesValue lv = series_eval(left, x, tol);
  const SeriesValue rv = series_eval(right, x, tol);
  return std::abs(lv.value - rv.value);
}

double coefficient_confluence_error(DegenerationKind k, const SpectralPoint& xi,
                                    const Couplings& g, double c, int N,
                                    int level_cap, const Tolerances& tol) {
  if (level_cap > N) {
    throw PreconditionViolation("confluence", "coefficient_confluence_error",
                                "level_cap exceeds table depth");
  }
  const Couplings g_c = coupling_path(k, g, c);
  const Family target = degeneration_target(k);
  const TranslationTwist twist{k, c};
  const CoeffTable left = build_table(Family::bc, xi, g_c, N, true, twist, tol);
  const CoeffTable right = build_table(target, xi, g, N, true, std::nullopt, tol);
  const auto& lattice = *left.lattice;
  const std::size_t stop = static_cast<std::size_t>(lattice.level_begin(level_cap + 1));
  double worst = 0.0;
  for (std::size_t i = 0; i < stop; ++i) {
    const double gap = std::abs(left.entries[i] - right.entries[i]);
    const double scale = std::max(1.0, std::abs(right.entries[i]));
    worst = std::max(worst, gap / scale);
  }
  return worst;
}

double wavefunction_confluence_error(DegenerationKind k, const SpectralPoint& xi,
                                     const PositionPoint& x, const Couplings& g,
                                     double c, int N, const Tolerances& tol) {
  const Couplings g_c = coupling_path(k, g, c);
  const Family target = degeneration_target(k);

  WaveOptions left_opt;
  left_opt.N = N;
  left_opt.tol = tol;
  left_opt.twist = TranslationTwist{k, c};
  ScaledComplex left = wavefunction_scaled(Family::bc, xi, x, g_c, left_opt);
  const Complex log_gamma_k = log_confluence_prefactor(k, g_c, xi.dim(), tol.tau_int);
  left = scaled_mul(left, scaled_from_log(log_gamma_k));

  WaveOptions right_opt;
  right_opt.N = N;
  right_opt.tol = tol;
  const ScaledComplex right = wavefunction_scaled(target, xi, x, g, right_opt);

  const ScaledComplex diff = scaled_sum({left, {-right.mantissa, right.log_scale}});
  return std::exp(diff.log_abs() - right.log_abs());
}

double prefactor_limit_error(DegenerationKind k, const SpectralPoint& xi,
                             const Couplings& g, double c, double tau_int) {
  const Couplings g_c = coupling_path(k, g, c);
  const Family target = degeneration_target(k);
  const int n = xi.dim();
  const std::vector<int> rho = rho_K(k, n);
  Complex shift{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    shift += xi.xi[static_cast<std::size_t>(j)] * c * static_cast<double>(rho[static_cast<std::size_t>(j)]);
  }
  const Complex left_log = log_confluence_prefactor(k, g_c, n, tau_int) + shift +
                           log_c_function(Family::bc, xi, g_c, tau_int);
  const Complex right_log = log_c_function(target, xi, g, tau_int);
  return std::abs(std::exp(left_log - right_log) - 1.0);
}

}  // namespace hyperwave
