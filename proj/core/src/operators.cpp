#include "hyperwave/operators.hpp"

#include <cmath>

#include "hyperwave/special.hpp"
#include "hyperwave/wavefn.hpp"

namespace hyperwave {

namespace {

double inv_sinh_sq(double y) {
  const double s = std::sinh(y);
  return 1.0 / (s * s);
}

// sum_nu a_nu e^{-<nu,x>} and sum_nu a_nu e^{-<nu,x>} <xi-nu, xi-nu>.
struct SeriesParts {
  Complex plain{0.0, 0.0};
  Complex laplace{0.0, 0.0};
};

SeriesParts series_parts(const CoeffTable& table, const PositionPoint& x) {
  const Lattice& lat = *table.lattice;
  const int n = lat.n();
  CompensatedSum acc_plain, acc_lap;
  for (int idx = 0; idx < lat.size(); ++idx) {
    const Complex a = table.entries[static_cast<std::size_t>(idx)];
    if (a == Complex(0.0, 0.0)) continue;
    const auto& nu = lat.composition(idx).nu;
    const Complex term = a * std::exp(-dot(nu, x));
    Complex quad{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      const Complex d = table.xi.xi[static_cast<std::size_t>(j)] -
                        static_cast<double>(nu[static_cast<std::size_t>(j)]);
      quad += d * d;
    }
    acc_plain.add(term);
    acc_lap.add(term * quad);
  }
  return {acc_plain.result(), acc_lap.result()};
}

}  // namespace

Complex potential(Family f, const PositionPoint& x, const Couplings& g,
                  double tau_x) {
  const int n = x.dim();
  if (static_cast<int>(g.a.size()) != n) {
    throw DimensionMismatch("operators", "potential", "auxiliary vector size differs from n");
  }
  require_chamber(f, x, tau_x, "operators");
  const Complex qS = 0.25 * g.gS * (g.gS + 2.0 * g.gL - 1.0);
  const Complex qL = g.gL * (g.gL - 1.0);
  const Complex qM = 0.5 * g.gM * (g.gM - 1.0);
  Complex v{0.0, 0.0};
  switch (f) {
    case Family::bc:
      for (int j = 0; j < n; ++j) {
        v -= qS * inv_sinh_sq(x.x[static_cast<std::size_t>(j)] / 2.0);
        v -= qL * inv_sinh_sq(x.x[static_cast<std::size_t>(j)]);
      }
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          v -= qM * inv_sinh_sq((x.x[static_cast<std::size_t>(j)] + x.x[static_cast<std::size_t>(k)]) / 2.0);
          v -= qM * inv_sinh_sq((x.x[static_cast<std::size_t>(j)] - x.x[static_cast<std::size_t>(k)]) / 2.0);
        }
      }
      return v;
    case Family::t:
      for (int j = 0; j + 1 < n; ++j) {
        v -= g.a[static_cast<std::size_t>(j)] *
             std::exp(x.x[static_cast<std::size_t>(j + 1)] - x.x[static_cast<std::size_t>(j)]);
      }
      if (n >= 2) {
        v -= g.a[static_cast<std::size_t>(n - 2)] *
             std::exp(-x.x[static_cast<std::size_t>(n - 2)] - x.x[static_cast<std::size_t>(n - 1)]);
      }
      v -= qS * inv_sinh_sq(x.x[static_cast<std::size_t>(n - 1)] / 2.0);
      v -= qL * inv_sinh_sq(x.x[static_cast<std::size_t>(n - 1)]);
      return v;
    case Family::cs:
      for (int j = 0; j < n; ++j) {
        v -= g.gS * std::exp(-x.x[static_cast<std::size_t>(j)]);
        v -= g.a[static_cast<std::size_t>(n - 1)] * std::exp(-2.0 * x.x[static_cast<std::size_t>(j)]);
      }
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          v -= qM * inv_sinh_sq((x.x[static_cast<std::size_t>(j)] - x.x[static_cast<std::size_t>(k)]) / 2.0);
        }
      }
      return v;
  }
  return v;
}

Complex apply_L_to_series(Family f, const CoeffTable& table,
                          const PositionPoint& x, const Tolerances& tol) {
  require_chamber(f, x, tol.tau_x, "operators");
  const SeriesParts parts = series_parts(table, x);
  const Complex pot = potential(f, x, table.g, tol.tau_x);
  return std::exp(dot(table.xi, x)) * (parts.laplace + pot * parts.plain);
}

Complex apply_L_finite_difference(Family f, const CoeffTable& table,
                                  const PositionPoint& x, double h, int order,
                                  const Tolerances& tol) {
  if (order != 2 && order != 4) {
    throw PreconditionViolation("operators", "apply_L_finite_difference",
                                "stencil order must be 2 or 4");
  }
  const int n = x.dim();
  auto value_at = [&](const PositionPoint& p) {
    return series_eval(table, p, tol).value;
  };
  const Complex center = value_at(x);
  Complex second_sum{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    PositionPoint p = x;
    auto shifted = [&](double d) {
      p.x[static_cast<std::size_t>(j)] = x.x[static_cast<std::size_t>(j)] + d;
      return value_at(p);
    };
    if (order == 2) {
      second_sum += (shifted(h) - 2.0 * center + shifted(-h)) / (h * h);
    } else {
      second_sum += (-shifted(2.0 * h) + 16.0 * shifted(h) - 30.0 * center +
                     16.0 * shifted(-h) - shifted(-2.0 * h)) /
                    (12.0 * h * h);
    }
  }
  return second_sum + potential(f, x, table.g, tol.tau_x) * center;
}

double eigen_residual(Family f, const SpectralPoint& xi, const PositionPoint& x,
                      const Couplings& g, int N, bool use_wavefunction,
                      const Tolerances& tol) {
  const Complex lambda = dot(xi, xi);
  if (!use_wavefunction) {
    const CoeffTable table = build_table(f, xi, g, N, false, {}, tol);
    require_chamber(f, x, tol.tau_x, "operators");
    const SeriesParts parts = series_parts(table, x);
    const Complex pot = potential(f, x, g, tol.tau_x);
    const Complex defect = parts.laplace + (pot - lambda) * parts.plain;
    return std::abs(defect) / std::abs(parts.plain);
  }

  require_chamber(f, x, tol.tau_x, "operators");
  const Complex pot = potential(f, x, g, tol.tau_x);
  const auto group = hyperoctahedral_group(xi.dim());
  std::vector<ScaledComplex> defects(group.size());
  std::vector<ScaledComplex> values(group.size());
  parallel_for(group.size(), [&](std::size_t i) {
    const SpectralPoint wxi = act(group[i], xi);
    const CoeffTable table = build_table(f, wxi, g, N, false, {}, tol);
    const SeriesParts parts = series_parts(table, x);
    const CFunctionValue c = c_function(f, wxi, g, tol.tau_int);
    const Complex exponent = dot(wxi, x);
    const Complex phase = c.mantissa * std::exp(Complex(0.0, exponent.imag()));
    const double scale = c.log_scale + exponent.real();
    defects[i] = {phase * (parts.laplace + (pot - lambda) * parts.plain), scale};
    values[i] = {phase * parts.plain, scale};
  });
  const ScaledComplex defect = scaled_sum(defects);
  const ScaledComplex value = scaled_sum(values);
  return std::exp(defect.log_abs() - value.log_abs());
}

}  // namespace hyperwave
