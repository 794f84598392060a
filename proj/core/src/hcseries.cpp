#include "hyperwave/hcseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hyperwave {

namespace {

std::string composition_str(const Composition& nu) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < nu.dim(); ++i) os << (i ? "," : "") << nu.nu[static_cast<std::size_t>(i)];
  os << ")";
  return os.str();
}

long norm_sq(const Composition& nu) {
  long s = 0;
  for (int v : nu.nu) s += static_cast<long>(v) * v;
  return s;
}

void check_couplings(const Couplings& g, int n, const char* module) {
  if (static_cast<int>(g.a.size()) != n) {
    throw DimensionMismatch(module, "couplings",
                            "auxiliary vector has size " + std::to_string(g.a.size()) +
                                ", expected " + std::to_string(n));
  }
}

}  // namespace

Complex recurrence_coeff(Family f, const Root& alpha, int l, const Couplings& g,
                         int n) {
  if (l < 1) throw PreconditionViolation("hcseries", "recurrence_coeff", "l must be >= 1");
  check_couplings(g, n, "hcseries");
  const double ld = static_cast<double>(l);
  switch (f) {
    case Family::bc:
      switch (alpha.kind) {
        case Root::Kind::S: return g.gS * (g.gS + 2.0 * g.gL - 1.0) * ld;
        case Root::Kind::MPlus:
        case Root::Kind::MMinus: return 2.0 * g.gM * (g.gM - 1.0) * ld;
        case Root::Kind::L: return 4.0 * g.gL * (g.gL - 1.0) * ld;
      }
      break;
    case Family::t:
      switch (alpha.kind) {
        case Root::Kind::S:
          if (alpha.j == n - 1) return g.gS * (g.gS + 2.0 * g.gL - 1.0) * ld;
          return {0.0, 0.0};
        case Root::Kind::MMinus:
          if (alpha.k == alpha.j + 1 && l == 1) return g.a[static_cast<std::size_t>(alpha.j)];
          return {0.0, 0.0};
        case Root::Kind::MPlus:
          if (alpha.j == n - 2 && alpha.k == n - 1 && l == 1 && n >= 2) {
            return g.a[static_cast<std::size_t>(n - 2)];
          }
          return {0.0, 0.0};
        case Root::Kind::L:
          if (alpha.j == n - 1) return 4.0 * g.gL * (g.gL - 1.0) * ld;
          return {0.0, 0.0};
      }
      break;
    case Family::cs:
      switch (alpha.kind) {
        case Root::Kind::S: return l == 1 ? g.gS : Complex{0.0, 0.0};
        case Root::Kind::MMinus: return 2.0 * g.gM * (g.gM - 1.0) * ld;
        case Root::Kind::MPlus: return {0.0, 0.0};
        case Root::Kind::L: return l == 1 ? g.a[static_cast<std::size_t>(n - 1)] : Complex{0.0, 0.0};
      }
      break;
  }
  return {0.0, 0.0};
}

Complex delta_u_product(const SpectralPoint& xi, int N, double pole_radius) {
  const int n = xi.dim();
  auto lattice = Lattice::get(n, N);
  Complex prod{1.0, 0.0};
  for (int idx = 1; idx < lattice->size(); ++idx) {
    const auto& mu = lattice->composition(idx);
    const auto ns = static_cast<double>(norm_sq(mu));
    const Complex d = ns - 2.0 * dot(xi, mu.nu);
    if (std::abs(d) < pole_radius * (1.0 + ns)) prod *= d;
  }
  return prod;
}

CoeffTable build_table(Family f, const SpectralPoint& xi, const Couplings& g,
                       int N, bool regularize,
                       const std::optional<TranslationTwist>& twist,
                       const Tolerances& tol) {
  const int n = xi.dim();
  if (n < 1) throw DimensionMismatch("hcseries", "build_table", "xi is empty");
  check_couplings(g, n, "hcseries");

  CoeffTable table;
  table.family = f;
  table.xi = xi;
  table.g = g;
  table.N = N;
  table.regularized = regularize;
  table.twist = twist;
  table.lattice = Lattice::get(n, N);
  const Lattice& lat = *table.lattice;

  // One-step inputs per (root, l), with the optional exponential rescaling.
  const auto& roots = lat.roots();
  std::vector<std::vector<Complex>> coeff(roots.size());
  for (std::size_t r = 0; r < roots.size(); ++r) {
    const long step = lat.root_pairing_rho(static_cast<int>(r));
    if (step <= 0) continue;
    const long lmax = N / step;
    coeff[r].resize(static_cast<std::size_t>(lmax));
    double twist_pairing = 0.0;
    if (twist) {
      twist_pairing = static_cast<double>(twist->kind == DegenerationKind::M
                                              ? pairing_rho_M(roots[r], n)
                                              : pairing_rho_L(roots[r], n));
    }
    for (long l = 1; l <= lmax; ++l) {
      Complex c = recurrence_coeff(f, roots[r], static_cast<int>(l), g, n);
      if (twist && c != Complex(0.0, 0.0)) {
        c *= std::exp(-twist->c * static_cast<double>(l) * twist_pairing);
      }
      coeff[r][static_cast<std::size_t>(l - 1)] = c;
    }
  }

  table.delta_u = regularize ? delta_u_product(xi, N, tol.pole_radius) : Complex{1.0, 0.0};
  table.entries.assign(static_cast<std::size_t>(lat.size()), Complex{0.0, 0.0});
  table.entries[0] = regularize ? table.delta_u : Complex{1.0, 0.0};

  for (int idx = 1; idx < lat.size(); ++idx) {
    const auto& nu = lat.composition(idx);
    const auto ns = static_cast<double>(norm_sq(nu));
    const Complex d = ns - 2.0 * dot(xi, nu.nu);
    if (!regularize && std::abs(d) < tol.tau_den * (1.0 + ns)) {
      throw SpectralPlaneSingularity(
          "hcseries", "denominator at nu=" + composition_str(nu),
          "|<nu-2xi,nu>| under the guard; displace xi or regularize");
    }
    if (regularize && d == Complex(0.0, 0.0)) {
      throw SpectralPlaneSingularity(
          "hcseries", "denominator at nu=" + composition_str(nu),
          "exactly zero even for the regularized solve; displace xi");
    }
    CompensatedSum num;
    for (const auto* dsc = lat.descents_begin(idx); dsc != lat.descents_end(idx); ++dsc) {
      const Complex c = coeff[dsc->root][static_cast<std::size_t>(dsc->l - 1)];
      if (c == Complex(0.0, 0.0)) continue;
      num.add(c * table.entries[static_cast<std::size_t>(dsc->src)]);
    }
    table.entries[static_cast<std::size_t>(idx)] = num.result() / d;
  }
  return table;
}

Complex CoeffTable::at(const Composition& nu) const {
  if (!dominance_geq(nu)) return {0.0, 0.0};
  const long m = level(nu);
  if (m > N) {
    throw PreconditionViolation("hcseries", "CoeffTable::at",
                                "level " + std::to_string(m) + " exceeds truncation " +
                                    std::to_string(N));
  }
  const int idx = lattice->index_of(nu);
  if (idx < 0) return {0.0, 0.0};
  return entries[static_cast<std::size_t>(idx)];
}

double recurrence_defect(const CoeffTable& table) {
  const Lattice& lat = *table.lattice;
  const int n = lat.n();
  const auto& roots = lat.roots();
  std::vector<std::vector<Complex>> coeff(roots.size());
  for (std::size_t r = 0; r < roots.size(); ++r) {
    const long step = lat.root_pairing_rho(static_cast<int>(r));
    if (step <= 0) continue;
    const long lmax = table.N / step;
    coeff[r].resize(static_cast<std::size_t>(lmax));
    double twist_pairing = 0.0;
    if (table.twist) {
      twist_pairing = static_cast<double>(table.twist->kind == DegenerationKind::M
                                              ? pairing_rho_M(roots[r], n)
                                              : pairing_rho_L(roots[r], n));
    }
    for (long l = 1; l <= lmax; ++l) {
      Complex c = recurrence_coeff(table.family, roots[r], static_cast<int>(l), table.g, n);
      if (table.twist && c != Complex(0.0, 0.0)) {
        c *= std::exp(-table.twist->c * static_cast<double>(l) * twist_pairing);
      }
      coeff[r][static_cast<std::size_t>(l - 1)] = c;
    }
  }

  double worst = 0.0;
  for (int idx = 1; idx < lat.size(); ++idx) {
    const auto& nu = lat.composition(idx);
    const auto ns = static_cast<double>(norm_sq(nu));
    const Complex d = ns - 2.0 * dot(table.xi, nu.nu);
    // Plain sum in reversed edge order: an independent accumulation path.
    Complex num{0.0, 0.0};
    const auto* begin = lat.descents_begin(idx);
    const auto* end = lat.descents_end(idx);
    for (const auto* dsc = end; dsc != begin;) {
      --dsc;
      const Complex c = coeff[dsc->root][static_cast<std::size_t>(dsc->l - 1)];
      if (c == Complex(0.0, 0.0)) continue;
      num += c * table.entries[static_cast<std::size_t>(dsc->src)];
    }
    const Complex lhs = d * table.entries[static_cast<std::size_t>(idx)];
    const double scale = std::max(std::abs(lhs), std::abs(num));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(lhs - num) / scale);
  }
  return worst;
}

namespace {

struct LevelSums {
  Complex mantissa{0.0, 0.0};  // sum a_nu e^{-<nu,x>}
  double last = 0.0, prev = 0.0;  // |term| sums at levels N and N-1
};

LevelSums sum_levels(const CoeffTable& table, const PositionPoint& x) {
  const Lattice& lat = *table.lattice;
  CompensatedSum acc;
  double s_last = 0.0, s_prev = 0.0;
  for (long m = 0; m <= table.N; ++m) {
    double s_level = 0.0;
    const int hi = lat.level_begin(m + 1);
    for (int idx = lat.level_begin(m); idx < hi; ++idx) {
      const Complex a = table.entries[static_cast<std::size_t>(idx)];
      if (a == Complex(0.0, 0.0)) continue;
      const double damp = std::exp(-dot(lat.composition(idx).nu, x));
      const Complex term = a * damp;
      acc.add(term);
      s_level += std::abs(term);
    }
    if (m == table.N) {
      s_last = s_level;
    } else if (m == table.N - 1) {
      s_prev = s_level;
    }
  }
  return {acc.result(), s_last, s_prev};
}

double tail_estimate(const LevelSums& sums, int N) {
  const double head = sums.prev + sums.last;
  if (head == 0.0) return 0.0;
  double q = 0.9;
  if (N >= 1 && sums.prev > 0.0) q = std::min(sums.last / sums.prev, 0.9);
  return head / (1.0 - q);
}

}  // namespace

SeriesValue series_eval(const CoeffTable& table, const PositionPoint& x,
                        const Tolerances& tol) {
  if (x.dim() != table.lattice->n()) {
    throw DimensionMismatch("hcseries", "series_eval", "x size differs from table rank");
  }
  require_chamber(table.family, x, tol.tau_x, "hcseries");
  const LevelSums sums = sum_levels(table, x);
  const Complex plane = std::exp(dot(table.xi, x));

  SeriesValue out;
  out.value = plane * sums.mantissa;
  out.tail_bound = std::abs(plane) * tail_estimate(sums, table.N);
  out.levels_used = table.N + 1;
  PositionPoint shrunk = x;
  const auto rho = rho_vector(table.lattice->n());
  for (int j = 0; j < x.dim(); ++j) {
    shrunk.x[static_cast<std::size_t>(j)] -= 0.1 * static_cast<double>(rho[static_cast<std::size_t>(j)]);
  }
  out.tail_certified = in_chamber(Family::bc, shrunk, 0.0);
  return out;
}

ScaledComplex series_eval_scaled(const CoeffTable& table, const PositionPoint& x,
                                 const Tolerances& tol) {
  if (x.dim() != table.lattice->n()) {
    throw DimensionMismatch("hcseries", "series_eval_scaled", "x size differs from table rank");
  }
  require_chamber(table.family, x, tol.tau_x, "hcseries");
  const LevelSums sums = sum_levels(table, x);
  const Complex exponent = dot(table.xi, x);
  return {sums.mantissa * std::exp(Complex(0.0, exponent.imag())), exponent.real()};
}

double asymptotics_gap(const CoeffTable& table, const PositionPoint& x,
                       const Tolerances& tol) {
  for (const Complex& z : table.xi.xi) {
    if (std::abs(z.real()) > tol.tau_int) {
      throw PreconditionViolation("hcseries", "asymptotics_gap",
                                  "xi must be purely imaginary");
    }
  }
  require_chamber(table.family, x, tol.tau_x, "hcseries");
  const LevelSums sums = sum_levels(table, x);
  // |phi - delta_u e^{<xi,x>}| = |e^{<xi,x>}| |T - delta_u|, unit modulus here.
  return std::abs(sums.mantissa - table.delta_u);
}

}  // namespace hyperwave
