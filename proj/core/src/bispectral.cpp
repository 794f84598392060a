#include "hyperwave/bispectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>

namespace hyperwave {

namespace {

std::string complex_str(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

void check_size(const SignedIndexSet& J, int n) {
  if (J.indices.size() != J.signs.size()) {
    throw DimensionMismatch("bispectral", "signed_index_set", "indices and signs differ in length");
  }
  for (std::size_t i = 0; i < J.indices.size(); ++i) {
    if (J.indices[i] < 0 || J.indices[i] >= n) {
      throw PreconditionViolation("bispectral", "signed_index_set", "index out of range");
    }
    if (i > 0 && J.indices[i] <= J.indices[i - 1]) {
      throw PreconditionViolation("bispectral", "signed_index_set",
                                  "indices must strictly increase");
    }
    if (J.signs[i] != 1 && J.signs[i] != -1) {
      throw PreconditionViolation("bispectral", "signed_index_set", "signs must be +1 or -1");
    }
  }
}

// Enumerate p-element subsets of K in lexicographic order.
void for_each_subset(const std::vector<int>& K, int p,
                     const std::function<void(const std::vector<int>&)>& fn) {
  const int m = static_cast<int>(K.size());
  if (p > m) return;
  std::vector<int> pick(static_cast<std::size_t>(p));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == p) {
      fn(pick);
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[static_cast<std::size_t>(depth)] = K[static_cast<std::size_t>(i)];
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  if (p == 0) return;
}

}  // namespace

Complex v_factor(Family f, Complex z, const Couplings& g, double tau_int) {
  switch (f) {
    case Family::bc:
    case Family::cs:
      if (g.gM == Complex(0.0, 0.0)) return {1.0, 0.0};
      if (std::abs(z) <= tau_int) {
        throw RationalPole("bispectral", "v_factor", "argument " + complex_str(z) + " at the pole 0");
      }
      return 1.0 + g.gM / z;
    case Family::t:
      if (std::abs(z) <= tau_int) {
        throw RationalPole("bispectral", "v_factor", "argument " + complex_str(z) + " at the pole 0");
      }
      return 1.0 / z;
  }
  return {0.0, 0.0};
}

Complex w_factor(Family f, Complex z, const Couplings& g, double tau_int) {
  const Complex one_plus_2z = 1.0 + 2.0 * z;
  switch (f) {
    case Family::bc:
    case Family::t: {
      const Complex half_sum = 0.5 * g.gS + g.gL;
      Complex first{1.0, 0.0};
      if (half_sum != Complex(0.0, 0.0)) {
        if (std::abs(z) <= tau_int) {
          throw RationalPole("bispectral", "w_factor", "argument " + complex_str(z) + " at the pole 0");
        }
        first = 1.0 + half_sum / z;
      }
      Complex second{1.0, 0.0};
      if (g.gS != Complex(0.0, 0.0)) {
        if (std::abs(one_plus_2z) <= tau_int) {
          throw RationalPole("bispectral", "w_factor",
                             "argument " + complex_str(z) + " at the pole -1/2");
        }
        second = 1.0 + g.gS / one_plus_2z;
      }
      return first * second;
    }
    case Family::cs: {
      if (std::abs(z) <= tau_int) {
        throw RationalPole("bispectral", "w_factor", "argument " + complex_str(z) + " at the pole 0");
      }
      Complex inner{0.5, 0.0};
      if (g.gS != Complex(0.0, 0.0)) {
        if (std::abs(one_plus_2z) <= tau_int) {
          throw RationalPole("bispectral", "w_factor",
                             "argument " + complex_str(z) + " at the pole -1/2");
        }
        inner += g.gS / one_plus_2z;
      }
      return 0.5 / z * inner;
    }
  }
  return {0.0, 0.0};
}

Complex V_coeff(Family f, const SignedIndexSet& J, const SpectralPoint& xi,
                const Couplings& g, double tau_int) {
  const int n = xi.dim();
  check_size(J, n);
  Complex prod{1.0, 0.0};
  const std::size_t m = J.indices.size();
  std::vector<bool> in_J(static_cast<std::size_t>(n), false);
  for (int j : J.indices) in_J[static_cast<std::size_t>(j)] = true;
  for (std::size_t a = 0; a < m; ++a) {
    const Complex zj = static_cast<double>(J.signs[a]) * xi.xi[static_cast<std::size_t>(J.indices[a])];
    prod *= w_factor(f, zj, g, tau_int);
    for (int k = 0; k < n; ++k) {
      if (in_J[static_cast<std::size_t>(k)]) continue;
      prod *= v_factor(f, zj + xi.xi[static_cast<std::size_t>(k)], g, tau_int);
      prod *= v_factor(f, zj - xi.xi[static_cast<std::size_t>(k)], g, tau_int);
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const Complex za = static_cast<double>(J.signs[a]) * xi.xi[static_cast<std::size_t>(J.indices[a])];
      const Complex zb = static_cast<double>(J.signs[b]) * xi.xi[static_cast<std::size_t>(J.indices[b])];
      prod *= v_factor(f, za + zb, g, tau_int);
      prod *= v_factor(f, za + zb + 1.0, g, tau_int);
    }
  }
  return prod;
}

Complex U_coeff(Family f, const std::vector<int>& K, int p,
                const SpectralPoint& xi, const Couplings& g, double tau_int) {
  if (p < 0) throw PreconditionViolation("bispectral", "U_coeff", "p must be >= 0");
  if (p == 0) return {1.0, 0.0};
  if (p > static_cast<int>(K.size())) return {0.0, 0.0};
  CompensatedSum acc;
  for_each_subset(K, p, [&](const std::vector<int>& I) {
    std::vector<bool> in_I(xi.xi.size(), false);
    for (int i : I) in_I[static_cast<std::size_t>(i)] = true;
    const std::uint32_t sign_count = 1u << p;
    for (std::uint32_t mask = 0; mask < sign_count; ++mask) {
      Complex prod{1.0, 0.0};
      for (int a = 0; a < p; ++a) {
        const int i = I[static_cast<std::size_t>(a)];
        const double eps = (mask >> a) & 1u ? -1.0 : 1.0;
        const Complex zi = eps * xi.xi[static_cast<std::size_t>(i)];
        prod *= w_factor(f, zi, g, tau_int);
        for (int k : K) {
          if (in_I[static_cast<std::size_t>(k)]) continue;
          prod *= v_factor(f, zi + xi.xi[static_cast<std::size_t>(k)], g, tau_int);
          prod *= v_factor(f, zi - xi.xi[static_cast<std::size_t>(k)], g, tau_int);
        }
      }
      for (int a = 0; a < p; ++a) {
        for (int b = a + 1; b < p; ++b) {
          const double ea = (mask >> a) & 1u ? -1.0 : 1.0;
          const double eb = (mask >> b) & 1u ? -1.0 : 1.0;
          const Complex za = ea * xi.xi[static_cast<std::size_t>(I[static_cast<std::size_t>(a)])];
          const Complex zb = eb * xi.xi[static_cast<std::size_t>(I[static_cast<std::size_t>(b)])];
          prod *= v_factor(f, za + zb, g, tau_int);
          prod *= v_factor(f, -za - zb - 1.0, g, tau_int);
        }
      }
      acc.add(prod);
    }
  });
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;
  return sign * acc.result();
}

Complex E_eigenvalue(Family f, int ell, const PositionPoint& x) {
  const int n = x.dim();
  if (ell < 1 || ell > n) {
    throw PreconditionViolation("bispectral", "E_eigenvalue", "need 1 <= ell <= n");
  }
  switch (f) {
    case Family::bc:
    case Family::cs: {
      // Elementary symmetric polynomial of the per-coordinate builders.
      std::vector<Complex> vals(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        const double xj = x.x[static_cast<std::size_t>(j)];
        if (f == Family::bc) {
          const double s = std::sinh(xj / 2.0);
          vals[static_cast<std::size_t>(j)] = Complex(4.0 * s * s, 0.0);
        } else {
          vals[static_cast<std::size_t>(j)] = Complex(std::exp(xj), 0.0);
        }
      }
      std::vector<Complex> e(static_cast<std::size_t>(ell) + 1, Complex{0.0, 0.0});
      e[0] = Complex{1.0, 0.0};
      for (int j = 0; j < n; ++j) {
        for (int d = std::min(ell, j + 1); d >= 1; --d) {
          e[static_cast<std::size_t>(d)] += vals[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(d - 1)];
        }
      }
      return e[static_cast<std::size_t>(ell)];
    }
    case Family::t: {
      double sum = 0.0;
      for (int j = 0; j < ell; ++j) sum += x.x[static_cast<std::size_t>(j)];
      Complex value = std::exp(Complex(sum, 0.0));
      if (ell == n) {
        double head = 0.0;
        for (int j = 0; j + 1 < n; ++j) head += x.x[static_cast<std::size_t>(j)];
        value += std::exp(head) * (std::exp(-x.x[static_cast<std::size_t>(n - 1)]) - 2.0);
      }
      return value;
    }
  }
  return {0.0, 0.0};
}

namespace {

ScaledComplex shifted_wave(Family f, const SpectralPoint& xi, const SignedIndexSet& J,
                           const PositionPoint& x, const Couplings& g, int N,
                           const Tolerances& tol) {
  SpectralPoint shifted = xi;
  for (std::size_t a = 0; a < J.indices.size(); ++a) {
    shifted.xi[static_cast<std::size_t>(J.indices[a])] += static_cast<double>(J.signs[a]);
  }
  WaveOptions opt;
  opt.N = N;
  opt.tol = tol;
  return wavefunction_scaled(f, shifted, x, g, opt);
}

void for_each_signed_subset(
    int n, int max_size,
    const std::function<void(const SignedIndexSet&)>& fn) {
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  for (int size = 0; size <= max_size; ++size) {
    for_each_subset(all, size, [&](const std::vector<int>& J) {
      const std::uint32_t sign_count = 1u << size;
      for (std::uint32_t mask = 0; mask < sign_count; ++mask) {
        SignedIndexSet s;
        s.indices = J;
        s.signs.resize(static_cast<std::size_t>(size));
        for (int a = 0; a < size; ++a) {
          s.signs[static_cast<std::size_t>(a)] = (mask >> a) & 1u ? -1 : 1;
        }
        fn(s);
      }
    });
  }
}

}  // namespace

ScaledComplex difference_lhs(Family f, int ell, const SpectralPoint& xi,
                             const PositionPoint& x, const Couplings& g, int N,
                             DifferenceRoute route, const Tolerances& tol) {
  const int n = xi.dim();
  if (ell < 1 || ell > n) {
    throw PreconditionViolation("bispectral", "difference_lhs", "need 1 <= ell <= n");
  }
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;

  if (route == DifferenceRoute::general) {
    std::vector<ScaledComplex> terms;
    for_each_signed_subset(n, ell, [&](const SignedIndexSet& J) {
      std::vector<int> complement;
      std::vector<bool> in_J(static_cast<std::size_t>(n), false);
      for (int j : J.indices) in_J[static_cast<std::size_t>(j)] = true;
      for (int i = 0; i < n; ++i) {
        if (!in_J[static_cast<std::size_t>(i)]) complement.push_back(i);
      }
      const Complex uv = U_coeff(f, complement, ell - static_cast<int>(J.indices.size()),
                                 xi, g, tol.tau_int) *
                         V_coeff(f, J, xi, g, tol.tau_int);
      if (uv == Complex(0.0, 0.0)) return;
      const ScaledComplex phi = shifted_wave(f, xi, J, x, g, N, tol);
      terms.push_back({phi.mantissa * uv, phi.log_scale});
    });
    return scaled_sum(terms);
  }

  // Specialized order-1 and order-2 forms grouped over (Phi_shift - Phi).
  if (ell > 2) {
    throw PreconditionViolation("bispectral", "difference_lhs",
                                "specialized route covers ell <= 2 only");
  }
  const ScaledComplex phi0 = shifted_wave(f, xi, SignedIndexSet{}, x, g, N, tol);
  std::vector<ScaledComplex> terms;
  if (ell == 1) {
    for (int j = 0; j < n; ++j) {
      for (int eps : {1, -1}) {
        SignedIndexSet J{{j}, {eps}};
        const Complex V = V_coeff(f, J, xi, g, tol.tau_int);
        const ScaledComplex phi = shifted_wave(f, xi, J, x, g, N, tol);
        terms.push_back({phi.mantissa * V, phi.log_scale});
        terms.push_back({-phi0.mantissa * V, phi0.log_scale});
      }
    }
    return scaled_sum(terms);
  }
  for (int j = 0; j < n; ++j) {
    for (int jp = j + 1; jp < n; ++jp) {
      for (int eps : {1, -1}) {
        for (int epsp : {1, -1}) {
          SignedIndexSet J{{j, jp}, {eps, epsp}};
          const Complex V = V_coeff(f, J, xi, g, tol.tau_int);
          const ScaledComplex phi = shifted_wave(f, xi, J, x, g, N, tol);
          terms.push_back({phi.mantissa * V, phi.log_scale});
          terms.push_back({-phi0.mantissa * V, phi0.log_scale});
        }
      }
    }
  }
  // The second sum also runs over (Phi_shift - Phi); the difference term
  // vanishes identically for the t family, where sum_j U_1 V_{eps j} = 0.
  for (int j = 0; j < n; ++j) {
    std::vector<int> complement;
    for (int i = 0; i < n; ++i) {
      if (i != j) complement.push_back(i);
    }
    const Complex U1 = U_coeff(f, complement, 1, xi, g, tol.tau_int);
    for (int eps : {1, -1}) {
      SignedIndexSet J{{j}, {eps}};
      const Complex V = V_coeff(f, J, xi, g, tol.tau_int);
      const ScaledComplex phi = shifted_wave(f, xi, J, x, g, N, tol);
      terms.push_back({phi.mantissa * U1 * V, phi.log_scale});
      terms.push_back({-phi0.mantissa * U1 * V, phi0.log_scale});
    }
  }
  return scaled_sum(terms);
}

double difference_residual(Family f, int ell, const SpectralPoint& xi,
                           const PositionPoint& x, const Couplings& g, int N,
                           const Tolerances& tol) {
  const ScaledComplex lhs = difference_lhs(f, ell, xi, x, g, N, DifferenceRoute::general, tol);
  WaveOptions opt;
  opt.N = N;
  opt.tol = tol;
  const ScaledComplex phi = wavefunction_scaled(f, xi, x, g, opt);
  const Complex E = E_eigenvalue(f, ell, x);
  const ScaledComplex rhs{phi.mantissa * E, phi.log_scale};
  const ScaledComplex diff = scaled_sum({lhs, {-rhs.mantissa, rhs.log_scale}});
  return std::exp(diff.log_abs() - rhs.log_abs());
}

SpectralPoint screen_shift_targets(const SpectralPoint& xi, double pole_guard,
                                   std::uint64_t seed) {
  const int n = xi.dim();
  auto clear = [&](const SpectralPoint& p) {
    std::vector<int> shift(static_cast<std::size_t>(n), -1);
    for (;;) {
      SpectralPoint q = p;
      for (int i = 0; i < n; ++i) {
        q.xi[static_cast<std::size_t>(i)] += static_cast<double>(shift[static_cast<std::size_t>(i)]);
      }
      if (nearest_spectral_hyperplane(q).distance < pole_guard) return false;
      int i = 0;
      for (; i < n; ++i) {
        if (shift[static_cast<std::size_t>(i)] < 1) {
          ++shift[static_cast<std::size_t>(i)];
          break;
        }
        shift[static_cast<std::size_t>(i)] = -1;
      }
      if (i == n) return true;
    }
  };

  SpectralPoint out = xi;
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int attempt = 0; attempt < 100; ++attempt) {
    if (clear(out)) return out;
    std::vector<double> u(static_cast<std::size_t>(n));
    double norm = 0.0;
    for (double& v : u) {
      v = 2.0 * uniform() - 1.0;
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (int i = 0; i < n; ++i) {
      out.xi[static_cast<std::size_t>(i)] += 1e-3 * u[static_cast<std::size_t>(i)] / norm;
    }
  }
  throw NearSingularSpectral("bispectral", "screen_shift_targets",
                             "could not displace xi clear of the shift-target hyperplanes");
}

}  // namespace hyperwave
