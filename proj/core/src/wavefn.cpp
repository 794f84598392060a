#include "hyperwave/wavefn.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace hyperwave {

namespace {

void guard_spectral(const SpectralPoint& xi, double pole_guard, const char* object) {
  const HyperplaneHit hit = nearest_spectral_hyperplane(xi);
  if (hit.distance < pole_guard) {
    std::ostringstream os;
    os << hit.form << " within " << hit.distance << " of an integer (guard " << pole_guard
       << "); use the extrapolated evaluator";
    throw NearSingularSpectral("wavefn", object, os.str());
  }
}

std::vector<int> rho_K_vector(DegenerationKind k, int n) {
  return k == DegenerationKind::M ? rho_M_vector(n) : rho_L_vector(n);
}

}  // namespace

std::vector<WaveTerm> wavefunction_terms(Family f, const SpectralPoint& xi,
                                         const PositionPoint& x, const Couplings& g,
                                         const WaveOptions& opt) {
  const int n = xi.dim();
  if (x.dim() != n) {
    throw DimensionMismatch("wavefn", "wavefunction", "x and xi sizes differ");
  }
  if (opt.guard_spectrum) guard_spectral(xi, opt.tol.pole_guard, "wavefunction");
  require_chamber(f, x, opt.tol.tau_x, "wavefn");

  const auto group = hyperoctahedral_group(n);
  std::vector<WaveTerm> terms(group.size());
  std::vector<int> rho_K;
  if (opt.twist) rho_K = rho_K_vector(opt.twist->kind, n);

  parallel_for(group.size(), [&](std::size_t i) {
    WaveTerm& t = terms[i];
    t.w = group[i];
    const SpectralPoint wxi = act(t.w, xi);
    const CoeffTable table = build_table(f, wxi, g, opt.N, false, opt.twist, opt.tol);
    t.series = series_eval_scaled(table, x, opt.tol);
    t.weight = c_function(f, wxi, g, opt.tol.tau_int);
    ScaledComplex weight_scaled{t.weight.mantissa, t.weight.log_scale};
    if (opt.twist) {
      // The rescaled-input series equals e^{-c <w xi, rho_K>} phi(x + c rho_K),
      // so the translated orbit term carries the inverse factor.
      const Complex shift = opt.twist->c * dot(wxi, rho_K);
      weight_scaled.log_scale += shift.real();
      weight_scaled.mantissa *= std::exp(Complex(0.0, shift.imag()));
    }
    t.term = scaled_mul(weight_scaled, t.series);
  });
  return terms;
}

ScaledComplex wavefunction_scaled(Family f, const SpectralPoint& xi,
                                  const PositionPoint& x, const Couplings& g,
                                  const WaveOptions& opt) {
  const auto terms = wavefunction_terms(f, xi, x, g, opt);
  std::vector<ScaledComplex> parts;
  parts.reserve(terms.size());
  for (const auto& t : terms) parts.push_back(t.term);
  return scaled_sum(parts);
}

Complex wavefunction(Family f, const SpectralPoint& xi, const PositionPoint& x,
                     const Couplings& g, int N, const Tolerances& tol) {
  WaveOptions opt;
  opt.N = N;
  opt.tol = tol;
  return wavefunction_scaled(f, xi, x, g, opt).value();
}

RegularizedValue wavefunction_regular(Family f, const SpectralPoint& xi0,
                                      const PositionPoint& x, const Couplings& g,
                                      int N, std::span<const double> offsets,
                                      std::uint64_t seed, const Tolerances& tol) {
  const int n = xi0.dim();
  if (offsets.size() < 2) {
    throw PreconditionViolation("wavefn", "wavefunction_regular",
                                "need at least two displacement magnitudes");
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) {
    if (!(offsets[i] < offsets[i - 1]) || !(offsets[i] > 0.0)) {
      throw PreconditionViolation("wavefn", "wavefunction_regular",
                                  "offsets must decrease and stay positive");
    }
  }

  // Platform-stable uniform doubles; normalized random real direction.
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  std::vector<double> u(static_cast<std::size_t>(n));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& v : u) {
      v = 2.0 * uniform() - 1.0;
      norm += v * v;
    }
    norm = std::sqrt(norm);
  } while (norm < 1e-3);
  for (double& v : u) v /= norm;

  WaveOptions opt;
  opt.N = N;
  opt.tol = tol;
  opt.guard_spectrum = false;

  RegularizedValue out;
  out.offsets.assign(offsets.begin(), offsets.end());
  out.direction = u;
  out.samples.resize(offsets.size());
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    SpectralPoint xi = xi0;
    for (int j = 0; j < n; ++j) {
      xi.xi[static_cast<std::size_t>(j)] += offsets[i] * u[static_cast<std::size_t>(j)];
    }
    out.samples[i] = wavefunction_scaled(f, xi, x, g, opt).value();
  }

  const double first = std::abs(out.samples.front());
  const double last = std::abs(out.samples.back());
  const double pole_model = offsets.front() / offsets.back();
  if (first > 0.0 && last / first > 10.0 && last / first > 0.3 * pole_model) {
    std::ostringstream os;
    os << "samples grow by " << last / first << " while offsets shrink by " << pole_model
       << "; orbit sum does not cancel the pole";
    throw ExtrapolationDivergence("wavefn", "wavefunction_regular", os.str());
  }

  // Neville tableau evaluated at zero displacement.
  std::vector<Complex> p(out.samples.begin(), out.samples.end());
  Complex previous_order = p[0];
  const std::size_t m = p.size();
  for (std::size_t j = 1; j < m; ++j) {
    // Entering the last stage, p[1] extrapolates the smallest offsets only.
    if (j == m - 1) previous_order = p[1];
    for (std::size_t i = 0; i + j < m; ++i) {
      const double di = offsets[i];
      const double dij = offsets[i + j];
      p[i] = (dij * p[i] - di * p[i + 1]) / (dij - di);
    }
  }
  out.value = p[0];
  out.error_estimate = std::abs(p[0] - previous_order);
  return out;
}

}  // namespace hyperwave
