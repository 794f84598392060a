#include "hyperwave/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hyperwave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogTwoPiHalf = 0.91893853320467274178;  // log(2*pi)/2

// Godfrey's rational kernel, g = 607/128, 15 terms; relative accuracy below
// 1e-13 throughout the right half plane.
constexpr double kLanczosG = 4.7421875;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048975669e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

bool near_nonpositive_integer(Complex z, double tau_int) {
  if (z.real() > 0.5) return false;
  const double m = std::round(z.real());
  if (m > 0.0) return false;
  return std::hypot(z.real() - m, z.imag()) <= tau_int;
}

Complex lanczos_log_gamma(Complex z) {
  // Requires Re z >= 1/2.
  Complex sum(kLanczos[0], 0.0);
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    sum += kLanczos[k] / (z + static_cast<double>(k - 1));
  }
  const Complex t = z + (kLanczosG - 0.5);
  return kLogTwoPiHalf + (z - 0.5) * std::log(t) - t + std::log(sum);
}

// Branch of log(sin(pi z)) on Im z >= 0 that makes
//   log Gamma(z) = log pi - log_sin_pi(z) - log Gamma(1-z)
// the principal branch:  i pi/2 - log 2 - i pi z + Log(1 - e^{2 pi i z}).
Complex log_sin_pi_upper(Complex z) {
  const Complex i(0.0, 1.0);
  const Complex q = std::exp(2.0 * kPi * i * z);  // |q| <= 1 on Im z >= 0
  return i * (kPi / 2.0) - std::log(2.0) - i * kPi * z + std::log(1.0 - q);
}

Complex log_gamma_impl(Complex z) {
  if (z.imag() < 0.0) return std::conj(log_gamma_impl(std::conj(z)));
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  return std::log(kPi) - log_sin_pi_upper(z) - log_gamma_impl(1.0 - z);
}

std::string complex_str(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// 1/Gamma(w) near a nonpositive integer, via sin(pi w) Gamma(1 - w) / pi.
Complex reciprocal_gamma_near_pole(Complex w) {
  return std::sin(kPi * w) * std::exp(log_gamma_impl(1.0 - w)) / kPi;
}

// Product of gamma factors kept as an exponent plus near-zero reciprocal
// multipliers, so single factors can vanish without killing the exponent sum.
struct LogProduct {
  Complex log_total{0.0, 0.0};
  Complex zero_mantissa{1.0, 0.0};
  bool has_zero = false;

  void numerator(Complex z, double tau_int, const char* object) {
    if (near_nonpositive_integer(z, tau_int)) {
      throw PoleOfGamma("special", object,
                        "gamma argument " + complex_str(z) + " at a nonpositive integer");
    }
    log_total += log_gamma_impl(z);
  }

  void denominator(Complex z, double tau_int, const char*) {
    if (near_nonpositive_integer(z, tau_int)) {
      has_zero = true;
      zero_mantissa *= reciprocal_gamma_near_pole(z);
      return;
    }
    log_total -= log_gamma_impl(z);
  }

  CFunctionValue finish() const {
    CFunctionValue v;
    v.log_scale = log_total.real();
    v.mantissa = zero_mantissa * std::exp(Complex(0.0, log_total.imag()));
    return v;
  }
};

void append_c_w(LogProduct& p, Family f, Complex z, const Couplings& g,
                double tau_int, const char* object) {
  switch (f) {
    case Family::bc:
    case Family::t:
      p.numerator(2.0 * z, tau_int, object);
      p.numerator(0.5 * g.gS + z, tau_int, object);
      p.denominator(g.gS + 2.0 * z, tau_int, object);
      p.denominator(0.5 * g.gS + g.gL + z, tau_int, object);
      break;
    case Family::cs:
      p.numerator(2.0 * z, tau_int, object);
      p.denominator(0.5 + g.gS + z, tau_int, object);
      break;
  }
}

void append_c_v(LogProduct& p, Family f, Complex z, const Couplings& g,
                double tau_int, const char* object) {
  switch (f) {
    case Family::bc:
    case Family::cs:
      if (g.gM == Complex(0.0, 0.0)) return;  // Gamma(z)/Gamma(z)
      p.numerator(z, tau_int, object);
      p.denominator(g.gM + z, tau_int, object);
      break;
    case Family::t:
      p.numerator(z, tau_int, object);
      break;
  }
}

}  // namespace

Complex log_gamma(Complex z, double tau_int) {
  if (near_nonpositive_integer(z, tau_int)) {
    throw PoleOfGamma("special", "log_gamma",
                      "argument " + complex_str(z) + " at a nonpositive integer");
  }
  return log_gamma_impl(z);
}

bool try_log_gamma(Complex z, Complex& out, double tau_int) {
  if (near_nonpositive_integer(z, tau_int)) return false;
  out = log_gamma_impl(z);
  return true;
}

Complex c_factor(Family f, CKind kind, Complex z, const Couplings& g,
                 double tau_int) {
  LogProduct p;
  if (kind == CKind::v) {
    append_c_v(p, f, z, g, tau_int, "c_factor(v)");
  } else {
    append_c_w(p, f, z, g, tau_int, "c_factor(w)");
  }
  const CFunctionValue v = p.finish();
  return v.value();
}

Complex CFunctionValue::value() const { return mantissa * std::exp(log_scale); }

CFunctionValue c_function(Family f, const SpectralPoint& xi, const Couplings& g,
                          double tau_int) {
  const int n = xi.dim();
  LogProduct p;
  for (int j = 0; j < n; ++j) {
    append_c_w(p, f, xi.xi[static_cast<std::size_t>(j)], g, tau_int, "c_function");
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      append_c_v(p, f, xi.xi[static_cast<std::size_t>(j)] + xi.xi[static_cast<std::size_t>(k)], g,
                 tau_int, "c_function");
      append_c_v(p, f, xi.xi[static_cast<std::size_t>(j)] - xi.xi[static_cast<std::size_t>(k)], g,
                 tau_int, "c_function");
    }
  }
  return p.finish();
}

Complex log_c_function(Family f, const SpectralPoint& xi, const Couplings& g,
                       double tau_int) {
  const int n = xi.dim();
  LogProduct p;
  for (int j = 0; j < n; ++j) {
    append_c_w(p, f, xi.xi[static_cast<std::size_t>(j)], g, tau_int, "log_c_function");
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      append_c_v(p, f, xi.xi[static_cast<std::size_t>(j)] + xi.xi[static_cast<std::size_t>(k)], g,
                 tau_int, "log_c_function");
      append_c_v(p, f, xi.xi[static_cast<std::size_t>(j)] - xi.xi[static_cast<std::size_t>(k)], g,
                 tau_int, "log_c_function");
    }
  }
  if (p.has_zero) {
    throw PoleOfGamma("special", "log_c_function",
                      "reciprocal gamma factor at a pole; logarithm undefined");
  }
  return p.log_total;
}

Complex log_confluence_prefactor(DegenerationKind k, const Couplings& g, int n,
                                 double tau_int) {
  if (k == DegenerationKind::M) {
    return static_cast<double>(n) * static_cast<double>(n - 1) *
           log_gamma(g.gM, tau_int);
  }
  const Complex lg = log_gamma(g.gS, tau_int) + log_gamma(0.5 * g.gS + g.gL, tau_int) -
                     log_gamma(0.5 * g.gS, tau_int) -
                     log_gamma(0.5 * (1.0 + g.gS), tau_int);
  return static_cast<double>(n) * lg;
}

Complex confluence_prefactor(DegenerationKind k, const Couplings& g, int n,
                             double tau_int) {
  return std::exp(log_confluence_prefactor(k, g, n, tau_int));
}

std::pair<Complex, std::vector<Complex>> weight_and_rho(const PositionPoint& x,
                                                        const Couplings& g,
                                                        double tau_x) {
  const int n = x.dim();
  require_chamber(Family::bc, x, tau_x, "special");
  Complex log_delta{0.0, 0.0};
  auto base_log = [](double y) { return std::log(2.0 * std::sinh(y / 2.0)); };
  for (int j = 0; j < n; ++j) {
    log_delta += g.gS * base_log(x.x[static_cast<std::size_t>(j)]);
    log_delta += g.gL * base_log(2.0 * x.x[static_cast<std::size_t>(j)]);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      log_delta += g.gM * base_log(x.x[static_cast<std::size_t>(j)] + x.x[static_cast<std::size_t>(k)]);
      log_delta += g.gM * base_log(x.x[static_cast<std::size_t>(j)] - x.x[static_cast<std::size_t>(k)]);
    }
  }
  std::vector<Complex> rho_g(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    rho_g[static_cast<std::size_t>(j)] =
        static_cast<double>(n - 1 - j) * g.gM + 0.5 * g.gS + g.gL;
  }
  return {std::exp(log_delta), rho_g};
}

}  // namespace hyperwave
