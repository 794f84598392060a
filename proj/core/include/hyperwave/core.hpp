#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hyperwave/errors.hpp"

namespace hyperwave {

using Complex = std::complex<double>;

// The three series families: hyperoctahedral hyperbolic model (bc), the
// boundary-perturbed open chain (t), and the Morse-confined model (cs).
enum class Family { bc, t, cs };

std::string_view family_name(Family f);
Family family_from_name(std::string_view s);

// Numerical guard values shared across the library.  Defaults are the pinned
// project-wide choices; individual entry points accept overrides.
struct Tolerances {
  double tau_int = 1e-9;     // integer-proximity window for regularity tests
  double tau_den = 1e-8;     // relative denominator guard, unregularized tables
  double tau_x = 1e-6;       // chamber interior margin
  double pole_guard = 1e-4;  // spectral hyperplane distance forcing extrapolation
  double pole_radius = 0.5;  // capture radius for the regularizer product
};

// Coupling data (gS, gM, gL) plus the auxiliary vector a_1..a_n.  The
// normalized convention fixes a_j = 2 for j < n and a_n = 1/4.
struct Couplings {
  Complex gS{0.0, 0.0};
  Complex gM{0.0, 0.0};
  Complex gL{0.0, 0.0};
  std::vector<Complex> a;

  static Couplings normalized(int n, Complex gS, Complex gM, Complex gL);
  static Couplings zero(int n);
};

struct SpectralPoint {
  std::vector<Complex> xi;
  int dim() const { return static_cast<int>(xi.size()); }
};

struct PositionPoint {
  std::vector<double> x;
  int dim() const { return static_cast<int>(x.size()); }
};

// --- spectral regularity ---------------------------------------------------

// Distance from a complex number to the nearest point of Z (or of Z_{>0}).
double dist_to_integers(Complex z);
double dist_to_positive_integers(Complex z);

// xi avoids 2xi_j in Z_{>0} and xi_j +/- xi_k in Z_{>0} (series domain).
bool is_regular_plus(const SpectralPoint& xi, double tau_int = 1e-9);
// xi avoids 2xi_j in Z and xi_j +/- xi_k in Z (orbit-sum domain).
bool is_regular(const SpectralPoint& xi, double tau_int = 1e-9);

struct HyperplaneHit {
  std::string form;  // human-readable linear form, e.g. "2*xi_1" or "xi_1-xi_2"
  double distance = 0.0;
};

// Nearest excluded hyperplane of the orbit-sum domain, measured in the value
// of the hyperplane's linear form.
HyperplaneHit nearest_spectral_hyperplane(const SpectralPoint& xi);

// --- chambers ----------------------------------------------------------------

// bc: x_1 > ... > x_n > 0;  t: x_n > 0;  cs: x_1 > ... > x_n.
bool in_chamber(Family f, const PositionPoint& x, double margin = 0.0);
void require_chamber(Family f, const PositionPoint& x, double margin,
                     const char* module);

// --- compositions and the dominance order -----------------------------------

struct Composition {
  std::vector<int> nu;
  int dim() const { return static_cast<int>(nu.size()); }
  bool operator==(const Composition& o) const { return nu == o.nu; }
};

// nu >= 0 iff all prefix sums nu_1 + ... + nu_k are nonnegative.
bool dominance_geq(const Composition& nu);
// level(nu) = <nu, rho> = sum of all prefix sums; rho_j = n + 1 - j.
long level(const Composition& nu);

// All nu >= 0 with level(nu) == m, generated coordinate-by-coordinate with
// prefix-sum pruning; deterministic lexicographic order in the prefix sums.
std::vector<Composition> enumerate_level(int n, long m);

// --- roots -------------------------------------------------------------------

struct Root {
  enum class Kind { S, MPlus, MMinus, L };
  Kind kind = Kind::S;
  int j = 0;  // 0-based
  int k = 0;  // 0-based, used by the M kinds only
  std::vector<int> vec(int n) const;
  std::string name() const;
};

// e_j; e_j + e_k and e_j - e_k for j < k; 2 e_j.
std::vector<Root> root_system(int n);
long pairing_rho(const Root& r, int n);    // <alpha, rho>
long pairing_rho_M(const Root& r, int n);  // <alpha, rho_M>, rho_M,j = n - j
long pairing_rho_L(const Root& r, int n);  // <alpha, rho_L>, rho_L,j = 1

std::vector<int> rho_vector(int n);    // (n, n-1, ..., 1)
std::vector<int> rho_M_vector(int n);  // (n-1, n-2, ..., 0)
std::vector<int> rho_L_vector(int n);  // (1, 1, ..., 1)

// --- the signed-permutation group ---------------------------------------------

// w acts by (w xi)_j = eps_j * xi_{sigma^{-1}(j)}; sigma maps source index to
// image index, stored 0-based.
struct SignedPermutation {
  std::vector<int> eps;    // +1 / -1 per target coordinate
  std::vector<int> sigma;  // sigma[i] = image of source coordinate i
};

SignedPermutation identity_element(int n);
SignedPermutation compose(const SignedPermutation& w1, const SignedPermutation& w2);
SpectralPoint act(const SignedPermutation& w, const SpectralPoint& xi);
// All 2^n n! elements in a fixed deterministic order.
std::vector<SignedPermutation> hyperoctahedral_group(int n);
std::string signed_permutation_name(const SignedPermutation& w);

// --- scaled complex arithmetic --------------------------------------------------

// value = mantissa * exp(log_scale); keeps orbit sums representable when the
// raw terms overflow or underflow.
struct ScaledComplex {
  Complex mantissa{0.0, 0.0};
  double log_scale = 0.0;

  Complex value() const;
  double log_abs() const;  // log |value|, -inf for zero mantissa
};

ScaledComplex scaled_from(Complex v);
ScaledComplex scaled_from_log(Complex log_value);  // exp(log_value), split
ScaledComplex scaled_mul(const ScaledComplex& a, const ScaledComplex& b);
// Deterministic left-to-right compensated sum under a common exponent.
ScaledComplex scaled_sum(const std::vector<ScaledComplex>& terms);

// Compensated (Kahan-Babuska) accumulator for complex terms.
struct CompensatedSum {
  double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
  void add(Complex v);
  Complex result() const { return {re + cre, im + cim}; }
};

// --- inner products -----------------------------------------------------------

Complex dot(const SpectralPoint& xi, const std::vector<int>& v);
Complex dot(const SpectralPoint& a, const SpectralPoint& b);
double dot(const std::vector<int>& v, const PositionPoint& x);
Complex dot(const SpectralPoint& xi, const PositionPoint& x);

// --- worker budget --------------------------------------------------------------

// Worker cap shared by parallel loops; 0 means "hardware concurrency".
// Reads HYPERWAVE_THREADS once at startup; set_thread_budget overrides.
int thread_budget();
void set_thread_budget(int n);

// Runs fn(i) for i in [0, count) on up to thread_budget() workers.  Results
// must be written to preallocated slots; reductions happen in index order
// afterwards, so outputs do not depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace hyperwave
