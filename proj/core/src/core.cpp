#include "hyperwave/core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace hyperwave {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::bc: return "bc";
    case Family::t: return "t";
    case Family::cs: return "cs";
  }
  return "?";
}

Family family_from_name(std::string_view s) {
  if (s == "bc") return Family::bc;
  if (s == "t") return Family::t;
  if (s == "cs") return Family::cs;
  throw PreconditionViolation("core", "family", "unknown family name '" + std::string(s) + "'");
}

Couplings Couplings::normalized(int n, Complex gS, Complex gM, Complex gL) {
  if (n < 1) throw DimensionMismatch("core", "couplings", "n must be >= 1");
  Couplings g;
  g.gS = gS;
  g.gM = gM;
  g.gL = gL;
  g.a.assign(static_cast<std::size_t>(n), Complex(2.0, 0.0));
  g.a.back() = Complex(0.25, 0.0);
  return g;
}

Couplings Couplings::zero(int n) {
  Couplings g = normalized(n, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
  std::fill(g.a.begin(), g.a.end(), Complex(0.0, 0.0));
  return g;
}

// --- spectral regularity ---------------------------------------------------

double dist_to_integers(Complex z) {
  double m = std::round(z.real());
  return std::hypot(z.real() - m, z.imag());
}

double dist_to_positive_integers(Complex z) {
  double m = std::round(z.real());
  if (m < 1.0) m = 1.0;
  return std::hypot(z.real() - m, z.imag());
}

bool is_regular_plus(const SpectralPoint& xi, double tau_int) {
  const int n = xi.dim();
  for (int j = 0; j < n; ++j) {
    if (dist_to_positive_integers(2.0 * xi.xi[j]) <= tau_int) return false;
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (dist_to_positive_integers(xi.xi[j] + xi.xi[k]) <= tau_int) return false;
      if (dist_to_positive_integers(xi.xi[j] - xi.xi[k]) <= tau_int) return false;
    }
  }
  return true;
}

bool is_regular(const SpectralPoint& xi, double tau_int) {
  const int n = xi.dim();
  for (int j = 0; j < n; ++j) {
    if (dist_to_integers(2.0 * xi.xi[j]) <= tau_int) return false;
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (dist_to_integers(xi.xi[j] + xi.xi[k]) <= tau_int) return false;
      if (dist_to_integers(xi.xi[j] - xi.xi[k]) <= tau_int) return false;
    }
  }
  return true;
}

HyperplaneHit nearest_spectral_hyperplane(const SpectralPoint& xi) {
  const int n = xi.dim();
  HyperplaneHit best{"", std::numeric_limits<double>::infinity()};
  auto consider = [&best](double d, std::string form) {
    if (d < best.distance) {
      best.distance = d;
      best.form = std::move(form);
    }
  };
  for (int j = 0; j < n; ++j) {
    consider(dist_to_integers(2.0 * xi.xi[j]), "2*xi_" + std::to_string(j + 1));
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      consider(dist_to_integers(xi.xi[j] + xi.xi[k]),
               "xi_" + std::to_string(j + 1) + "+xi_" + std::to_string(k + 1));
      consider(dist_to_integers(xi.xi[j] - xi.xi[k]),
               "xi_" + std::to_string(j + 1) + "-xi_" + std::to_string(k + 1));
    }
  }
  return best;
}

// --- chambers ----------------------------------------------------------------

bool in_chamber(Family f, const PositionPoint& x, double margin) {
  const int n = x.dim();
  if (n == 0) return false;
  switch (f) {
    case Family::bc:
      for (int j = 0; j + 1 < n; ++j) {
        if (!(x.x[j] - x.x[j + 1] > margin)) return false;
      }
      return x.x[n - 1] > margin;
    case Family::t:
      return x.x[n - 1] > margin;
    case Family::cs:
      for (int j = 0; j + 1 < n; ++j) {
        if (!(x.x[j] - x.x[j + 1] > margin)) return false;
      }
      return true;
  }
  return false;
}

void require_chamber(Family f, const PositionPoint& x, double margin,
                     const char* module) {
  if (!in_chamber(f, x, margin)) {
    std::ostringstream os;
    os << "x = (";
    for (int j = 0; j < x.dim(); ++j) os << (j ? "," : "") << x.x[j];
    os << ") not interior to the " << family_name(f) << " chamber (margin " << margin << ")";
    throw ChamberViolation(module, "chamber", os.str());
  }
}

// --- compositions -------------------------------------------------------------

bool dominance_geq(const Composition& nu) {
  long s = 0;
  for (int v : nu.nu) {
    s += v;
    if (s < 0) return false;
  }
  return true;
}

long level(const Composition& nu) {
  long s = 0, total = 0;
  for (int v : nu.nu) {
    s += v;
    total += s;
  }
  return total;
}

namespace {

void enumerate_prefix(int n, long remaining, std::vector<int>& s,
                      std::vector<Composition>& out) {
  const int depth = static_cast<int>(s.size());
  if (depth == n - 1) {
    s.push_back(static_cast<int>(remaining));
    Composition c;
    c.nu.resize(static_cast<std::size_t>(n));
    int prev = 0;
    for (int i = 0; i < n; ++i) {
      c.nu[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)] - prev;
      prev = s[static_cast<std::size_t>(i)];
    }
    out.push_back(std::move(c));
    s.pop_back();
    return;
  }
  for (long v = 0; v <= remaining; ++v) {
    s.push_back(static_cast<int>(v));
    enumerate_prefix(n, remaining - v, s, out);
    s.pop_back();
  }
}

}  // namespace

std::vector<Composition> enumerate_level(int n, long m) {
  if (n < 1) throw DimensionMismatch("core", "enumerate_level", "n must be >= 1");
  if (m < 0) return {};
  // Bijection: nu >= 0 of level m <-> prefix-sum vectors s in Z_{>=0}^n with
  // sum(s) = m, via s_k = nu_1 + ... + nu_k.
  std::vector<Composition> out;
  std::vector<int> s;
  enumerate_prefix(n, m, s, out);
  return out;
}

// --- roots ---------------------------------------------------------------------

std::vector<int> Root::vec(int n) const {
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  switch (kind) {
    case Kind::S: v[static_cast<std::size_t>(j)] = 1; break;
    case Kind::MPlus:
      v[static_cast<std::size_t>(j)] = 1;
      v[static_cast<std::size_t>(k)] = 1;
      break;
    case Kind::MMinus:
      v[static_cast<std::size_t>(j)] = 1;
      v[static_cast<std::size_t>(k)] = -1;
      break;
    case Kind::L: v[static_cast<std::size_t>(j)] = 2; break;
  }
  return v;
}

std::string Root::name() const {
  switch (kind) {
    case Kind::S: return "e_" + std::to_string(j + 1);
    case Kind::MPlus:
      return "e_" + std::to_string(j + 1) + "+e_" + std::to_string(k + 1);
    case Kind::MMinus:
      return "e_" + std::to_string(j + 1) + "-e_" + std::to_string(k + 1);
    case Kind::L: return "2e_" + std::to_string(j + 1);
  }
  return "?";
}

std::vector<Root> root_system(int n) {
  std::vector<Root> roots;
  for (int j = 0; j < n; ++j) roots.push_back({Root::Kind::S, j, 0});
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) roots.push_back({Root::Kind::MPlus, j, k});
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) roots.push_back({Root::Kind::MMinus, j, k});
  for (int j = 0; j < n; ++j) roots.push_back({Root::Kind::L, j, 0});
  return roots;
}

namespace {
long pair_with(const Root& r, const std::vector<int>& w) {
  switch (r.kind) {
    case Root::Kind::S: return w[static_cast<std::size_t>(r.j)];
    case Root::Kind::MPlus:
      return w[static_cast<std::size_t>(r.j)] + w[static_cast<std::size_t>(r.k)];
    case Root::Kind::MMinus:
      return w[static_cast<std::size_t>(r.j)] - w[static_cast<std::size_t>(r.k)];
    case Root::Kind::L: return 2L * w[static_cast<std::size_t>(r.j)];
  }
  return 0;
}
}  // namespace

long pairing_rho(const Root& r, int n) { return pair_with(r, rho_vector(n)); }
long pairing_rho_M(const Root& r, int n) { return pair_with(r, rho_M_vector(n)); }
long pairing_rho_L(const Root& r, int n) { return pair_with(r, rho_L_vector(n)); }

std::vector<int> rho_vector(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = n - j;
  return v;
}

std::vector<int> rho_M_vector(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = n - 1 - j;
  return v;
}

std::vector<int> rho_L_vector(int n) {
  return std::vector<int>(static_cast<std::size_t>(n), 1);
}

// --- signed permutations ---------------------------------------------------------

SignedPermutation identity_element(int n) {
  SignedPermutation w;
  w.eps.assign(static_cast<std::size_t>(n), 1);
  w.sigma.resize(static_cast<std::size_t>(n));
  std::iota(w.sigma.begin(), w.sigma.end(), 0);
  return w;
}

SpectralPoint act(const SignedPermutation& w, const SpectralPoint& xi) {
  const int n = xi.dim();
  if (static_cast<int>(w.sigma.size()) != n || static_cast<int>(w.eps.size()) != n) {
    throw DimensionMismatch("core", "signed_permutation", "element size differs from point size");
  }
  SpectralPoint out;
  out.xi.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int image = w.sigma[static_cast<std::size_t>(i)];
    out.xi[static_cast<std::size_t>(image)] =
        static_cast<double>(w.eps[static_cast<std::size_t>(image)]) * xi.xi[static_cast<std::size_t>(i)];
  }
  return out;
}

SignedPermutation compose(const SignedPermutation& w1, const SignedPermutation& w2) {
  // (w1 w2) xi = w1 (w2 xi)
  const int n = static_cast<int>(w1.sigma.size());
  if (w2.sigma.size() != w1.sigma.size()) {
    throw DimensionMismatch("core", "signed_permutation", "composition size mismatch");
  }
  SignedPermutation w;
  w.sigma.resize(static_cast<std::size_t>(n));
  w.eps.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int mid = w2.sigma[static_cast<std::size_t>(i)];
    const int fin = w1.sigma[static_cast<std::size_t>(mid)];
    w.sigma[static_cast<std::size_t>(i)] = fin;
    w.eps[static_cast<std::size_t>(fin)] =
        w1.eps[static_cast<std::size_t>(fin)] * w2.eps[static_cast<std::size_t>(mid)];
  }
  return w;
}

std::vector<SignedPermutation> hyperoctahedral_group(int n) {
  std::vector<SignedPermutation> out;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  const std::uint32_t sign_count = 1u << n;
  do {
    for (std::uint32_t mask = 0; mask < sign_count; ++mask) {
      SignedPermutation w;
      w.sigma = perm;
      w.eps.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        w.eps[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? -1 : 1;
      }
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::string signed_permutation_name(const SignedPermutation& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.sigma.size(); ++i) {
    if (i) os << ",";
    os << (w.eps[static_cast<std::size_t>(w.sigma[i])] < 0 ? "-" : "+") << (w.sigma[i] + 1);
  }
  os << ")";
  return os.str();
}

// --- scaled arithmetic -------------------------------------------------------------

Complex ScaledComplex::value() const { return mantissa * std::exp(log_scale); }

double ScaledComplex::log_abs() const {
  const double m = std::abs(mantissa);
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(m) + log_scale;
}

ScaledComplex scaled_from(Complex v) {
  if (v == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), 0.0};
  const double m = std::abs(v);
  const double s = std::log(m);
  return {v / m, s};
}

ScaledComplex scaled_from_log(Complex log_value) {
  return {std::exp(Complex(0.0, log_value.imag())), log_value.real()};
}

ScaledComplex scaled_mul(const ScaledComplex& a, const ScaledComplex& b) {
  return {a.mantissa * b.mantissa, a.log_scale + b.log_scale};
}

ScaledComplex scaled_sum(const std::vector<ScaledComplex>& terms) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    if (std::abs(t.mantissa) != 0.0) top = std::max(top, t.log_scale);
  }
  if (!std::isfinite(top)) return {Complex(0.0, 0.0), 0.0};
  CompensatedSum acc;
  for (const auto& t : terms) {
    if (std::abs(t.mantissa) == 0.0) continue;
    acc.add(t.mantissa * std::exp(t.log_scale - top));
  }
  return {acc.result(), top};
}

void CompensatedSum::add(Complex v) {
  // Neumaier update, componentwise.
  const double tr = re + v.real();
  if (std::abs(re) >= std::abs(v.real())) {
    cre += (re - tr) + v.real();
  } else {
    cre += (v.real() - tr) + re;
  }
  re = tr;
  const double ti = im + v.imag();
  if (std::abs(im) >= std::abs(v.imag())) {
    cim += (im - ti) + v.imag();
  } else {
    cim += (v.imag() - ti) + im;
  }
  im = ti;
}

// --- inner products -------------------------------------------------------------------

Complex dot(const SpectralPoint& xi, const std::vector<int>& v) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) s += xi.xi[i] * static_cast<double>(v[i]);
  return s;
}

Complex dot(const SpectralPoint& a, const SpectralPoint& b) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.xi.size(); ++i) s += a.xi[i] * b.xi[i];
  return s;
}

double dot(const std::vector<int>& v, const PositionPoint& x) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += static_cast<double>(v[i]) * x.x[i];
  return s;
}

Complex dot(const SpectralPoint& xi, const PositionPoint& x) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < x.x.size(); ++i) s += xi.xi[i] * x.x[i];
  return s;
}

// --- worker budget -------------------------------------------------------------------------

namespace {
std::atomic<int>& budget_slot() {
  static std::atomic<int> budget = [] {
    if (const char* env = std::getenv("HYPERWAVE_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 0;
  }();
  return budget;
}
}  // namespace

int thread_budget() {
  int v = budget_slot().load();
  if (v <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    v = hc ? static_cast<int>(hc) : 1;
  }
  return v;
}

void set_thread_budget(int n) { budget_slot().store(n); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_budget()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hyperwave
