// hyperwave: evaluate and verify the three families of hypergeometric-type
// eigenfunctions exposed by the core library.
//
// Subcommands
//   eval    series + orbit-sum values with tail bounds and prefactor data
//   verify  residual suites (eigen, difference, asymptotics, confluence,
//           analyticity) with one pass/fail row per check
//   table   export a coefficient table as line-delimited JSON
//   scan    sweep one parameter axis, emitting plot-ready records
//
// Exit codes: 0 ok / all checks pass, 1 verification failure, 2 error.
// Identical config + seed produce bit-identical standard output.

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperwave/hyperwave.hpp"

namespace hw = hyperwave;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string family = "bc";
  int n = 1;
  std::vector<double> gS{0.0, 0.0};
  std::vector<double> gM{0.0, 0.0};
  std::vector<double> gL{0.0, 0.0};
  std::vector<double> a_override;  // optional, 2n reals (re/im pairs)
  std::vector<double> xi;          // 2n reals (re/im pairs)
  std::vector<double> x;           // n reals
  int N = 30;
  double tau_int = 1e-9;
  double tau_den = 1e-8;
  double tau_x = 1e-6;
  double pole_guard = 1e-4;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string records;  // "" none, "-" stdout, else a file path
};

void add_common(CLI::App* app, RunConfig& cfg) {
  app->set_config("--config", "",
                  "flat key=value run configuration (vectors bracketed, e.g. xi=[0.8, 0.2]); "
                  "flags override file values");
  app->add_option("--family", cfg.family, "family: bc, t or cs")
      ->check(CLI::IsMember({"bc", "t", "cs"}))
      ->capture_default_str();
  app->add_option("--n", cfg.n, "rank (number of variables)")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  app->add_option("--gS", cfg.gS, "short-root coupling as re im")->expected(2);
  app->add_option("--gM", cfg.gM, "medium-root coupling as re im")->expected(2);
  app->add_option("--gL", cfg.gL, "long-root coupling as re im")->expected(2);
  app->add_option("--a", cfg.a_override,
                  "override for the n nearest-neighbour constants, 2n reals (re/im pairs)");
  app->add_option("--xi", cfg.xi, "spectral point, 2n reals (re/im pairs)");
  app->add_option("--x", cfg.x, "position, n reals");
  app->add_option("--N", cfg.N, "series truncation level")->check(CLI::Range(0, 200))->capture_default_str();
  app->add_option("--tau-int", cfg.tau_int, "integer-distance guard")->capture_default_str();
  app->add_option("--tau-den", cfg.tau_den, "recurrence denominator guard")->capture_default_str();
  app->add_option("--tau-x", cfg.tau_x, "chamber wall clearance")->capture_default_str();
  app->add_option("--pole-guard", cfg.pole_guard, "spectral hyperplane clearance")->capture_default_str();
  app->add_option("--seed", cfg.seed, "seed for all randomized displacements")->capture_default_str();
  app->add_option("--threads", cfg.threads, "worker cap (0 = hardware; HYPERWAVE_THREADS mirrors)")
      ->capture_default_str();
  app->add_option("--records", cfg.records,
                  "write line-delimited {name, re, im} records to this path ('-' = stdout)");
}

hw::Family family_of(const RunConfig& cfg) { return hw::family_from_name(cfg.family); }

hw::Couplings couplings_of(const RunConfig& cfg) {
  auto pair = [](const std::vector<double>& v, const char* what) {
    if (v.size() != 2) {
      throw hw::DimensionMismatch("cli", what, "expected a re/im pair");
    }
    return hw::Complex(v[0], v[1]);
  };
  hw::Couplings g = hw::Couplings::normalized(cfg.n, pair(cfg.gS, "gS"), pair(cfg.gM, "gM"),
                                              pair(cfg.gL, "gL"));
  if (!cfg.a_override.empty()) {
    if (cfg.a_override.size() != static_cast<std::size_t>(2 * cfg.n)) {
      throw hw::DimensionMismatch("cli", "a", "override needs 2n reals (re/im pairs)");
    }
    for (int i = 0; i < cfg.n; ++i) {
      g.a[static_cast<std::size_t>(i)] =
          hw::Complex(cfg.a_override[static_cast<std::size_t>(2 * i)],
                      cfg.a_override[static_cast<std::size_t>(2 * i + 1)]);
    }
  }
  return g;
}

hw::SpectralPoint xi_of(const RunConfig& cfg) {
  if (cfg.xi.size() != static_cast<std::size_t>(2 * cfg.n)) {
    throw hw::DimensionMismatch("cli", "xi", "expected 2n reals (re/im pairs) for n = " +
                                                 std::to_string(cfg.n));
  }
  hw::SpectralPoint xi;
  xi.xi.reserve(static_cast<std::size_t>(cfg.n));
  for (int i = 0; i < cfg.n; ++i) {
    xi.xi.emplace_back(cfg.xi[static_cast<std::size_t>(2 * i)],
                       cfg.xi[static_cast<std::size_t>(2 * i + 1)]);
  }
  return xi;
}

hw::PositionPoint x_of(const RunConfig& cfg) {
  if (cfg.x.size() != static_cast<std::size_t>(cfg.n)) {
    throw hw::DimensionMismatch("cli", "x", "expected n reals for n = " + std::to_string(cfg.n));
  }
  return hw::PositionPoint{cfg.x};
}

hw::Tolerances tol_of(const RunConfig& cfg) {
  hw::Tolerances tol;
  tol.tau_int = cfg.tau_int;
  tol.tau_den = cfg.tau_den;
  tol.tau_x = cfg.tau_x;
  tol.pole_guard = cfg.pole_guard;
  for (double t : {tol.tau_int, tol.tau_den, tol.tau_x, tol.pole_guard}) {
    if (!(t > 0.0)) {
      throw hw::PreconditionViolation("cli", "tolerances", "every tolerance must be positive");
    }
  }
  return tol;
}

// Sink for the optional line-delimited records stream.
class Records {
 public:
  explicit Records(const std::string& spec) {
    if (spec.empty()) return;
    if (spec == "-") {
      out_ = stdout;
    } else {
      file_.reset(std::fopen(spec.c_str(), "w"));
      if (!file_) throw hw::Error("cli", "records", "cannot open '" + spec + "'");
      out_ = file_.get();
    }
  }
  bool active() const { return out_ != nullptr; }
  void emit(const std::string& name, hw::Complex value, json extra = json::object()) {
    if (!out_) return;
    json rec = {{"name", name}, {"re", value.real()}, {"im", value.imag()}};
    rec.update(extra);
    std::fprintf(out_, "%s\n", rec.dump().c_str());
  }

 private:
  struct Closer {
    void operator()(std::FILE* f) const { std::fclose(f); }
  };
  std::unique_ptr<std::FILE, Closer> file_;
  std::FILE* out_ = nullptr;
};

void print_complex(const char* label, hw::Complex z) {
  std::printf("%-22s % .17g %+.17gi\n", label, z.real(), z.imag());
}

// ---------------------------------------------------------------------------

int cmd_eval(const RunConfig& cfg) {
  const hw::Family f = family_of(cfg);
  const hw::Couplings g = couplings_of(cfg);
  const hw::SpectralPoint xi = xi_of(cfg);
  const hw::PositionPoint x = x_of(cfg);
  const hw::Tolerances tol = tol_of(cfg);
  Records rec(cfg.records);

  std::printf("family %s  n %d  N %d\n", cfg.family.c_str(), cfg.n, cfg.N);
  const hw::HyperplaneHit hit = hw::nearest_spectral_hyperplane(xi);
  if (hit.distance < tol.pole_guard) {
    // Within the guard radius of an excluded hyperplane the orbit sum has a
    // removable singularity: evaluate by seeded displacement + extrapolation.
    std::printf("spectral point within %.3g of hyperplane %s: extrapolated route\n",
                tol.pole_guard, hit.form.c_str());
    const std::array<double, 3> offsets{1e-2, 1e-3, 1e-4};
    const hw::RegularizedValue rv =
        hw::wavefunction_regular(f, xi, x, g, cfg.N, offsets, cfg.seed, tol);
    try {
      const hw::CoeffTable table = hw::build_table(f, xi, g, cfg.N, true, std::nullopt, tol);
      const hw::SeriesValue sv = hw::series_eval(table, x, tol);
      print_complex("phi_regularized", sv.value);
      print_complex("delta_u", table.delta_u);
      std::printf("%-22s % .17g\n", "tail_bound", sv.tail_bound);
      rec.emit("phi_regularized", sv.value);
      rec.emit("delta_u", table.delta_u);
      rec.emit("tail_bound", {sv.tail_bound, 0.0});
    } catch (const hw::SpectralPlaneSingularity&) {
      // Exactly on the hyperplane the rescaled table is identically 0/0;
      // only the symmetrized extrapolated value below is defined.
      std::printf("exact hyperplane hit: series entries undefined, orbit sum extrapolated\n");
    }
    print_complex("Phi", rv.value);
    std::printf("%-22s % .17g\n", "Phi_error_estimate", rv.error_estimate);
    rec.emit("Phi", rv.value);
    rec.emit("Phi_error_estimate", {rv.error_estimate, 0.0});
    for (std::size_t i = 0; i < rv.samples.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "Phi_sample@%g", rv.offsets[i]);
      print_complex(name, rv.samples[i]);
      rec.emit(name, rv.samples[i]);
    }
    return 0;
  }

  const hw::CoeffTable table = hw::build_table(f, xi, g, cfg.N, false, std::nullopt, tol);
  const hw::SeriesValue sv = hw::series_eval(table, x, tol);
  print_complex("phi", sv.value);
  std::printf("%-22s % .17g  (levels %d, certified %d)\n", "tail_bound", sv.tail_bound,
              sv.levels_used, sv.tail_certified ? 1 : 0);
  rec.emit("phi", sv.value);
  rec.emit("tail_bound", {sv.tail_bound, 0.0},
           {{"levels", sv.levels_used}, {"certified", sv.tail_certified}});

  hw::WaveOptions opt;
  opt.N = cfg.N;
  opt.tol = tol;
  const std::vector<hw::WaveTerm> terms = hw::wavefunction_terms(f, xi, x, g, opt);
  std::vector<hw::ScaledComplex> parts;
  parts.reserve(terms.size());
  for (const hw::WaveTerm& t : terms) parts.push_back(t.term);
  const hw::Complex Phi = hw::scaled_sum(parts).value();
  print_complex("Phi", Phi);
  rec.emit("Phi", Phi);
  for (const hw::WaveTerm& t : terms) {
    const std::string wname = hw::signed_permutation_name(t.w);
    const hw::Complex c = t.weight.value();
    std::printf("C[%-14s]      % .17g %+.17gi\n", wname.c_str(), c.real(), c.imag());
    rec.emit("C[" + wname + "]", c);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct Row {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

void run_eigen(const RunConfig& cfg, std::vector<Row>& rows) {
  const hw::Family f = family_of(cfg);
  const hw::Couplings g = couplings_of(cfg);
  const hw::SpectralPoint xi = xi_of(cfg);
  const hw::PositionPoint x = x_of(cfg);
  const hw::Tolerances tol = tol_of(cfg);
  const double rs = hw::eigen_residual(f, xi, x, g, cfg.N, false, tol);
  rows.push_back({"eigen.series", rs, 1e-8, rs <= 1e-8});
  const double rw = hw::eigen_residual(f, xi, x, g, cfg.N, true, tol);
  rows.push_back({"eigen.wave", rw, 1e-8, rw <= 1e-8});
}

void run_difference(const RunConfig& cfg, std::vector<Row>& rows) {
  const hw::Family f = family_of(cfg);
  const hw::Couplings g = couplings_of(cfg);
  const hw::Tolerances tol = tol_of(cfg);
  const hw::SpectralPoint xi = hw::screen_shift_targets(xi_of(cfg), tol.pole_guard, cfg.seed);
  const hw::PositionPoint x = x_of(cfg);
  for (int ell = 1; ell <= std::min(cfg.n, 2); ++ell) {
    const double r = hw::difference_residual(f, ell, xi, x, g, cfg.N, tol);
    rows.push_back({"difference.residual@ell=" + std::to_string(ell), r, 1e-6, r <= 1e-6});
    const hw::ScaledComplex lg =
        hw::difference_lhs(f, ell, xi, x, g, cfg.N, hw::DifferenceRoute::general, tol);
    const hw::ScaledComplex ls =
        hw::difference_lhs(f, ell, xi, x, g, cfg.N, hw::DifferenceRoute::specialized, tol);
    const hw::ScaledComplex d = hw::scaled_sum({lg, {-ls.mantissa, ls.log_scale}});
    const double gap = std::exp(d.log_abs() - lg.log_abs());
    rows.push_back({"difference.route_gap@ell=" + std::to_string(ell), gap, 1e-12, gap <= 1e-12});
  }
}

void run_asymptotics(const RunConfig& cfg, std::vector<Row>& rows) {
  const hw::Family f = family_of(cfg);
  const hw::Couplings g = couplings_of(cfg);
  const hw::Tolerances tol = tol_of(cfg);
  hw::SpectralPoint xi = xi_of(cfg);
  for (auto& z : xi.xi) z = hw::Complex(0.0, z.imag());  // plane-wave regime
  const hw::CoeffTable table = hw::build_table(f, xi, g, cfg.N, false, std::nullopt, tol);
  const std::vector<int> rho = hw::rho_vector(cfg.n);
  double prev = 0.0;
  const std::array<double, 4> ts{2.0, 4.0, 6.0, 8.0};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    hw::PositionPoint x;
    x.x.reserve(static_cast<std::size_t>(cfg.n));
    for (int j = 0; j < cfg.n; ++j) x.x.push_back(ts[i] * rho[static_cast<std::size_t>(j)]);
    const double gap = hw::asymptotics_gap(table, x, tol);
    char name[48];
    std::snprintf(name, sizeof name, "asymptotics.gap@t=%g", ts[i]);
    if (i == 0) {
      rows.push_back({name, gap, std::numeric_limits<double>::infinity(), true});
    } else if (i + 1 < ts.size()) {
      rows.push_back({name, gap, prev, gap < prev});
    } else {
      rows.push_back({name, gap, std::min(prev, 1e-6), gap < prev && gap <= 1e-6});
    }
    prev = gap;
  }
}

void run_confluence(const RunConfig& cfg, std::vector<Row>& rows) {
  if (family_of(cfg) != hw::Family::bc) {
    throw hw::PreconditionViolation("cli", "confluence suite", "requires the bc family");
  }
  const hw::Couplings g = couplings_of(cfg);
  const hw::SpectralPoint xi = xi_of(cfg);
  const hw::PositionPoint x = x_of(cfg);
  const hw::Tolerances tol = tol_of(cfg);
  const std::array<double, 4> cs{4.0, 6.0, 8.0, 10.0};
  for (hw::DegenerationKind k : {hw::DegenerationKind::M, hw::DegenerationKind::L}) {
    const char* path = k == hw::DegenerationKind::M ? "M" : "L";
    double prev_s = 0.0, prev_w = 0.0, prev_p = 0.0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const double se = hw::series_confluence_error(k, xi, x, g, cs[i], cfg.N, tol);
      const double we = hw::wavefunction_confluence_error(k, xi, x, g, cs[i], cfg.N, tol);
      const double pe = hw::prefactor_limit_error(k, xi, g, cs[i], tol.tau_int);
      char name[64];
      const bool first = i == 0;
      const double inf = std::numeric_limits<double>::infinity();
      std::snprintf(name, sizeof name, "confluence.%s.series@c=%g", path, cs[i]);
      rows.push_back({name, se, first ? inf : prev_s, first || se < prev_s});
      std::snprintf(name, sizeof name, "confluence.%s.wave@c=%g", path, cs[i]);
      rows.push_back({name, we, first ? inf : prev_w, first || we < prev_w});
      std::snprintf(name, sizeof name, "confluence.%s.prefactor@c=%g", path, cs[i]);
      rows.push_back({name, pe, first ? inf : prev_p, first || pe < prev_p});
      prev_s = se;
      prev_w = we;
      prev_p = pe;
    }
    const int cap = std::min(cfg.N, 8);
    const double ce = hw::coefficient_confluence_error(k, xi, g, cs.back(), cfg.N, cap, tol);
    char name[64];
    std::snprintf(name, sizeof name, "confluence.%s.coefficients@c=%g", path, cs.back());
    rows.push_back({name, ce, 1e-2, ce <= 1e-2});
  }
}

void run_analyticity(const RunConfig& cfg, std::vector<Row>& rows) {
  const hw::Family f = family_of(cfg);
  const hw::Couplings g = couplings_of(cfg);
  const hw::PositionPoint x = x_of(cfg);
  const hw::Tolerances tol = tol_of(cfg);
  const std::array<double, 3> offsets{1e-2, 1e-3, 1e-4};

  auto scan = [&](const char* tag, const hw::SpectralPoint& xi0) {
    const hw::RegularizedValue rv =
        hw::wavefunction_regular(f, xi0, x, g, cfg.N, offsets, cfg.seed, tol);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (hw::Complex s : rv.samples) {
      lo = std::min(lo, std::abs(s));
      hi = std::max(hi, std::abs(s));
    }
    const double spread = hi / lo;
    rows.push_back({std::string("analyticity.") + tag + ".sample_spread", spread, 2.0,
                    spread < 2.0});

    // The largest single orbit term must blow up like 1/delta even though the
    // symmetrized sum stays bounded.
    hw::WaveOptions opt;
    opt.N = cfg.N;
    opt.tol = tol;
    opt.guard_spectrum = false;
    std::array<double, 2> peak{};
    for (int s = 0; s < 2; ++s) {
      hw::SpectralPoint xs = xi0;
      for (int j = 0; j < cfg.n; ++j) {
        xs.xi[static_cast<std::size_t>(j)] +=
            offsets[static_cast<std::size_t>(s)] * rv.direction[static_cast<std::size_t>(j)];
      }
      double best = 0.0;
      for (const hw::WaveTerm& t : hw::wavefunction_terms(f, xs, x, g, opt)) {
        best = std::max(best, std::exp(t.term.log_abs()));
      }
      peak[static_cast<std::size_t>(s)] = best;
    }
    const double growth = peak[1] / peak[0];
    rows.push_back({std::string("analyticity.") + tag + ".orbit_pole_growth", growth, 10.0,
                    growth > 5.0 && growth < 20.0});
  };

  hw::SpectralPoint xi_a = xi_of(cfg);
  xi_a.xi[0] = hw::Complex(0.5, 0.0);  // lands on 2 xi_1 = 1
  scan("half_integer", xi_a);
  if (cfg.n >= 2) {
    hw::SpectralPoint xi_b = xi_of(cfg);
    xi_b.xi[0] = xi_b.xi[1] + 1.0;  // lands on xi_1 - xi_2 = 1
    scan("difference_integer", xi_b);
  }
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& suites) {
  Records rec(cfg.records);
  std::vector<Row> rows;
  for (const std::string& suite : suites) {
    if (suite == "eigen") {
      run_eigen(cfg, rows);
    } else if (suite == "difference") {
      run_difference(cfg, rows);
    } else if (suite == "asymptotics") {
      run_asymptotics(cfg, rows);
    } else if (suite == "confluence") {
      run_confluence(cfg, rows);
    } else if (suite == "analyticity") {
      run_analyticity(cfg, rows);
    } else {
      throw hw::PreconditionViolation("cli", "suite", "unknown suite '" + suite + "'");
    }
  }
  bool all = true;
  std::printf("%-44s %-13s %-13s %s\n", "check", "value", "threshold", "pass");
  for (const Row& r : rows) {
    all = all && r.pass;
    std::printf("%-44s %-13.6g %-13.6g %s\n", r.name.c_str(), r.value, r.threshold,
                r.pass ? "pass" : "FAIL");
    rec.emit(r.name, {r.value, 0.0}, {{"threshold", r.threshold}, {"pass", r.pass}});
  }
  std::printf("%s\n", all ? "all checks passed" : "verification FAILED");
  return all ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_table(const RunConfig& cfg, const std::string& out, bool regularized,
              const std::string& twist_kind, double twist_c) {
  const hw::Family f = family_of(cfg);
  const hw::Couplings g = couplings_of(cfg);
  const hw::SpectralPoint xi = xi_of(cfg);
  const hw::Tolerances tol = tol_of(cfg);
  std::optional<hw::TranslationTwist> twist;
  if (!twist_kind.empty()) {
    twist = hw::TranslationTwist{
        twist_kind == "M" ? hw::DegenerationKind::M : hw::DegenerationKind::L, twist_c};
  }
  const hw::CoeffTable table = hw::build_table(f, xi, g, cfg.N, regularized, twist, tol);
  hw::export_table_file(table, out);
  std::printf("wrote %s (%d entries)\n", out.c_str(), table.lattice->size());
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_scan(const RunConfig& cfg, const std::string& quantity,
             const std::vector<double>& values, const std::string& path, int ell) {
  if (values.empty()) {
    throw hw::PreconditionViolation("cli", "scan", "--values must list at least one point");
  }
  const hw::Family f = family_of(cfg);
  const hw::Couplings g = couplings_of(cfg);
  const hw::Tolerances tol = tol_of(cfg);
  const hw::DegenerationKind k =
      path == "L" ? hw::DegenerationKind::L : hw::DegenerationKind::M;
  Records rec(cfg.records);
  std::printf("%-36s %s\n", "point", "value");

  auto emit = [&](double at, hw::Complex value) {
    char name[64];
    std::snprintf(name, sizeof name, "%s@%g", quantity.c_str(), at);
    std::printf("%-36s % .17g %+.17gi\n", name, value.real(), value.imag());
    rec.emit(name, value);
  };

  if (quantity == "asymptotics") {
    hw::SpectralPoint xi = xi_of(cfg);
    for (auto& z : xi.xi) z = hw::Complex(0.0, z.imag());
    const hw::CoeffTable table = hw::build_table(f, xi, g, cfg.N, false, std::nullopt, tol);
    const std::vector<int> rho = hw::rho_vector(cfg.n);
    for (double t : values) {
      hw::PositionPoint x;
      for (int j = 0; j < cfg.n; ++j) x.x.push_back(t * rho[static_cast<std::size_t>(j)]);
      emit(t, {hw::asymptotics_gap(table, x, tol), 0.0});
    }
    return 0;
  }
  if (quantity == "series-confluence" || quantity == "wave-confluence" ||
      quantity == "coeff-confluence" || quantity == "prefactor-confluence") {
    const hw::SpectralPoint xi = xi_of(cfg);
    for (double c : values) {
      double v = 0.0;
      if (quantity == "series-confluence") {
        v = hw::series_confluence_error(k, xi, x_of(cfg), g, c, cfg.N, tol);
      } else if (quantity == "wave-confluence") {
        v = hw::wavefunction_confluence_error(k, xi, x_of(cfg), g, c, cfg.N, tol);
      } else if (quantity == "coeff-confluence") {
        v = hw::coefficient_confluence_error(k, xi, g, c, cfg.N, std::min(cfg.N, 8), tol);
      } else {
        v = hw::prefactor_limit_error(k, xi, g, c, tol.tau_int);
      }
      emit(c, {v, 0.0});
    }
    return 0;
  }
  if (quantity == "eigen") {
    const hw::SpectralPoint xi = xi_of(cfg);
    const hw::PositionPoint x = x_of(cfg);
    for (double nv : values) {
      emit(nv, {hw::eigen_residual(f, xi, x, g, static_cast<int>(nv), true, tol), 0.0});
    }
    return 0;
  }
  if (quantity == "difference") {
    const hw::SpectralPoint xi = hw::screen_shift_targets(xi_of(cfg), tol.pole_guard, cfg.seed);
    const hw::PositionPoint x = x_of(cfg);
    for (double nv : values) {
      emit(nv, {hw::difference_residual(f, ell, xi, x, g, static_cast<int>(nv), tol), 0.0});
    }
    return 0;
  }
  if (quantity == "pole") {
    // |Phi| along a seeded ray toward the configured (near-singular) point.
    const hw::SpectralPoint xi0 = xi_of(cfg);
    const hw::PositionPoint x = x_of(cfg);
    std::vector<double> offsets(values.begin(), values.end());
    const hw::RegularizedValue rv =
        hw::wavefunction_regular(f, xi0, x, g, cfg.N, offsets, cfg.seed, tol);
    for (std::size_t i = 0; i < rv.samples.size(); ++i) emit(rv.offsets[i], rv.samples[i]);
    emit(0.0, rv.value);
    return 0;
  }
  throw hw::PreconditionViolation("cli", "scan", "unknown quantity '" + quantity + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evaluator and verifier for the bc/t/cs eigenfunction families"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  add_common(&app, cfg);

  CLI::App* eval = app.add_subcommand("eval", "evaluate the series and the orbit sum");

  CLI::App* verify = app.add_subcommand("verify", "run residual check suites");
  std::vector<std::string> suites{"eigen", "difference", "asymptotics", "confluence",
                                  "analyticity"};
  verify->add_option("--suite", suites, "suites to run")
      ->check(CLI::IsMember({"eigen", "difference", "asymptotics", "confluence", "analyticity"}));

  CLI::App* table = app.add_subcommand("table", "export a coefficient table");
  std::string out;
  bool regularized = false;
  std::string twist_kind;
  double twist_c = 0.0;
  table->add_option("--out", out, "output path")->required();
  table->add_flag("--regularized", regularized, "build the regularizer-seeded table");
  table->add_option("--twist-kind", twist_kind, "rescaled-input degeneration path (M or L)")
      ->check(CLI::IsMember({"M", "L"}));
  table->add_option("--twist-c", twist_c, "degeneration parameter for --twist-kind");

  CLI::App* scan = app.add_subcommand("scan", "sweep one axis, emitting plot records");
  std::string quantity;
  std::vector<double> values;
  std::string path = "M";
  int ell = 1;
  scan->add_option("--quantity", quantity,
                   "asymptotics | series-confluence | wave-confluence | coeff-confluence | "
                   "prefactor-confluence | eigen | difference | pole")
      ->required();
  scan->add_option("--values", values, "grid for the swept axis")->required();
  scan->add_option("--path", path, "degeneration path for confluence scans")
      ->check(CLI::IsMember({"M", "L"}));
  scan->add_option("--ell", ell, "difference equation order for --quantity difference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err = {{"error", {{"module", "cli"}, {"object", "arguments"}, {"detail", e.what()}}}};
    std::printf("%s\n", err.dump().c_str());
    return 2;
  }

  try {
    if (cfg.threads > 0) hw::set_thread_budget(cfg.threads);
    if (eval->parsed()) return cmd_eval(cfg);
    if (verify->parsed()) return cmd_verify(cfg, suites);
    if (table->parsed()) return cmd_table(cfg, out, regularized, twist_kind, twist_c);
    if (scan->parsed()) return cmd_scan(cfg, quantity, values, path, ell);
  } catch (const hw::Error& e) {
    json err = {{"error",
                 {{"module", e.module()}, {"object", e.object()}, {"detail", e.detail()}}}};
    std::printf("%s\n", err.dump().c_str());
    return 2;
  } catch (const std::exception& e) {
    json err = {{"error", {{"module", "cli"}, {"object", "run"}, {"detail", e.what()}}}};
    std::printf("%s\n", err.dump().c_str());
    return 2;
  }
  return 0;
}
