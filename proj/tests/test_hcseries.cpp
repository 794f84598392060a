#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hyperwave/hyperwave.hpp"
#include "support/common.hpp"
#include "support/oracles.hpp"

using namespace hyperwave;
using oracles::CRat;
using oracles::Rat;

namespace {

Root root_of(Root::Kind kind, int j, int k = 0) {
  Root r;
  r.kind = kind;
  r.j = j;
  r.k = k;
  return r;
}

}  // namespace

TEST_CASE("one-step inputs per family") {
  const int n = 3;
  const Couplings g = Couplings::normalized(n, {0.6, 0.1}, {0.9, -0.2}, {1.3, 0.05});
  const Complex gs_term = g.gS * (g.gS + 2.0 * g.gL - 1.0);
  const Complex gm_term = 2.0 * g.gM * (g.gM - 1.0);
  const Complex gl_term = 4.0 * g.gL * (g.gL - 1.0);

  SUBCASE("hyperbolic: every root, linear in the step") {
    CHECK(std::abs(recurrence_coeff(Family::bc, root_of(Root::Kind::S, 1), 3, g, n) -
                   3.0 * gs_term) < 1e-15);
    CHECK(std::abs(recurrence_coeff(Family::bc, root_of(Root::Kind::MPlus, 0, 2), 2, g, n) -
                   2.0 * gm_term) < 1e-15);
    CHECK(std::abs(recurrence_coeff(Family::bc, root_of(Root::Kind::MMinus, 1, 2), 1, g, n) -
                   gm_term) < 1e-15);
    CHECK(std::abs(recurrence_coeff(Family::bc, root_of(Root::Kind::L, 2), 2, g, n) -
                   2.0 * gl_term) < 1e-15);
  }

  SUBCASE("chain: boundary roots plus single-step neighbour couplings") {
    CHECK(std::abs(recurrence_coeff(Family::t, root_of(Root::Kind::S, n - 1), 2, g, n) -
                   2.0 * gs_term) < 1e-15);
    CHECK(recurrence_coeff(Family::t, root_of(Root::Kind::S, 0), 1, g, n) == Complex{0.0, 0.0});
    CHECK(std::abs(recurrence_coeff(Family::t, root_of(Root::Kind::MMinus, 0, 1), 1, g, n) -
                   g.a[0]) < 1e-15);
    CHECK(recurrence_coeff(Family::t, root_of(Root::Kind::MMinus, 0, 1), 2, g, n) ==
          Complex{0.0, 0.0});
    CHECK(recurrence_coeff(Family::t, root_of(Root::Kind::MMinus, 0, 2), 1, g, n) ==
          Complex{0.0, 0.0});
    CHECK(std::abs(recurrence_coeff(Family::t, root_of(Root::Kind::MPlus, n - 2, n - 1), 1, g, n) -
                   g.a[static_cast<std::size_t>(n - 2)]) < 1e-15);
    CHECK(recurrence_coeff(Family::t, root_of(Root::Kind::MPlus, 0, 1), 1, g, n) ==
          Complex{0.0, 0.0});
    CHECK(std::abs(recurrence_coeff(Family::t, root_of(Root::Kind::L, n - 1), 3, g, n) -
                   3.0 * gl_term) < 1e-15);
    CHECK(recurrence_coeff(Family::t, root_of(Root::Kind::L, 0), 1, g, n) == Complex{0.0, 0.0});
  }

  SUBCASE("Morse: single-step short and long roots, full medium ladder") {
    CHECK(std::abs(recurrence_coeff(Family::cs, root_of(Root::Kind::S, 0), 1, g, n) - g.gS) <
          1e-15);
    CHECK(recurrence_coeff(Family::cs, root_of(Root::Kind::S, 0), 2, g, n) == Complex{0.0, 0.0});
    CHECK(std::abs(recurrence_coeff(Family::cs, root_of(Root::Kind::MMinus, 0, 2), 2, g, n) -
                   2.0 * gm_term) < 1e-15);
    CHECK(recurrence_coeff(Family::cs, root_of(Root::Kind::MPlus, 0, 1), 1, g, n) ==
          Complex{0.0, 0.0});
    CHECK(std::abs(recurrence_coeff(Family::cs, root_of(Root::Kind::L, 1), 1, g, n) -
                   g.a[static_cast<std::size_t>(n - 1)]) < 1e-15);
    CHECK(recurrence_coeff(Family::cs, root_of(Root::Kind::L, 1), 2, g, n) == Complex{0.0, 0.0});
  }

  CHECK_THROWS_AS(recurrence_coeff(Family::bc, root_of(Root::Kind::S, 0), 0, g, n),
                  PreconditionViolation);
}

TEST_CASE("rank-one ladder solves in closed form") {
  const Complex xi{0.83, 0.21};
  const Couplings g = Couplings::normalized(1, {0.6, 0.0}, {0.0, 0.0}, {1.3, 0.0});
  const CoeffTable table = build_table(Family::bc, SpectralPoint{{xi}}, g, 4);
  const Complex gs_term = g.gS * (g.gS + 2.0 * g.gL - 1.0);
  const Complex gl_term = 4.0 * g.gL * (g.gL - 1.0);

  const Complex a0 = table.at({{0}});
  const Complex a1 = table.at({{1}});
  const Complex a2 = table.at({{2}});
  CHECK(a0 == Complex{1.0, 0.0});
  const Complex want1 = gs_term / (1.0 - 2.0 * xi);
  CHECK(std::abs(a1 - want1) <= 1e-14 * std::abs(want1));
  const Complex want2 = (gs_term * (a1 + 2.0) + gl_term) / (4.0 - 4.0 * xi);
  CHECK(std::abs(a2 - want2) <= 1e-14 * std::abs(want2));
}

TEST_CASE("tables satisfy their own recurrence") {
  for (Family f : testing::kFamilies) {
    const CoeffTable table =
        build_table(f, testing::xi_generic(2), testing::g_family(f, 2), 20);
    CHECK(recurrence_defect(table) <= 1e-13);
    const CoeffTable reg =
        build_table(f, testing::xi_generic(2), testing::g_family(f, 2), 20, true);
    CHECK(recurrence_defect(reg) <= 1e-13);
    CHECK(std::abs(reg.entries[0] - reg.delta_u) == 0.0);
  }
}

TEST_CASE("floating tables match the exact-rational solve") {
  // Dyadic data: the double inputs are exactly the given rationals.
  std::vector<CRat> xi_rat = {{Rat(27, 32), Rat(7, 32)}, {Rat(13, 32), Rat(-11, 32)}};
  SpectralPoint xi{{Complex(27.0 / 32, 7.0 / 32), Complex(13.0 / 32, -11.0 / 32)}};
  oracles::RatCouplings gr =
      oracles::rat_couplings(2, {Rat(19, 32), Rat(0)}, {Rat(29, 32), Rat(0)}, {Rat(41, 32), Rat(0)});
  Couplings g = Couplings::normalized(2, {19.0 / 32, 0.0}, {29.0 / 32, 0.0}, {41.0 / 32, 0.0});

  for (Family f : testing::kFamilies) {
    const auto exact = oracles::oracle_table(f, xi_rat, gr, 6);
    const CoeffTable table = build_table(f, xi, g, 6);
    double worst = 0.0;
    for (const auto& [nu, val] : exact) {
      const Complex want = oracles::to_complex(val);
      const Complex got = table.at(Composition{nu});
      worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
    }
    CHECK(worst <= 1e-12);
    // Same count of nonzero support.
    CHECK(exact.size() == table.entries.size());
  }
}

TEST_CASE("spectral planes stop the unregularized solve") {
  const SpectralPoint on_plane{{Complex(0.5, 0.0), Complex(0.22, 0.0)}};
  const Couplings g = testing::g_family(Family::bc, 2);
  CHECK_THROWS_AS(build_table(Family::bc, on_plane, g, 6), SpectralPlaneSingularity);
  // The denominator vanishes exactly, so the regularized solve cannot recover
  // a finite entry either.
  CHECK_THROWS_AS(build_table(Family::bc, on_plane, g, 6, true), SpectralPlaneSingularity);
}

TEST_CASE("near a spectral plane the regularizer keeps entries proportional") {
  const SpectralPoint near_plane{{Complex(0.5 + 3e-7, 0.0), Complex(0.22, 0.0)}};
  const Couplings g = testing::g_family(Family::bc, 2);
  const CoeffTable raw = build_table(Family::bc, near_plane, g, 8);
  const CoeffTable reg = build_table(Family::bc, near_plane, g, 8, true);
  CHECK(std::abs(reg.delta_u) < 1e-4);  // the captured plane factor is tiny
  double worst = 0.0;
  for (std::size_t i = 0; i < raw.entries.size(); ++i) {
    const Complex want = raw.entries[i] * reg.delta_u;
    worst = std::max(worst, std::abs(reg.entries[i] - want) / std::max(1e-300, std::abs(want)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("regularizer product collects captured planes only") {
  // Far from every plane (all linear forms keep a large imaginary part)
  // nothing is captured and the product stays exactly 1.
  const SpectralPoint clear{{Complex(0.83, 2.0), Complex(0.37, -5.0)}};
  CHECK(delta_u_product(clear, 10) == Complex{1.0, 0.0});
  // Close to 2 xi_1 = 1 the linear form <mu - 2 xi, mu> at mu = e_1 is picked up.
  const SpectralPoint close{{Complex(0.5 + 3e-7, 0.0), Complex(0.22, 0.0)}};
  const Complex captured = delta_u_product(close, 10);
  CHECK(std::abs(captured) < 1e-4);
  CHECK(std::abs(captured) > 0.0);
}

TEST_CASE("coefficient growth stays subexponential") {
  const CoeffTable table =
      build_table(Family::bc, testing::xi_generic(2), testing::g_family(Family::bc, 2), 24, true);
  const Lattice& lat = *table.lattice;
  for (double eps : {0.5, 1.0}) {
    double head = 0.0, tail = 0.0;
    for (int idx = 0; idx < lat.size(); ++idx) {
      const double weighted =
          std::abs(table.entries[static_cast<std::size_t>(idx)]) *
          std::exp(-eps * static_cast<double>(lat.level_of(idx)));
      if (lat.level_of(idx) <= 12) {
        head = std::max(head, weighted);
      } else {
        tail = std::max(tail, weighted);
      }
    }
    CHECK(tail <= head * (1.0 + 1e-9));
  }
}

TEST_CASE("series at zero couplings is the plane wave") {
  for (Family f : testing::kFamilies) {
    const SpectralPoint xi = testing::xi_generic(2);
    const PositionPoint x{{2.3, 1.1}};
    const CoeffTable table = build_table(f, xi, Couplings::zero(2), 12);
    const SeriesValue sv = series_eval(table, x);
    const Complex plane = std::exp(dot(xi, x));
    CHECK(std::abs(sv.value - plane) <= 1e-14 * std::abs(plane));
    CHECK(sv.tail_bound == 0.0);
  }
}

TEST_CASE("truncation at level zero is the bare exponential") {
  const SpectralPoint xi = testing::xi_generic(2);
  const PositionPoint x{{3.1, 1.4}};
  const CoeffTable table =
      build_table(Family::bc, xi, testing::g_family(Family::bc, 2), 0);
  const SeriesValue sv = series_eval(table, x);
  CHECK(std::abs(sv.value - std::exp(dot(xi, x))) <= 1e-15 * std::abs(sv.value));
  CHECK(sv.levels_used == 1);
}

TEST_CASE("tail bound is honest against a deeper truncation") {
  const SpectralPoint xi = testing::xi_generic(2);
  const Couplings g = testing::g_family(Family::bc, 2);
  const PositionPoint x{{4.1, 2.0}};
  const SeriesValue coarse = series_eval(build_table(Family::bc, xi, g, 18), x);
  const SeriesValue fine = series_eval(build_table(Family::bc, xi, g, 40), x);
  const double actual = std::abs(coarse.value - fine.value);
  CHECK(coarse.tail_certified);
  CHECK(actual <= 3.0 * coarse.tail_bound + 1e-15 * std::abs(fine.value));
  // Deeper truncations tighten the bound.
  const SeriesValue deeper = series_eval(build_table(Family::bc, xi, g, 26), x);
  CHECK(deeper.tail_bound < coarse.tail_bound);
}

TEST_CASE("evaluation enforces the family chamber") {
  const SpectralPoint xi = testing::xi_generic(2);
  const CoeffTable table =
      build_table(Family::bc, xi, testing::g_family(Family::bc, 2), 6);
  CHECK_THROWS_AS(series_eval(table, {{1.0, 3.0}}), ChamberViolation);
  CHECK_THROWS_AS(series_eval(table, {{3.0, -0.2}}), ChamberViolation);
  CHECK_THROWS_AS(series_eval(table, {{3.0}}), DimensionMismatch);
}

TEST_CASE("scaled evaluation splits the plane-wave prefactor") {
  const SpectralPoint xi = testing::xi_generic(2);
  const PositionPoint x{{2.3, 1.1}};
  const CoeffTable table =
      build_table(Family::bc, xi, testing::g_family(Family::bc, 2), 20);
  const SeriesValue sv = series_eval(table, x);
  const ScaledComplex sc = series_eval_scaled(table, x);
  CHECK(sc.log_scale == doctest::Approx(dot(xi, x).real()).epsilon(1e-14));
  CHECK(std::abs(sc.value() - sv.value) <= 1e-13 * std::abs(sv.value));
}

TEST_CASE("rescaled inputs reproduce the translated series") {
  // With the one-step inputs damped by exp(-c l <alpha, rho_K>), the summed
  // series at x equals exp(-c <xi, rho_K>) phi(x + c rho_K) exactly.
  const SpectralPoint xi = testing::xi_generic(2);
  const Couplings g = testing::g_family(Family::bc, 2);
  const double c = 0.5;
  for (DegenerationKind kind : {DegenerationKind::M, DegenerationKind::L}) {
    const std::vector<int> rho_k =
        kind == DegenerationKind::M ? rho_M_vector(2) : rho_L_vector(2);
    const CoeffTable twisted =
        build_table(Family::bc, xi, g, 16, false, TranslationTwist{kind, c});
    const CoeffTable plain = build_table(Family::bc, xi, g, 16);

    // Entry-level identity: the twist damps each coefficient by the lattice
    // pairing with rho_K.
    double worst_entry = 0.0;
    const Lattice& lat = *plain.lattice;
    for (int idx = 0; idx < lat.size(); ++idx) {
      const Composition& nu = lat.composition(idx);
      long pairing = 0;
      for (int j = 0; j < 2; ++j) pairing += static_cast<long>(nu.nu[static_cast<std::size_t>(j)]) * rho_k[static_cast<std::size_t>(j)];
      const Complex want = plain.entries[static_cast<std::size_t>(idx)] *
                           std::exp(-c * static_cast<double>(pairing));
      worst_entry = std::max(worst_entry,
                             std::abs(twisted.entries[static_cast<std::size_t>(idx)] - want) /
                                 std::max(1e-300, std::abs(want)));
    }
    CHECK(worst_entry <= 1e-13);

    const PositionPoint x{{2.3, 1.1}};
    PositionPoint shifted = x;
    for (int j = 0; j < 2; ++j) shifted.x[static_cast<std::size_t>(j)] += c * rho_k[static_cast<std::size_t>(j)];
    const Complex lhs = series_eval(twisted, x).value;
    const Complex rhs =
        std::exp(-c * dot(xi, rho_k)) * series_eval(plain, shifted).value;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("plane-wave gap shrinks deep in the chamber") {
  const SpectralPoint xi{{Complex(0.0, 0.9)}};
  const Couplings g = Couplings::normalized(1, {0.0, 0.0}, {0.0, 0.0}, {1.4, 0.0});
  const CoeffTable table = build_table(Family::bc, xi, g, 30);
  double prev = 1e300;
  for (double t : {2.0, 4.0, 6.0, 8.0}) {
    const double gap = asymptotics_gap(table, {{t}});
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev <= 1e-6);

  // Only neutral spectra qualify.
  const CoeffTable off = build_table(Family::bc, testing::xi_generic(1),
                                     testing::g_family(Family::bc, 1), 8);
  CHECK_THROWS_AS(asymptotics_gap(off, {{3.0}}), PreconditionViolation);
}

TEST_CASE("table lookups respect the depth limit") {
  const CoeffTable table = build_table(Family::bc, testing::xi_generic(2),
                                       testing::g_family(Family::bc, 2), 4);
  CHECK(table.at({{-1, 1}}) == Complex{0.0, 0.0});  // not dominant: no support
  CHECK_THROWS_AS(table.at({{5, 0}}), PreconditionViolation);  // level 10 > N
}
