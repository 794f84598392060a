#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hyperwave/hyperwave.hpp"
#include "support/common.hpp"

using namespace hyperwave;
using testing::Rng;

namespace {

// z off the real axis or away from the nonpositive integers, suitable for all
// three gamma identities at once.
Complex grid_point(Rng& rng) {
  while (true) {
    Complex z = rng.box(-8.0, 8.0, -8.0, 8.0);
    if (dist_to_integers(z) < 0.1) continue;
    if (dist_to_integers(2.0 * z) < 0.1) continue;  // duplication uses 2z
    return z;
  }
}

}  // namespace

TEST_CASE("log gamma reproduces reference values") {
  struct P {
    Complex z, want;
  };
  // 30-digit multiple-precision references.
  const P pts[] = {
      {{2.0, 3.0}, {-2.0928517530927333496, 2.3023965434668676262}},
      {{0.5, 0.0}, {0.57236494292470008707, 0.0}},
      {{5.0, 0.0}, {3.1780538303479456196, 0.0}},
      {{-2.5, 1.5}, {-3.7175134511917918462, -7.713065525834192526}},
      {{0.25, -4.0}, {-5.7103271516305994401, -1.1550849149187579488}},
      {{10.0, 10.0}, {8.2361317504487178437, 23.94870341378203736}},
      {{-6.3, -0.7}, {-7.4770893620773274071, 20.030782267687288817}},
      {{0.001, 2.0}, {-2.568511437974074286, -1.4393294421361392699}},
  };
  for (const auto& p : pts) {
    const Complex got = log_gamma(p.z);
    CHECK(std::abs(got - p.want) <= 1e-13 * (1.0 + std::abs(p.want)));
  }
  CHECK(std::abs(std::exp(log_gamma({4.0, 0.0})) - 6.0) < 1e-14);
  CHECK(std::abs(std::exp(log_gamma({0.5, 0.0})) - std::sqrt(std::numbers::pi)) < 1e-15);
}

TEST_CASE("log gamma respects conjugation") {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Complex z = grid_point(rng);
    const Complex a = log_gamma(z);
    const Complex b = log_gamma(std::conj(z));
    CHECK(std::abs(std::conj(a) - b) <= 1e-13 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("gamma identities hold on a seeded grid") {
  Rng rng(101);
  for (int i = 0; i < 1000; ++i) {
    const Complex z = grid_point(rng);

    // Recursion Gamma(z+1) = z Gamma(z), exponentiated to dodge branch jumps.
    const Complex rec = std::exp(log_gamma(z + 1.0) - log_gamma(z)) / z;
    CHECK(std::abs(rec - 1.0) <= 1e-12);

    // Reflection Gamma(z) Gamma(1-z) = pi / sin(pi z).
    const Complex refl =
        std::exp(log_gamma(z) + log_gamma(1.0 - z)) * std::sin(std::numbers::pi * z) /
        std::numbers::pi;
    CHECK(std::abs(refl - 1.0) <= 1e-12);

    // Duplication on the right half plane, on the principal sheets directly.
    const Complex zr = {std::abs(z.real()) + 0.25, z.imag()};
    const Complex lhs = log_gamma(2.0 * zr);
    const Complex rhs = log_gamma(zr) + log_gamma(zr + 0.5) +
                        (2.0 * zr - 1.0) * std::numbers::ln2 -
                        0.5 * std::log(2.0 * std::numbers::pi);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("log gamma pole handling") {
  CHECK_THROWS_AS(log_gamma({0.0, 0.0}), PoleOfGamma);
  CHECK_THROWS_AS(log_gamma({-3.0, 0.0}), PoleOfGamma);
  CHECK_THROWS_AS(log_gamma({-3.0, 1e-12}), PoleOfGamma);
  CHECK_NOTHROW(log_gamma({-3.0, 1e-6}));
  Complex out;
  CHECK_FALSE(try_log_gamma({-2.0, 0.0}, out));
  CHECK(try_log_gamma({-2.5, 0.0}, out));
}

TEST_CASE("c-factor closed forms") {
  Couplings g = Couplings::normalized(1, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});

  // Morse-type w at gS = 0: Gamma(2z)/Gamma(1/2 + z); at z = 1 this is
  // 1/Gamma(3/2) = 2/sqrt(pi).
  const Complex w_cs = c_factor(Family::cs, CKind::w, {1.0, 0.0}, g);
  CHECK(std::abs(w_cs - 2.0 / std::sqrt(std::numbers::pi)) < 1e-14);

  // The hyperbolic w collapses to 1 at zero couplings.
  const Complex w_bc = c_factor(Family::bc, CKind::w, {0.8, 0.3}, g);
  CHECK(std::abs(w_bc - 1.0) < 1e-14);

  // v at zero medium coupling is 1 for the hyperbolic and Morse families and
  // a bare Gamma for the chain family.
  CHECK(std::abs(c_factor(Family::bc, CKind::v, {0.9, 0.4}, g) - 1.0) < 1e-14);
  CHECK(std::abs(c_factor(Family::cs, CKind::v, {0.9, 0.4}, g) - 1.0) < 1e-14);
  CHECK(std::abs(c_factor(Family::t, CKind::v, {3.0, 0.0}, g) - 2.0) < 1e-13);

  // Generic couplings against a direct gamma assembly.
  Couplings gen = Couplings::normalized(1, {0.6, 0.1}, {0.9, -0.2}, {1.3, 0.0});
  const Complex z{0.83, 0.21};
  const Complex v_direct =
      std::exp(log_gamma(z) - log_gamma(gen.gM + z));
  CHECK(std::abs(c_factor(Family::bc, CKind::v, z, gen) - v_direct) <
        1e-13 * std::abs(v_direct));
  const Complex w_direct = std::exp(log_gamma(2.0 * z) + log_gamma(0.5 * gen.gS + z) -
                                    log_gamma(gen.gS + 2.0 * z) -
                                    log_gamma(0.5 * gen.gS + gen.gL + z));
  CHECK(std::abs(c_factor(Family::bc, CKind::w, z, gen) - w_direct) <
        1e-13 * std::abs(w_direct));
}

TEST_CASE("c-function equals the product of its factors") {
  for (Family f : testing::kFamilies) {
    for (int n : {1, 2, 3}) {
      const Couplings g = testing::g_family(f, n, 0.7);
      const SpectralPoint xi = testing::xi_generic(n);
      const CFunctionValue cv = c_function(f, xi, g);
      Complex direct{1.0, 0.0};
      for (int j = 0; j < n; ++j) {
        direct *= c_factor(f, CKind::w, xi.xi[static_cast<std::size_t>(j)], g);
      }
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          direct *= c_factor(f, CKind::v, xi.xi[static_cast<std::size_t>(j)] + xi.xi[static_cast<std::size_t>(k)], g);
          direct *= c_factor(f, CKind::v, xi.xi[static_cast<std::size_t>(j)] - xi.xi[static_cast<std::size_t>(k)], g);
        }
      }
      CHECK(std::abs(cv.value() - direct) <= 1e-12 * std::abs(direct));
      // The log variant agrees where the value is nonzero.
      const Complex lv = log_c_function(f, xi, g);
      CHECK(std::abs(std::exp(lv) - direct) <= 1e-12 * std::abs(direct));
    }
  }
}

TEST_CASE("reciprocal gamma poles zero out the c-function") {
  // gS/2 + gL + xi_1 = 0 puts a denominator gamma at its pole while every
  // numerator stays regular: the weight must vanish instead of throwing.
  Couplings g = Couplings::normalized(1, {0.5, 0.0}, {0.0, 0.0}, {0.85, 0.0});
  SpectralPoint xi{{Complex(-1.1, 0.0)}};
  const CFunctionValue cv = c_function(Family::bc, xi, g);
  CHECK(std::abs(cv.value()) == 0.0);
  CHECK_THROWS_AS(log_c_function(Family::bc, xi, g), PoleOfGamma);
}

TEST_CASE("degeneration prefactors") {
  Couplings g = Couplings::normalized(2, {0.6, 0.0}, {1.7, 0.0}, {1.3, 0.0});
  const Complex m = log_confluence_prefactor(DegenerationKind::M, g, 2);
  CHECK(std::abs(m - 2.0 * log_gamma(g.gM)) < 1e-14);
  const Complex l = log_confluence_prefactor(DegenerationKind::L, g, 2);
  const Complex unit = log_gamma(g.gS) + log_gamma(0.5 * g.gS + g.gL) -
                       log_gamma(0.5 * g.gS) - log_gamma(0.5 * (1.0 + g.gS));
  CHECK(std::abs(l - 2.0 * unit) < 1e-14);
  CHECK(std::abs(confluence_prefactor(DegenerationKind::M, g, 2) - std::exp(m)) < 1e-14);
}

TEST_CASE("weight and shifted exponent") {
  Couplings g = Couplings::normalized(2, {0.6, 0.0}, {0.9, 0.0}, {1.3, 0.0});
  const PositionPoint x{{2.3, 1.1}};
  const auto [delta, rho_g] = weight_and_rho(x, g);

  auto fac = [](double y) { return 2.0 * std::sinh(y / 2.0); };
  const Complex expect = std::exp(
      g.gS * (std::log(fac(2.3)) + std::log(fac(1.1))) +
      g.gL * (std::log(fac(4.6)) + std::log(fac(2.2))) +
      g.gM * (std::log(fac(2.3 + 1.1)) + std::log(fac(2.3 - 1.1))));
  CHECK(std::abs(delta - expect) <= 1e-13 * std::abs(expect));

  REQUIRE(rho_g.size() == 2);
  CHECK(std::abs(rho_g[0] - (g.gM + 0.5 * g.gS + g.gL)) < 1e-15);
  CHECK(std::abs(rho_g[1] - (0.5 * g.gS + g.gL)) < 1e-15);

  CHECK_THROWS_AS(weight_and_rho({{1.1, 2.3}}, g), ChamberViolation);
  CHECK_THROWS_AS(weight_and_rho({{2.3, 1e-9}}, g), ChamberViolation);
}
