#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "hyperwave/hyperwave.hpp"

namespace testing {

using hyperwave::Complex;
using hyperwave::Couplings;
using hyperwave::Family;
using hyperwave::PositionPoint;
using hyperwave::SpectralPoint;

inline double rel(Complex got, Complex want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline double absdiff(Complex got, Complex want) { return std::abs(got - want); }

// Deterministic uniform doubles, decoupled from the library's generator.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  Complex box(double re_lo, double re_hi, double im_lo, double im_hi) {
    const double re = uniform(re_lo, re_hi);
    return {re, uniform(im_lo, im_hi)};
  }
};

// The shared generic evaluation data used across the suite.
inline SpectralPoint xi_generic(int n) {
  static const Complex vals[] = {
      {0.83, 0.21}, {0.37, -0.40}, {1.91, 0.13}, {1.22, 0.55}};
  SpectralPoint xi;
  for (int j = 0; j < n; ++j) xi.xi.push_back(vals[j]);
  return xi;
}

// Strictly decreasing positive coordinates with all consecutive gaps (and the
// final coordinate) equal to `gap` + a slight spread to stay off symmetry.
inline PositionPoint x_spread(int n, double gap, double base) {
  PositionPoint x;
  for (int j = 0; j < n; ++j) {
    x.x.push_back(base + gap * static_cast<double>(n - 1 - j) +
                  0.05 * static_cast<double>(n - 1 - j));
  }
  return x;
}

inline Couplings g_family(Family f, int n, double scale = 1.0) {
  const Complex gS{0.6 * scale, 0.0};
  const Complex gM{0.9 * scale, 0.0};
  const Complex gL{1.3 * scale, 0.0};
  switch (f) {
    case Family::bc:
      return Couplings::normalized(n, gS, gM, gL);
    case Family::t:
      return Couplings::normalized(n, gS, {0.0, 0.0}, gL);
    case Family::cs:
      return Couplings::normalized(n, gS, gM, {0.0, 0.0});
  }
  return Couplings::zero(n);
}

constexpr Family kFamilies[] = {Family::bc, Family::t, Family::cs};

}  // namespace testing
