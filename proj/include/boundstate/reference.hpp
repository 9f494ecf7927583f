#pragma once

// Closed-form spectra and quantization conditions for the square well, the
// harmonic oscillator and the Morse potential (hbar = 1, 2m = 1).

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "boundstate/errors.hpp"
#include "boundstate/rootfind.hpp"

namespace boundstate {

enum class Family { square_well, harmonic_limit, harmonic_finite_l, morse };

struct ClosedFormSpectrum {
  Family family;
  std::vector<EnergyLevel> levels;
  /// Set when fewer levels exist than were requested.
  bool truncated = false;
};

/// E_p = p^2 pi^2 / (2L)^2 for p = 1..count.
inline ClosedFormSpectrum square_well_levels(double half_width, std::size_t count) {
  if (!(half_width > 0.0))
    throw std::invalid_argument("square well half width must be positive");
  ClosedFormSpectrum s{Family::square_well, {}, false};
  const double width = 2.0 * half_width;
  for (std::size_t p = 1; p <= count; ++p) {
    const double k = static_cast<double>(p) * std::numbers::pi / width;
    s.levels.push_back({p - 1, k * k, 0.0, 0.0, Method::closed_form});
  }
  return s;
}

/// E_p = 2 (p + 1/2) for p = 0..count-1.
inline ClosedFormSpectrum ho_levels(std::size_t count) {
  ClosedFormSpectrum s{Family::harmonic_limit, {}, false};
  for (std::size_t p = 0; p < count; ++p)
    s.levels.push_back({p, 2.0 * static_cast<double>(p) + 1.0, 0.0, 0.0, Method::closed_form});
  return s;
}

/// Barrier exponent S = L sqrt(L^2 - E) - E ln(L + sqrt(L^2 - E)) + E ln sqrt(E),
/// twice the action under V = x^2 from sqrt(E) to L.
inline double ho_barrier_exponent(double half_width, double e) {
  const double r = std::sqrt(half_width * half_width - e);
  return half_width * r - e * std::log(half_width + r) + 0.5 * e * std::log(e);
}

/// Harmonic oscillator confined to [-L, L]: cot(pi E / 2) = 1 / sinh(S) in the
/// pole-free form cos(pi E / 2) sinh(S) - sin(pi E / 2).
inline double ho_finite_condition(double half_width, double e) {
  if (!(half_width > 0.0) || !(e > 0.0))
    throw std::invalid_argument("finite harmonic condition requires L > 0 and E > 0");
  if (e >= half_width * half_width) {
    std::ostringstream msg;
    msg << "E = " << e << " reaches the wall height L^2 = " << half_width * half_width;
    throw barrier_vanishes_error(msg.str());
  }
  const double phase = std::numbers::pi * e / 2.0;
  return std::cos(phase) * std::sinh(ho_barrier_exponent(half_width, e)) - std::sin(phase);
}

/// E_n = 2 lambda sqrt(V0) (n + 1/2) - lambda^2 (n + 1/2)^2, restricted to the
/// bound states n + 1/2 < sqrt(V0) / lambda.
inline ClosedFormSpectrum morse_levels(double depth, double range, std::size_t count) {
  if (!(depth > 0.0) || !(range > 0.0))
    throw std::invalid_argument("Morse levels require V0 > 0 and lambda > 0");
  ClosedFormSpectrum s{Family::morse, {}, false};
  const double cap = std::sqrt(depth) / range;
  for (std::size_t n = 0; n < count; ++n) {
    const double q = static_cast<double>(n) + 0.5;
    if (!(q < cap)) {
      s.truncated = true;
      break;
    }
    const double e = 2.0 * range * std::sqrt(depth) * q - range * range * q * q;
    s.levels.push_back({n, e, 0.0, 0.0, Method::closed_form});
  }
  return s;
}

/// Number of Morse bound states.
inline std::size_t morse_bound_count(double depth, double range) {
  const double cap = std::sqrt(depth) / range;
  auto n = static_cast<std::size_t>(std::ceil(cap - 0.5));
  while (n > 0 && !(static_cast<double>(n - 1) + 0.5 < cap))
    --n;
  return n;
}

/// cos((pi / lambda)(sqrt V0 - sqrt(V0 - E))), zero exactly at the Morse levels.
inline double morse_condition(double depth, double range, double e) {
  if (!(depth > 0.0) || !(range > 0.0) || e < 0.0)
    throw std::invalid_argument("Morse condition requires V0 > 0, lambda > 0, E >= 0");
  if (e >= depth) {
    std::ostringstream msg;
    msg << "E = " << e << " is in the continuum (V0 = " << depth << ")";
    throw continuum_error(msg.str());
  }
  return std::cos(std::numbers::pi / range * (std::sqrt(depth) - std::sqrt(depth - e)));
}

} // namespace boundstate
