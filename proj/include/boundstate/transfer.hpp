#pragma once

// Discrete quantization condition for a piecewise-constant potential between
// hard walls. Each cell i carries psi = X_i exp(k_i x) + Y_i exp(-k_i x);
// matching psi and psi' at the cell boundaries eliminates (X_i, Y_i) and
// leaves the pair (P_i, Q_i) propagated by
//
//   P_i = (c + 1) a P_{i-1} + (c - 1) b Q_{i-1}
//   Q_i = (c - 1) a P_{i-1} + (c + 1) b Q_{i-1}
//
// with c = c_{i,i-1}, a = exp(-k_{i-1} h), b = exp(k_{i-1} h), P_0 = 1,
// Q_0 = -1 (psi(a) = 0). Energies are eigenvalues where
// B_n = a_n P_n + b_n Q_n vanishes (psi(b) = 0).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "boundstate/errors.hpp"
#include "boundstate/potential.hpp"
#include "boundstate/rootfind.hpp"

namespace boundstate {

using complex = std::complex<double>;

enum class CouplingMode {
  exact,      ///< c = sqrt((V_i - E)/(V_{i-1} - E))
  simplified, ///< c in {1, +i, -i} by the sign pattern of V - E
};

/// Running (P, Q), rescaled so max(|P|, |Q|) = 1; the true pair is
/// (P, Q) * exp(log_scale).
struct StepState {
  complex p{1.0, 0.0};
  complex q{-1.0, 0.0};
  double log_scale = 0.0;
};

/// Rescaled B_n with its scale; detector is the real root indicator
/// Re(B exp(-i phi)) for the reference phase phi of the scan.
struct ConditionValue {
  complex b;
  double log_scale = 0.0;
  double detector = 0.0;
};

/// k = sqrt(V - E): real >= 0 in forbidden cells, positive imaginary in
/// allowed ones.
inline complex wavenumber(double v, double e) {
  const double s = v - e;
  return s >= 0.0 ? complex(std::sqrt(s), 0.0) : complex(0.0, std::sqrt(-s));
}

/// c_{i,i-1} across the boundary from the cell with V_prev to the cell with V_cur.
///
/// Exact mode takes the ratio of principal wavenumbers k_i / k_{i-1}, the
/// branch of sqrt((V_i - E)/(V_{i-1} - E)) consistent with the a, b factors;
/// across a turning point it is -i|.| when V increases and +i|.| when V
/// decreases. Simplified mode keeps only the phase pattern: 1 without a
/// crossing, +i when V increases across E and -i when it decreases. In both
/// modes c_{i,j} c_{j,i} = 1.
inline complex coupling(double v_cur, double v_prev, double e, CouplingMode mode) {
  const double s_cur = v_cur - e;
  const double s_prev = v_prev - e;
  if (mode == CouplingMode::simplified) {
    if (s_cur == 0.0 || s_prev == 0.0 || (s_cur > 0.0) == (s_prev > 0.0))
      return {1.0, 0.0};
    return v_cur > v_prev ? complex(0.0, 1.0) : complex(0.0, -1.0);
  }
  if (s_prev == 0.0) {
    std::ostringstream msg;
    msg << "degenerate step: V_prev == E == " << e;
    throw degenerate_step_error(msg.str());
  }
  return wavenumber(v_cur, e) / wavenumber(v_prev, e);
}

namespace detail {

// exp(-k h) and exp(k h) divided by exp(|Re k h|), so neither overflows; the
// removed factor is returned as a log.
struct CellFactors {
  complex a;
  complex b;
  double log_factor;
};

inline CellFactors cell_factors(complex k, double h) {
  const complex kh = k * h;
  const double shift = std::abs(kh.real());
  return {std::exp(-kh - shift), std::exp(kh - shift), shift};
}

inline void rescale(StepState& s) {
  const double m = std::max(std::abs(s.p), std::abs(s.q));
  if (m > 0.0 && std::isfinite(m)) {
    s.p /= m;
    s.q /= m;
    s.log_scale += std::log(m);
  }
}

inline StepState advance(const StepState& s, complex k_prev, complex c, double h) {
  const auto f = cell_factors(k_prev, h);
  StepState next;
  next.p = (c + 1.0) * f.a * s.p + (c - 1.0) * f.b * s.q;
  next.q = (c - 1.0) * f.a * s.p + (c + 1.0) * f.b * s.q;
  next.log_scale = s.log_scale + f.log_factor;
  rescale(next);
  return next;
}

inline double nudge_step(double e) { return std::ldexp(std::max(1.0, std::abs(e)), -40); }

} // namespace detail

/// One recurrence update from the cell with V_prev into the cell with V_cur,
/// followed by rescaling to unit max-magnitude.
inline StepState step(const StepState& state, double v_prev, double v_cur, double e, double h,
                      CouplingMode mode = CouplingMode::exact) {
  const complex c = coupling(v_cur, v_prev, e, mode);
  return detail::advance(state, wavenumber(v_prev, e), c, h);
}

/// B = a_n P_n + b_n Q_n for the last cell (potential v_last), detector
/// projected on the line exp(i reference_phase).
inline ConditionValue close(const StepState& state, double v_last, double e, double h,
                            double reference_phase = 0.0) {
  const auto f = detail::cell_factors(wavenumber(v_last, e), h);
  ConditionValue out;
  out.b = f.a * state.p + f.b * state.q;
  out.log_scale = state.log_scale + f.log_factor;
  out.detector = (out.b * std::polar(1.0, -reference_phase)).real();
  return out;
}

/// Energy actually used by evaluate_condition: E moved by 2^-40 max(1, |E|)
/// until it coincides with no cell potential.
inline double nudged_energy(std::span<const double> values, double e) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    if (std::find(values.begin(), values.end(), e) == values.end())
      return e;
    e += detail::nudge_step(e);
  }
  return e;
}

/// Condition value on a precomputed discretization.
inline ConditionValue evaluate_condition(const Discretization& d, double e, CouplingMode mode = CouplingMode::exact,
                                         double reference_phase = 0.0) {
  const std::span<const double> v(d.values);
  e = nudged_energy(v, e);
  StepState state;
  complex k_prev = wavenumber(v[0], e);
  for (std::size_t i = 1; i < v.size(); ++i) {
    const complex c = coupling(v[i], v[i - 1], e, mode);
    state = detail::advance(state, k_prev, c, d.h);
    k_prev = wavenumber(v[i], e);
  }
  return close(state, v.back(), e, d.h, reference_phase);
}

inline ConditionValue evaluate_condition(const PotentialSpec& spec, std::size_t n, double e,
                                         CouplingMode mode = CouplingMode::exact, double reference_phase = 0.0) {
  return evaluate_condition(discretize(spec, n), e, mode, reference_phase);
}

struct DiscreteOptions {
  std::size_t n = 4000;
  CouplingMode mode = CouplingMode::exact;
};

/// Sign-changing real function of E for one contiguous scan. The reference
/// phase is arg(B) at the first window sample with a usable B.
class DiscreteCondition {
public:
  DiscreteCondition(const PotentialSpec& spec, const RootConfig& cfg, const DiscreteOptions& opt = {})
      : disc_(discretize(spec, opt.n)), mode_(opt.mode) {
    for (double e : energy_grid(cfg)) {
      const auto cv = evaluate_condition(disc_, e, mode_);
      if (std::abs(cv.b) > 0.0 && std::isfinite(std::abs(cv.b))) {
        phase_ = std::arg(cv.b);
        break;
      }
    }
  }

  [[nodiscard]] ConditionValue value(double e) const { return evaluate_condition(disc_, e, mode_, phase_); }
  double operator()(double e) const { return value(e).detector; }

  [[nodiscard]] double reference_phase() const noexcept { return phase_; }
  [[nodiscard]] const Discretization& discretization() const noexcept { return disc_; }

  /// Root acceptance: |B| at the root is tiny relative to the bracket ends, or
  /// B stays on the reference line at both ends (a genuine crossing of the
  /// line through the origin rather than a rotation of B).
  [[nodiscard]] bool accept(const EnergyLevel& level) const {
    constexpr double kRel = 1e-6;
    const double half = std::max(0.5 * level.bracket_width, std::abs(level.energy) * 1e-15);
    const auto lo = value(level.energy - half);
    const auto hi = value(level.energy + half);
    const auto mid = value(level.energy);
    const double scale = std::max(std::abs(lo.b), std::abs(hi.b));
    if (std::abs(mid.b) <= kRel * scale)
      return true;
    auto on_line = [this](const ConditionValue& cv) {
      const double off = (cv.b * std::polar(1.0, -phase_)).imag();
      return std::abs(off) <= kRel * std::abs(cv.b);
    };
    return on_line(lo) && on_line(hi);
  }

private:
  Discretization disc_;
  CouplingMode mode_;
  double phase_ = 0.0;
};

/// Eigenvalues in the window from sign changes of the discrete detector.
/// Rejected sign changes are recorded as notes.
inline RootSearch solve_discrete(const PotentialSpec& spec, const RootConfig& cfg, const DiscreteOptions& opt = {}) {
  cfg.validate();
  const DiscreteCondition cond(spec, cfg, opt);
  auto found = find_roots(cond, cfg, Method::discrete);
  RootSearch out;
  out.failures = std::move(found.failures);
  for (const auto& level : found.levels) {
    if (cond.accept(level)) {
      out.levels.push_back(level);
      out.levels.back().index = out.levels.size() - 1;
    } else {
      std::ostringstream msg;
      msg << "sign change near E = " << level.energy << " rejected: B leaves the reference line";
      out.notes.push_back(msg.str());
    }
  }
  return out;
}

} // namespace boundstate
