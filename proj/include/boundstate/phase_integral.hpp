#pragma once

// Integral form of the quantization condition for a single well between hard
// walls at a and b:
//
//   theta = int_{x_C}^{x_D} sqrt(E - V) dx        (allowed region)
//   l1    = int_{a}^{x_C}   sqrt(V - E) dx        (left barrier)
//   l3    = int_{x_D}^{b}   sqrt(V - E) dx        (right barrier)
//
// Eigenvalues are the zeros of
//
//   R(E) = cos(theta) (1 - exp(-2 (l1 + l3))) - sin(theta) (exp(-2 l1) + exp(-2 l3)),
//
// i.e. cot(theta) ((I1 I3)^2 - 1) = I1^2 + I3^2 with I = exp(l), multiplied
// through by sin(theta) / (I1 I3)^2. R is bounded by 3 and reduces to
// -2 sin(theta) for hard walls and cos(theta) for infinitely wide barriers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include "boundstate/errors.hpp"
#include "boundstate/potential.hpp"
#include "boundstate/quadrature.hpp"
#include "boundstate/rootfind.hpp"

namespace boundstate {

struct ActionDecomposition {
  double theta = 0.0;
  double ell_left = 0.0;
  double ell_right = 0.0;
};

struct IntegralOptions {
  std::size_t quad_nodes = 96;
  /// Replace the quadrature phase with the harmonic (pi E / 2) or Morse
  /// ((pi / lambda)(sqrt V0 - sqrt(V0 - E))) closed form when neither turning
  /// point is clamped to a wall.
  bool closed_form_phase = false;
  TurningPointOptions turning{};
};

namespace detail {

inline double checked_root(double radicand, double e, double x) {
  const double tol = 1e-8 * std::max(1.0, std::abs(e));
  if (radicand < -tol) {
    std::ostringstream msg;
    msg << "inconsistent region at x = " << x << " for E = " << e << " (radicand " << radicand << ")";
    throw inconsistent_region_error(msg.str());
  }
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

// x = mid + half sin(u): the sqrt branch points at both ends become smooth.
inline double allowed_phase(const PotentialSpec& spec, const GaussLegendreRule& rule, double x_c, double x_d,
                            double e) {
  const double mid = 0.5 * (x_c + x_d);
  const double half = 0.5 * (x_d - x_c);
  return rule.integrate(
      [&](double u) {
        const double x = mid + half * std::sin(u);
        return checked_root(e - spec.value_unchecked(x), e, x) * half * std::cos(u);
      },
      -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
}

// x = turn + (wall - turn) s^2: the branch point at the turning point (s = 0)
// becomes smooth.
inline double barrier_action(const PotentialSpec& spec, const GaussLegendreRule& rule, double turn, double wall,
                             double e) {
  const double span = wall - turn;
  if (span == 0.0)
    return 0.0;
  const double value = rule.integrate(
      [&](double s) {
        const double x = turn + span * s * s;
        return checked_root(spec.value_unchecked(x) - e, e, x) * 2.0 * s;
      },
      0.0, 1.0);
  return std::abs(span) * value;
}

inline std::optional<double> closed_form_theta(const PotentialSpec& spec, double e) {
  if (spec.is<Harmonic>())
    return std::numbers::pi * e / 2.0;
  if (const auto* m = std::get_if<Morse>(&spec.kind()); m && e < m->depth)
    return std::numbers::pi / m->range * (std::sqrt(m->depth) - std::sqrt(m->depth - e));
  return std::nullopt;
}

} // namespace detail

/// theta, l1 and l3 at energy E, each by Gauss-Legendre with quad_nodes nodes.
inline ActionDecomposition action(const PotentialSpec& spec, double e, const GaussLegendreRule& rule,
                                  const IntegralOptions& opt = {}) {
  const TurningPoints tp = find_turning_points(spec, e, opt.turning);
  ActionDecomposition d;
  std::optional<double> theta;
  if (opt.closed_form_phase && !tp.left_clamped && !tp.right_clamped)
    theta = detail::closed_form_theta(spec, e);
  d.theta = theta ? *theta : detail::allowed_phase(spec, rule, tp.x_c, tp.x_d, e);
  d.ell_left = tp.left_clamped ? 0.0 : detail::barrier_action(spec, rule, tp.x_c, spec.a(), e);
  d.ell_right = tp.right_clamped ? 0.0 : detail::barrier_action(spec, rule, tp.x_d, spec.b(), e);
  return d;
}

inline ActionDecomposition action(const PotentialSpec& spec, double e, const IntegralOptions& opt = {}) {
  return action(spec, e, gauss_legendre(opt.quad_nodes), opt);
}

/// Bounded real root function; |R| <= 3.
inline double condition_value(const ActionDecomposition& d) {
  const double left = std::exp(-2.0 * d.ell_left);
  const double right = std::exp(-2.0 * d.ell_right);
  return std::cos(d.theta) * (1.0 - left * right) - std::sin(d.theta) * (left + right);
}

/// R(E) as a callable for root finding.
class IntegralCondition {
public:
  IntegralCondition(const PotentialSpec& spec, const IntegralOptions& opt = {})
      : spec_(spec), opt_(opt), rule_(gauss_legendre(opt.quad_nodes)) {}

  double operator()(double e) const { return condition_value(action(spec_, e, rule_, opt_)); }

private:
  const PotentialSpec& spec_;
  IntegralOptions opt_;
  GaussLegendreRule rule_;
};

/// Eigenvalues in the window from zeros of R(E). Samples below the well
/// bottom (no allowed region) are skipped silently; a multi-well potential
/// aborts with multi_well_error.
inline RootSearch solve_integral(const PotentialSpec& spec, const RootConfig& cfg, const IntegralOptions& opt = {}) {
  cfg.validate();
  const IntegralCondition cond(spec, opt);
  auto found = find_roots(cond, cfg, Method::integral);
  std::vector<BracketFailure> kept;
  for (auto& failure : found.failures) {
    if (!failure.error) {
      kept.push_back(std::move(failure));
      continue;
    }
    try {
      std::rethrow_exception(failure.error);
    } catch (const multi_well_error&) {
      throw;
    } catch (const no_allowed_region_error&) {
    } catch (...) {
      kept.push_back(std::move(failure));
    }
  }
  found.failures = std::move(kept);
  return found;
}

} // namespace boundstate
