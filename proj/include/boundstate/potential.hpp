#pragma once

// One-dimensional potentials V(x) confined between hard walls at a and b.
// Units: hbar = 1, 2m = 1, so energies are inverse lengths squared.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "boundstate/errors.hpp"

namespace boundstate {

/// V = 0 on [-L, L].
struct SquareWell {
  double half_width;
};

/// V = x^2.
struct Harmonic {};

/// V = V0 (1 - exp(-lambda x))^2.
struct Morse {
  double depth;
  double range;
};

/// V = sum_k c_k x^k.
struct Polynomial {
  std::vector<double> coefficients;
};

struct Sample {
  double x;
  double v;
};

/// Piecewise-linear interpolation between samples.
struct Tabulated {
  std::vector<Sample> samples;
};

using PotentialKind = std::variant<SquareWell, Harmonic, Morse, Polynomial, Tabulated>;

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
} // namespace detail

/// Potential plus its wall positions. Immutable; the factories enforce the
/// per-variant invariants and throw std::invalid_argument on violation.
class PotentialSpec {
public:
  static PotentialSpec square_well(double half_width) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
      throw std::invalid_argument("square well half width must be positive");
    return PotentialSpec(SquareWell{half_width}, -half_width, half_width);
  }

  static PotentialSpec harmonic(double a, double b) { return PotentialSpec(Harmonic{}, a, b); }

  static PotentialSpec morse(double depth, double range, double a, double b) {
    if (!(depth > 0.0) || !(range > 0.0))
      throw std::invalid_argument("Morse potential requires V0 > 0 and lambda > 0");
    return PotentialSpec(Morse{depth, range}, a, b);
  }

  static PotentialSpec polynomial(std::vector<double> coefficients, double a, double b) {
    if (coefficients.empty())
      throw std::invalid_argument("polynomial potential needs at least one coefficient");
    return PotentialSpec(Polynomial{std::move(coefficients)}, a, b);
  }

  static PotentialSpec tabulated(std::vector<Sample> samples, double a, double b) {
    if (samples.size() < 2)
      throw std::invalid_argument("tabulated potential needs at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
      if (!(samples[i].x > samples[i - 1].x))
        throw std::invalid_argument("tabulated samples must be strictly increasing in x");
    if (samples.front().x > a || samples.back().x < b)
      throw std::invalid_argument("tabulated samples must cover [a, b]");
    return PotentialSpec(Tabulated{std::move(samples)}, a, b);
  }

  /// Tabulated potential whose domain is the sampled range.
  static PotentialSpec tabulated(std::vector<Sample> samples) {
    if (samples.empty())
      throw std::invalid_argument("tabulated potential needs at least two samples");
    const double a = samples.front().x;
    const double b = samples.back().x;
    return tabulated(std::move(samples), a, b);
  }

  [[nodiscard]] const PotentialKind& kind() const noexcept { return kind_; }
  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double b() const noexcept { return b_; }
  [[nodiscard]] double width() const noexcept { return b_ - a_; }

  template <class T>
  [[nodiscard]] bool is() const noexcept {
    return std::holds_alternative<T>(kind_);
  }

  /// V(x) without the domain check; callers guarantee a <= x <= b.
  [[nodiscard]] double value_unchecked(double x) const {
    return std::visit(
        detail::overloaded{
            [](const SquareWell&) { return 0.0; },
            [x](const Harmonic&) { return x * x; },
            [x](const Morse& m) {
              const double t = -std::expm1(-m.range * x);
              return m.depth * t * t;
            },
            [x](const Polynomial& p) {
              double acc = 0.0;
              for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it)
                acc = acc * x + *it;
              return acc;
            },
            [x](const Tabulated& t) { return interpolate(t.samples, x); },
        },
        kind_);
  }

  [[nodiscard]] std::string name() const {
    return std::visit(detail::overloaded{
                          [](const SquareWell&) { return std::string("square_well"); },
                          [](const Harmonic&) { return std::string("harmonic"); },
                          [](const Morse&) { return std::string("morse"); },
                          [](const Polynomial&) { return std::string("polynomial"); },
                          [](const Tabulated&) { return std::string("tabulated"); },
                      },
                      kind_);
  }

private:
  PotentialSpec(PotentialKind kind, double a, double b) : kind_(std::move(kind)), a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
      throw std::invalid_argument("potential domain requires finite a < b");
  }

  static double interpolate(const std::vector<Sample>& s, double x) {
    auto hi = std::upper_bound(s.begin(), s.end(), x,
                               [](double value, const Sample& p) { return value < p.x; });
    if (hi == s.begin())
      return s.front().v;
    if (hi == s.end())
      return s.back().v;
    auto lo = std::prev(hi);
    const double t = (x - lo->x) / (hi->x - lo->x);
    return lo->v + t * (hi->v - lo->v);
  }

  PotentialKind kind_;
  double a_;
  double b_;
};

/// V(x) for a <= x <= b; throws domain_error outside.
inline double evaluate(const PotentialSpec& spec, double x) {
  if (!(x >= spec.a() && x <= spec.b())) {
    std::ostringstream msg;
    msg << "x = " << x << " outside potential domain [" << spec.a() << ", " << spec.b() << "]";
    throw domain_error(msg.str());
  }
  return spec.value_unchecked(x);
}

/// Midpoint sampling of V over n + 1 equal cells of width h = (b - a)/(n + 1).
struct Discretization {
  std::size_t n = 0;
  double h = 0.0;
  std::vector<double> midpoints;
  std::vector<double> values;
};

inline Discretization discretize(const PotentialSpec& spec, std::size_t n) {
  Discretization d;
  d.n = n;
  d.h = spec.width() / static_cast<double>(n + 1);
  d.midpoints.resize(n + 1);
  d.values.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    d.midpoints[i] = spec.a() + (static_cast<double>(i) + 0.5) * d.h;
    d.values[i] = evaluate(spec, d.midpoints[i]);
  }
  return d;
}

/// Classical turning points bounding the allowed region V(x) < E. A point
/// pinned to a wall (V < E at the wall) is flagged as clamped.
struct TurningPoints {
  double x_c;
  double x_d;
  bool left_clamped = false;
  bool right_clamped = false;
};

struct TurningPointOptions {
  std::size_t scan_points = 4096;
  double x_rel_tol = 1e-12;
  double tol_turn = 1e-10;
};

namespace detail {

inline TurningPoints clamp_turning_points(const PotentialSpec& spec, double x_c, double x_d, double e) {
  TurningPoints tp{x_c, x_d};
  if (tp.x_c <= spec.a()) {
    tp.x_c = spec.a();
    tp.left_clamped = true;
  }
  if (tp.x_d >= spec.b()) {
    tp.x_d = spec.b();
    tp.right_clamped = true;
  }
  if (!(tp.x_c < tp.x_d)) {
    std::ostringstream msg;
    msg << "no classically allowed region at E = " << e;
    throw no_allowed_region_error(msg.str());
  }
  return tp;
}

// Root of V(x) - E on [lo, hi] where the sign of V - E differs at the ends.
inline double bisect_turning_point(const PotentialSpec& spec, double lo, double hi, double e,
                                   const TurningPointOptions& opt) {
  double g_lo = spec.value_unchecked(lo) - e;
  const double x_tol = opt.x_rel_tol * spec.width();
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double g_mid = spec.value_unchecked(mid) - e;
    if (g_mid == 0.0)
      return mid;
    if ((hi - lo) < x_tol && std::abs(g_mid) <= opt.tol_turn)
      return mid;
    if (mid <= lo || mid >= hi)
      return mid;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

} // namespace detail

/// Turning points of a single-well potential at energy E. Harmonic and Morse
/// use closed forms; other variants scan a uniform grid and bisect.
inline TurningPoints find_turning_points(const PotentialSpec& spec, double e,
                                         const TurningPointOptions& opt = {}) {
  if (spec.is<SquareWell>()) {
    if (!(e > 0.0)) {
      std::ostringstream msg;
      msg << "no classically allowed region at E = " << e;
      throw no_allowed_region_error(msg.str());
    }
    return detail::clamp_turning_points(spec, spec.a(), spec.b(), e);
  }
  if (spec.is<Harmonic>()) {
    if (!(e > 0.0)) {
      std::ostringstream msg;
      msg << "no classically allowed region at E = " << e;
      throw no_allowed_region_error(msg.str());
    }
    const double r = std::sqrt(e);
    return detail::clamp_turning_points(spec, -r, r, e);
  }
  if (const auto* m = std::get_if<Morse>(&spec.kind())) {
    if (!(e > 0.0)) {
      std::ostringstream msg;
      msg << "no classically allowed region at E = " << e;
      throw no_allowed_region_error(msg.str());
    }
    const double s = std::sqrt(e / m->depth);
    const double x_c = -std::log1p(s) / m->range;
    const double x_d = s < 1.0 ? -std::log1p(-s) / m->range : std::numeric_limits<double>::infinity();
    return detail::clamp_turning_points(spec, x_c, x_d, e);
  }

  const std::size_t count = std::max<std::size_t>(opt.scan_points, 2);
  const double dx = spec.width() / static_cast<double>(count - 1);
  auto grid = [&](std::size_t j) { return j + 1 == count ? spec.b() : spec.a() + static_cast<double>(j) * dx; };

  std::size_t first = count;
  std::size_t last = count;
  std::size_t runs = 0;
  bool prev_allowed = false;
  for (std::size_t j = 0; j < count; ++j) {
    const bool allowed = spec.value_unchecked(grid(j)) - e < 0.0;
    if (allowed && !prev_allowed) {
      ++runs;
      if (runs == 1)
        first = j;
    }
    if (allowed && runs == 1)
      last = j;
    prev_allowed = allowed;
  }
  if (runs == 0) {
    std::ostringstream msg;
    msg << "no classically allowed region at E = " << e;
    throw no_allowed_region_error(msg.str());
  }
  if (runs > 1) {
    std::ostringstream msg;
    msg << "potential has " << runs << " separate allowed regions at E = " << e
        << "; the integral condition assumes a single well";
    throw multi_well_error(msg.str());
  }

  TurningPoints tp{spec.a(), spec.b()};
  if (first == 0)
    tp.left_clamped = true;
  else
    tp.x_c = detail::bisect_turning_point(spec, grid(first - 1), grid(first), e, opt);
  if (last + 1 == count)
    tp.right_clamped = true;
  else
    tp.x_d = detail::bisect_turning_point(spec, grid(last), grid(last + 1), e, opt);
  return tp;
}

} // namespace boundstate
