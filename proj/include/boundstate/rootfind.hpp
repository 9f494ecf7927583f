#pragma once

// Grid bracketing + bisection for all zeros of a real function on a window.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace boundstate {

enum class Method { discrete, integral, oracle, closed_form };

inline const char* to_string(Method m) noexcept {
  switch (m) {
  case Method::discrete:
    return "discrete";
  case Method::integral:
    return "integral";
  case Method::oracle:
    return "oracle";
  case Method::closed_form:
    return "closed";
  }
  return "unknown";
}

struct RootConfig {
  double e_min = 0.0;
  double e_max = 1.0;
  std::size_t grid_points = 1200;
  double tol_e = 1e-9;
  std::size_t max_iter = 200;

  void validate() const {
    if (!std::isfinite(e_min) || !std::isfinite(e_max) || !(e_min < e_max))
      throw std::invalid_argument("root window requires finite E_min < E_max");
    if (grid_points < 2)
      throw std::invalid_argument("root search needs at least two grid points");
    if (!(tol_e > 0.0))
      throw std::invalid_argument("root tolerance must be positive");
    if (max_iter == 0)
      throw std::invalid_argument("max_iter must be positive");
  }
};

/// One eigenvalue. `residual` is |f(E)| for root-found levels and 0 where no
/// condition function is involved (closed forms, Sturm bisection).
struct EnergyLevel {
  std::size_t index = 0;
  double energy = 0.0;
  double residual = 0.0;
  double bracket_width = 0.0;
  Method method = Method::discrete;
};

/// A bracket (or a single sample when e_lo == e_hi) that could not be resolved.
struct BracketFailure {
  double e_lo = 0.0;
  double e_hi = 0.0;
  std::string message;
  std::exception_ptr error;
};

struct RootSearch {
  std::vector<EnergyLevel> levels;
  std::vector<BracketFailure> failures;
  /// Non-fatal remarks, e.g. sign changes rejected by a solver's root check.
  std::vector<std::string> notes;
};

namespace detail {

inline constexpr double kNearMissRatio = 1e-3;
inline constexpr std::size_t kNearMissRefinement = 16;
inline constexpr double kTangencyResidual = 1e-12;

inline bool opposite_signs(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

inline std::string describe(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const std::exception& e) {
    return e.what();
  } catch (...) {
    return "unknown error";
  }
}

template <class F>
class RootSearcher {
public:
  RootSearcher(F& f, const RootConfig& cfg, Method method) : f_(f), cfg_(cfg), method_(method) {}

  std::optional<double> sample(double e) {
    try {
      const double v = f_(e);
      if (std::isnan(v))
        throw std::domain_error("condition function returned NaN");
      return v;
    } catch (...) {
      auto ep = std::current_exception();
      result_.failures.push_back({e, e, describe(ep), ep});
      return std::nullopt;
    }
  }

  void bisect(double lo, double hi, double f_lo) {
    const double lo0 = lo;
    const double hi0 = hi;
    try {
      std::size_t iter = 0;
      while (hi - lo > cfg_.tol_e && iter < cfg_.max_iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
          break;
        const double f_mid = f_(mid);
        if (std::isnan(f_mid))
          throw std::domain_error("condition function returned NaN");
        ++iter;
        if (f_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (opposite_signs(f_lo, f_mid)) {
          hi = mid;
        } else {
          lo = mid;
          f_lo = f_mid;
        }
      }
      const double width = hi - lo;
      const double mid = 0.5 * (lo + hi);
      if (width > cfg_.tol_e && mid > lo && mid < hi) {
        std::ostringstream msg;
        msg << "bisection did not reach tol_E within " << cfg_.max_iter << " iterations";
        result_.failures.push_back({lo0, hi0, msg.str(), nullptr});
        return;
      }
      push(mid, std::abs(f_(mid)), width);
    } catch (...) {
      auto ep = std::current_exception();
      result_.failures.push_back({lo0, hi0, describe(ep), ep});
    }
  }

  // Minimises |f| on [lo, hi] by ternary search; accepts a double root.
  void tangency(double lo, double hi) {
    try {
      std::size_t iter = 0;
      while (hi - lo > cfg_.tol_e && iter < cfg_.max_iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (std::abs(f_(m1)) < std::abs(f_(m2)))
          hi = m2;
        else
          lo = m1;
        ++iter;
      }
      const double mid = 0.5 * (lo + hi);
      const double r = std::abs(f_(mid));
      if (r <= kTangencyResidual)
        push(mid, r, hi - lo);
    } catch (...) {
      auto ep = std::current_exception();
      result_.failures.push_back({lo, hi, describe(ep), ep});
    }
  }

  void scan_cells(const std::vector<double>& grid, const std::vector<std::optional<double>>& vals) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (vals[j] && *vals[j] == 0.0)
        push(grid[j], 0.0, 0.0);
      if (j + 1 < grid.size() && vals[j] && vals[j + 1] && opposite_signs(*vals[j], *vals[j + 1]))
        bisect(grid[j], grid[j + 1], *vals[j]);
    }
  }

  void near_misses(const std::vector<double>& grid, const std::vector<std::optional<double>>& vals) {
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
      if (!vals[j - 1] || !vals[j] || !vals[j + 1])
        continue;
      const double l = *vals[j - 1];
      const double c = *vals[j];
      const double r = *vals[j + 1];
      if (c == 0.0 || opposite_signs(l, c) || opposite_signs(c, r))
        continue;
      if (!(std::abs(c) < kNearMissRatio * std::min(std::abs(l), std::abs(r))))
        continue;

      const std::size_t cells = 2 * kNearMissRefinement;
      std::vector<double> fine(cells + 1);
      std::vector<std::optional<double>> fine_vals(cells + 1);
      for (std::size_t k = 0; k <= cells; ++k) {
        fine[k] = grid[j - 1] + (grid[j + 1] - grid[j - 1]) * static_cast<double>(k) / static_cast<double>(cells);
        fine_vals[k] = k == 0 ? vals[j - 1] : (k == cells ? vals[j + 1] : (k == kNearMissRefinement ? vals[j] : sample(fine[k])));
      }
      const std::size_t before = result_.levels.size();
      for (std::size_t k = 1; k < cells; ++k)
        if (fine_vals[k] && *fine_vals[k] == 0.0 && k != kNearMissRefinement)
          push(fine[k], 0.0, 0.0);
      for (std::size_t k = 0; k < cells; ++k)
        if (fine_vals[k] && fine_vals[k + 1] && opposite_signs(*fine_vals[k], *fine_vals[k + 1]))
          bisect(fine[k], fine[k + 1], *fine_vals[k]);
      if (result_.levels.size() != before)
        continue;

      std::size_t best = kNearMissRefinement;
      for (std::size_t k = 1; k < cells; ++k)
        if (fine_vals[k] && fine_vals[best] && std::abs(*fine_vals[k]) < std::abs(*fine_vals[best]))
          best = k;
      tangency(fine[best - 1], fine[best + 1]);
    }
  }

  RootSearch finish() {
    auto& levels = result_.levels;
    std::sort(levels.begin(), levels.end(),
              [](const EnergyLevel& a, const EnergyLevel& b) { return a.energy < b.energy; });
    std::vector<EnergyLevel> merged;
    for (const auto& lvl : levels) {
      if (!merged.empty() && lvl.energy - merged.back().energy < 2.0 * cfg_.tol_e) {
        if (lvl.residual < merged.back().residual)
          merged.back() = lvl;
        continue;
      }
      merged.push_back(lvl);
    }
    for (std::size_t i = 0; i < merged.size(); ++i)
      merged[i].index = i;
    levels = std::move(merged);
    return std::move(result_);
  }

private:
  void push(double e, double residual, double width) { result_.levels.push_back({0, e, residual, width, method_}); }

  F& f_;
  const RootConfig& cfg_;
  Method method_;
  RootSearch result_;
};

} // namespace detail

/// Uniform grid over [E_min, E_max] (both ends included).
inline std::vector<double> energy_grid(const RootConfig& cfg) {
  std::vector<double> grid(cfg.grid_points);
  const double span = cfg.e_max - cfg.e_min;
  const double denom = static_cast<double>(cfg.grid_points - 1);
  for (std::size_t j = 0; j < cfg.grid_points; ++j)
    grid[j] = cfg.e_min + span * static_cast<double>(j) / denom;
  grid.back() = cfg.e_max;
  return grid;
}

/// All zeros of f on [E_min, E_max]: sign changes on the grid are bisected to
/// tol_E, and grid cells where |f| dips below 1e-3 of both neighbours without
/// changing sign are resampled 16x finer (double roots are accepted only if
/// |f| <= 1e-12 at the minimum). Evaluation failures are reported per bracket
/// and do not stop the search.
template <class F>
RootSearch find_roots(F&& f, const RootConfig& cfg, Method method = Method::discrete) {
  cfg.validate();
  detail::RootSearcher<std::remove_reference_t<F>> searcher(f, cfg, method);
  const auto grid = energy_grid(cfg);
  std::vector<std::optional<double>> vals(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    vals[j] = searcher.sample(grid[j]);
  searcher.scan_cells(grid, vals);
  searcher.near_misses(grid, vals);
  return searcher.finish();
}

} // namespace boundstate
