#pragma once

// Independent reference eigenvalues: -psi'' + V psi = E psi with psi(a) =
// psi(b) = 0 discretized by the 3-point stencil on mesh_n interior points,
// eigenvalues by Sturm-sequence bisection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "boundstate/potential.hpp"
#include "boundstate/rootfind.hpp"

namespace boundstate {

struct TridiagonalSystem {
  std::vector<double> diag;
  double offdiag = 0.0;
  std::size_t mesh_n = 0;
  double h = 0.0;
};

/// Interior mesh x_j = a + j h, h = (b - a)/(mesh_n + 1), j = 1..mesh_n.
inline TridiagonalSystem build_system(const PotentialSpec& spec, std::size_t mesh_n) {
  if (mesh_n < 3)
    throw std::invalid_argument("finite-difference mesh needs at least 3 interior points");
  TridiagonalSystem sys;
  sys.mesh_n = mesh_n;
  sys.h = spec.width() / static_cast<double>(mesh_n + 1);
  const double inv_h2 = 1.0 / (sys.h * sys.h);
  sys.offdiag = -inv_h2;
  sys.diag.resize(mesh_n);
  for (std::size_t j = 1; j <= mesh_n; ++j)
    sys.diag[j - 1] = 2.0 * inv_h2 + evaluate(spec, spec.a() + static_cast<double>(j) * sys.h);
  return sys;
}

/// Number of eigenvalues strictly below E (negative pivots of the LDL^T
/// factorization of T - E).
inline std::size_t sturm_count(const TridiagonalSystem& sys, double e) {
  const double off2 = sys.offdiag * sys.offdiag;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::size_t negatives = 0;
    double q = 1.0;
    bool zero_pivot = false;
    for (std::size_t i = 0; i < sys.diag.size(); ++i) {
      q = sys.diag[i] - e - (i == 0 ? 0.0 : off2 / q);
      if (q == 0.0) {
        zero_pivot = true;
        break;
      }
      if (q < 0.0)
        ++negatives;
    }
    if (!zero_pivot)
      return negatives;
    e += std::ldexp(std::max(1.0, std::abs(e)), -40);
  }
  throw std::runtime_error("Sturm sequence: persistent zero pivot");
}

/// Gershgorin enclosure [min(d) - 2|o|, max(d) + 2|o|].
inline std::pair<double, double> gershgorin_bounds(const TridiagonalSystem& sys) {
  const auto [lo, hi] = std::minmax_element(sys.diag.begin(), sys.diag.end());
  const double r = 2.0 * std::abs(sys.offdiag);
  return {*lo - r, *hi + r};
}

/// Eigenvalues with indices first..first+count-1 (0-based, ascending).
inline std::vector<EnergyLevel> sturm_eigenvalues(const TridiagonalSystem& sys, std::size_t first, std::size_t count,
                                                  double tol_e) {
  if (first + count > sys.mesh_n)
    throw std::invalid_argument("requested more eigenvalues than mesh points");
  if (!(tol_e > 0.0))
    throw std::invalid_argument("eigenvalue tolerance must be positive");
  const auto [g_lo, g_hi] = gershgorin_bounds(sys);
  std::vector<EnergyLevel> out;
  out.reserve(count);
  double floor = g_lo;
  for (std::size_t k = first; k < first + count; ++k) {
    // count(lo) <= k < count(hi)
    double lo = floor;
    double hi = g_hi;
    while (hi - lo > tol_e) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi)
        break;
      if (sturm_count(sys, mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back({k - first, 0.5 * (lo + hi), 0.0, hi - lo, Method::oracle});
    floor = lo;
  }
  return out;
}

/// The k_count lowest eigenvalues, each bisected to tol_E.
inline std::vector<EnergyLevel> fd_eigenvalues(const PotentialSpec& spec, std::size_t mesh_n, std::size_t k_count,
                                               double tol_e) {
  return sturm_eigenvalues(build_system(spec, mesh_n), 0, k_count, tol_e);
}

/// Eigenvalues lying in [E_min, E_max], re-indexed from 0.
inline std::vector<EnergyLevel> fd_eigenvalues_in_window(const PotentialSpec& spec, std::size_t mesh_n, double e_min,
                                                         double e_max, double tol_e) {
  const auto sys = build_system(spec, mesh_n);
  const std::size_t below = sturm_count(sys, e_min);
  const std::size_t upto = sturm_count(sys, e_max);
  return sturm_eigenvalues(sys, below, upto - below, tol_e);
}

} // namespace boundstate
