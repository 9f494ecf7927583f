#pragma once

// Cross-method comparison of spectra aligned by level index.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "boundstate/rootfind.hpp"

namespace boundstate {

struct MethodLevels {
  std::string method;
  std::vector<EnergyLevel> levels;
  double seconds = 0.0;
};

struct PairDeviation {
  std::string first;
  std::string second;
  /// |E_k^first - E_k^second| for k below both level counts.
  std::vector<double> per_level;
  double max = 0.0;
};

struct SpectrumReport {
  std::vector<MethodLevels> methods;
  std::vector<PairDeviation> deviations;
  double max_deviation = 0.0;
};

inline PairDeviation deviation(const MethodLevels& a, const MethodLevels& b) {
  PairDeviation d{a.method, b.method, {}, 0.0};
  const std::size_t common = std::min(a.levels.size(), b.levels.size());
  for (std::size_t k = 0; k < common; ++k) {
    const double dev = std::abs(a.levels[k].energy - b.levels[k].energy);
    d.per_level.push_back(dev);
    d.max = std::max(d.max, dev);
  }
  return d;
}

/// All pairwise deviations, in method order.
inline SpectrumReport compare(std::vector<MethodLevels> methods) {
  SpectrumReport r;
  r.methods = std::move(methods);
  for (std::size_t i = 0; i < r.methods.size(); ++i)
    for (std::size_t j = i + 1; j < r.methods.size(); ++j) {
      r.deviations.push_back(deviation(r.methods[i], r.methods[j]));
      r.max_deviation = std::max(r.max_deviation, r.deviations.back().max);
    }
  return r;
}

} // namespace boundstate
