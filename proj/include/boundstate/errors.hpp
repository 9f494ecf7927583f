#pragma once

#include <stdexcept>
#include <string>

namespace boundstate {

/// Base class for solver diagnostics (conditions the numerics cannot handle,
/// as opposed to malformed input, which raises std::invalid_argument).
class solver_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Position outside the potential's [a, b] domain.
class domain_error : public solver_error {
public:
  using solver_error::solver_error;
};

/// No point of the domain has V(x) < E.
class no_allowed_region_error : public solver_error {
public:
  using solver_error::solver_error;
};

/// More than one classically allowed interval at the requested energy.
class multi_well_error : public solver_error {
public:
  using solver_error::solver_error;
};

/// Exact-mode coupling with V_prev == E (k = 0 in the previous cell).
class degenerate_step_error : public solver_error {
public:
  using solver_error::solver_error;
};

/// Radicand of an action integrand has the wrong sign inside a region.
class inconsistent_region_error : public solver_error {
public:
  using solver_error::solver_error;
};

/// Energy at or above a dissociation limit.
class continuum_error : public solver_error {
public:
  using solver_error::solver_error;
};

/// Energy at or above the top of a finite confining barrier.
class barrier_vanishes_error : public solver_error {
public:
  using solver_error::solver_error;
};

} // namespace boundstate
