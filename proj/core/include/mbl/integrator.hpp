#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mbl/quantum.hpp"

namespace mbl::ode {

struct Tolerances {
    double rel = 1e-10;
    double abs = 1e-14;
    std::size_t max_steps = 50'000'000;
};

struct Stats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

// dy/dt = f(t, y); the callee writes into `dydt`.
using Rhs = std::function<void(double t, const Vector& y, Vector& dydt)>;

/// Embedded Dormand-Prince 5(4) pair with FSAL and standard step-size control.
///
/// Integrates from `times.front()` (taken as the time of `y0`) and returns
/// the state at every entry of `times`, stepping exactly onto each output
/// time. `times` must be non-decreasing. Throws IntegrationError when the
/// step size underflows or `max_steps` is exceeded.
std::vector<Vector> dormand_prince(const Rhs& f, const Vector& y0, std::span<const double> times,
                                   const Tolerances& tol = {}, Stats* stats = nullptr);

}  // namespace mbl::ode
