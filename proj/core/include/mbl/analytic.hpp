#pragma once

#include <utility>
#include <vector>

#include "mbl/model.hpp"
#include "mbl/quantum.hpp"

namespace mbl {

/// Amplitudes of the weak-drive pure-state ansatz on
/// {|g',0>, |e',0>, |g',1>, |e',1>, |g',2>}.
struct AmplitudeSet {
    Complex c_g0{1.0, 0.0};
    Complex c_e0{};
    Complex c_g1{};
    Complex c_e1{};
    Complex c_g2{};
};

struct AmplitudeTrajectory {
    std::vector<double> times;
    std::vector<AmplitudeSet> samples;
};

/// Closed-form leading-order steady-state amplitudes, c_g0 = 1.
///
/// Throws SingularityError when either denominator
/// (g^2 - 4 D_m D_s) or (2 A B - g^2) falls below 1e-14 in magnitude.
AmplitudeSet closed_form_amplitudes(const SystemParams& p);

/// Exact solution of the four steady-state amplitude equations for
/// (c_e0, c_g1, c_e1, c_g2) with c_g0 pinned to 1.
AmplitudeSet solve_steady_linear(const SystemParams& p);

/// Residual of `a` against those four equations (max abs component).
double steady_linear_residual(const SystemParams& p, const AmplitudeSet& a);

/// Fixed-step RK4 integration of the amplitude equations from c_g0 = 1,
/// all other amplitudes zero. Samples every step, ending exactly at t_end.
///
/// Rejects dt >= 2 / (kappa_m + kappa_s) and any dt outside the RK4
/// stability region of the coupling matrix.
AmplitudeTrajectory evolve_amplitudes(const SystemParams& p, double t_end, double dt);

/// 2 |c_g2|^2 / |c_g1|^4 from the closed-form amplitudes.
double analytic_g2(const SystemParams& p);

/// Same ratio evaluated on arbitrary amplitudes.
double g2_from_amplitudes(const AmplitudeSet& a);

/// Detunings (+g/2, -g/2) at which the single-excitation population is
/// resonantly enhanced.
std::pair<double, double> optimal_detuning(double g_ms);

}  // namespace mbl
