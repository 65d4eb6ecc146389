#include "mbl/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mbl/errors.hpp"

namespace mbl::ode {

namespace {

// Dormand & Prince (1980) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - b_hat
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

double error_norm(const Vector& err, const Vector& y, const Vector& y_new, const Tolerances& tol) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < err.size(); ++k) {
        const double scale = tol.abs + tol.rel * std::max(std::abs(y(k)), std::abs(y_new(k)));
        worst = std::max(worst, std::abs(err(k)) / scale);
    }
    return worst;
}

}  // namespace

std::vector<Vector> dormand_prince(const Rhs& f, const Vector& y0, std::span<const double> times,
                                   const Tolerances& tol, Stats* stats) {
    std::vector<Vector> out;
    if (times.empty()) return out;
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (times[k] < times[k - 1]) {
            throw ParameterError("output times must be non-decreasing");
        }
    }
    out.reserve(times.size());

    Stats local;
    Stats& st = stats ? *stats : local;

    const Eigen::Index n = y0.size();
    Vector y = y0, y_new(n), tmp(n), err(n);
    Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

    double t = times.front();
    f(t, y, k1);
    ++st.rhs_evals;

    // Initial step from the scale of the derivative.
    double h = 0.0;
    {
        const double d0 = y.cwiseAbs().maxCoeff();
        const double d1 = k1.cwiseAbs().maxCoeff();
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        const double span = times.back() - times.front();
        if (span > 0.0) h = std::min(h, span);
    }

    out.push_back(y);
    for (std::size_t idx = 1; idx < times.size(); ++idx) {
        const double target = times[idx];
        while (t < target) {
            if (st.accepted + st.rejected >= tol.max_steps) {
                throw IntegrationError("step budget of " + std::to_string(tol.max_steps) +
                                       " exhausted at t = " + std::to_string(t));
            }
            bool last = false;
            double step = h;
            if (t + step >= target) {
                step = target - t;
                last = true;
            }
            if (step <= 1e-14 * std::max(1.0, std::abs(t))) {
                if (last) {
                    t = target;
                    break;
                }
                throw IntegrationError("step size underflow at t = " + std::to_string(t) +
                                       " (h = " + std::to_string(step) + ")");
            }

            tmp = y + step * a21 * k1;
            f(t + c2 * step, tmp, k2);
            tmp = y + step * (a31 * k1 + a32 * k2);
            f(t + c3 * step, tmp, k3);
            tmp = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
            f(t + c4 * step, tmp, k4);
            tmp = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            f(t + c5 * step, tmp, k5);
            tmp = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            f(t + step, tmp, k6);
            y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            f(t + step, y_new, k7);
            st.rhs_evals += 6;

            err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double norm = error_norm(err, y, y_new, tol);
            if (!std::isfinite(norm)) {
                throw IntegrationError("non-finite error estimate at t = " + std::to_string(t));
            }

            if (norm <= 1.0) {
                ++st.accepted;
                t = last ? target : t + step;
                y.swap(y_new);
                k1.swap(k7);
                const double factor =
                    norm == 0.0 ? kMaxFactor
                                : std::clamp(kSafety * std::pow(norm, -0.2), kMinFactor, kMaxFactor);
                // A step clipped to hit the output time says nothing about h.
                if (!last || step >= h) h = step * factor;
            } else {
                ++st.rejected;
                h = step * std::max(kMinFactor, kSafety * std::pow(norm, -0.2));
            }
        }
        out.push_back(y);
    }
    return out;
}

}  // namespace mbl::ode
