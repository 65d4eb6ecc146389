#include "mbl/analytic.hpp"

#include <array>
#include <cmath>
#include <string>

#include "mbl/errors.hpp"

namespace mbl {

namespace {

constexpr double kSingularThreshold = 1e-14;
constexpr double kRk4ImagAxisLimit = 2.8;  // RK4 stability boundary is 2*sqrt(2) on iR
const double kSqrt2 = std::sqrt(2.0);

void require_scenario_a(const SystemParams& p) {
    p.validate_hamiltonian();
    if (p.scenario != Scenario::A) {
        throw ParameterError("perturbative amplitudes are defined for scenario A only");
    }
}

// Amplitude equations written as i dC/dt = M C + s, C = (c_e0, c_g1, c_e1, c_g2),
// with the c_g0 = 1 contribution collected in s.
struct LinearSystem {
    Eigen::Matrix4cd m;
    Eigen::Vector4cd s;
};

LinearSystem amplitude_system(const SystemParams& p) {
    const Complex i(0.0, 1.0);
    const double g = p.g_ms;
    const Complex dm = p.delta_m - 0.5 * i * p.kappa_m;
    const Complex ds = p.delta_s - 0.5 * i * p.kappa_s;
    const Complex b = dm + ds;

    LinearSystem sys;
    sys.m.setZero();
    sys.m(0, 0) = ds;
    sys.m(0, 1) = 0.5 * g;
    sys.m(1, 0) = 0.5 * g;
    sys.m(1, 1) = dm;
    sys.m(2, 0) = p.omega_d;
    sys.m(2, 1) = 0.5 * p.omega_s;
    sys.m(2, 2) = b;
    sys.m(2, 3) = 0.5 * kSqrt2 * g;
    sys.m(3, 1) = kSqrt2 * p.omega_d;
    sys.m(3, 2) = 0.5 * kSqrt2 * g;
    // |g',2> carries two magnons: detuning and decay both double.
    sys.m(3, 3) = 2.0 * dm;
    sys.s << 0.5 * p.omega_s, p.omega_d, 0.0, 0.0;
    return sys;
}

AmplitudeSet from_vector(const Eigen::Vector4cd& v) {
    AmplitudeSet a;
    a.c_g0 = 1.0;
    a.c_e0 = v(0);
    a.c_g1 = v(1);
    a.c_e1 = v(2);
    a.c_g2 = v(3);
    return a;
}

Eigen::Vector4cd to_vector(const AmplitudeSet& a) {
    return Eigen::Vector4cd(a.c_e0, a.c_g1, a.c_e1, a.c_g2);
}

}  // namespace

AmplitudeSet closed_form_amplitudes(const SystemParams& p) {
    require_scenario_a(p);
    const Complex i(0.0, 1.0);
    const double g = p.g_ms;
    const double od = p.omega_d;
    const double os = p.omega_s;

    const Complex dm = p.delta_m - 0.5 * i * p.kappa_m;
    const Complex ds = p.delta_s - 0.5 * i * p.kappa_s;
    const Complex a = 2.0 * dm;
    const Complex b = (p.delta_m + p.delta_s) - 0.5 * i * p.kappa_m - 0.5 * i * p.kappa_s;
    const Complex c = 4.0 * kSqrt2 * ds * od * od - kSqrt2 * g * od * os;
    const Complex d = 4.0 * ds * od - os * g;
    const Complex e = -2.0 * od * g + 2.0 * dm * os;

    const Complex chi = -4.0 * dm * ds + g * g;
    const Complex two_ab = 2.0 * a * b - g * g;
    if (std::abs(chi) < kSingularThreshold || std::abs(two_ab) < kSingularThreshold) {
        throw SingularityError("closed-form amplitudes: vanishing denominator");
    }

    AmplitudeSet out;
    out.c_g0 = 1.0;
    out.c_e0 = e / chi;
    out.c_g1 = d / chi;
    out.c_e1 = (-os * d * a - 2.0 * a * od * e + 8.0 * ds * od * od * g - 2.0 * g * g * od * os) /
               (chi * two_ab);
    out.c_g2 = (-2.0 * kSqrt2 * b * c + os * d * g + 2.0 * od * e * g) / (chi * kSqrt2 * two_ab);
    return out;
}

AmplitudeSet solve_steady_linear(const SystemParams& p) {
    require_scenario_a(p);
    const auto sys = amplitude_system(p);
    Eigen::FullPivLU<Eigen::Matrix4cd> lu(sys.m);
    if (!lu.isInvertible() || lu.rcond() < kSingularThreshold) {
        throw SingularityError("steady amplitude system is singular (kappa must be > 0)");
    }
    return from_vector(lu.solve(-sys.s));
}

double steady_linear_residual(const SystemParams& p, const AmplitudeSet& a) {
    const auto sys = amplitude_system(p);
    return (sys.m * to_vector(a) + sys.s).cwiseAbs().maxCoeff();
}

AmplitudeTrajectory evolve_amplitudes(const SystemParams& p, double t_end, double dt) {
    require_scenario_a(p);
    if (!(t_end > 0.0) || !(dt > 0.0)) {
        throw ParameterError("t_end and dt must be > 0");
    }
    const double damping = p.kappa_m + p.kappa_s;
    if (dt * damping >= 2.0) {
        throw ParameterError("dt must be < 2 / (kappa_m + kappa_s)");
    }
    const auto sys = amplitude_system(p);
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(sys.m, false);
    const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
    if (dt * radius >= kRk4ImagAxisLimit) {
        throw ParameterError("dt = " + std::to_string(dt) +
                             " is outside the RK4 stability region (need dt < " +
                             std::to_string(kRk4ImagAxisLimit / radius) + ")");
    }

    const Complex minus_i(0.0, -1.0);
    auto rhs = [&](const Eigen::Vector4cd& c) -> Eigen::Vector4cd {
        return minus_i * (sys.m * c + sys.s);
    };

    AmplitudeTrajectory traj;
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    traj.times.reserve(steps + 1);
    traj.samples.reserve(steps + 1);

    Eigen::Vector4cd c = Eigen::Vector4cd::Zero();
    double t = 0.0;
    traj.times.push_back(t);
    traj.samples.push_back(from_vector(c));
    for (std::size_t k = 1; k <= steps; ++k) {
        const double t_next = k == steps ? t_end : static_cast<double>(k) * dt;
        const double h = t_next - t;
        const Eigen::Vector4cd k1 = rhs(c);
        const Eigen::Vector4cd k2 = rhs(c + 0.5 * h * k1);
        const Eigen::Vector4cd k3 = rhs(c + 0.5 * h * k2);
        const Eigen::Vector4cd k4 = rhs(c + h * k3);
        c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = t_next;
        traj.times.push_back(t);
        traj.samples.push_back(from_vector(c));
    }
    return traj;
}

double g2_from_amplitudes(const AmplitudeSet& a) {
    const double p1 = std::norm(a.c_g1);
    const double denom = p1 * p1;
    if (!(denom >= 1e-300)) {
        throw UndefinedCorrelationError("g2 undefined: |c_g1|^4 below 1e-300");
    }
    return 2.0 * std::norm(a.c_g2) / denom;
}

double analytic_g2(const SystemParams& p) {
    return g2_from_amplitudes(closed_form_amplitudes(p));
}

std::pair<double, double> optimal_detuning(double g_ms) {
    if (!(g_ms >= 0.0)) throw ParameterError("g_ms must be >= 0");
    return {0.5 * g_ms, -0.5 * g_ms};
}

}  // namespace mbl
