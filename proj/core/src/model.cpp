#include "mbl/model.hpp"

#include <cmath>
#include <string>

#include "mbl/errors.hpp"

namespace mbl {

std::string_view to_string(Scenario s) {
    return s == Scenario::A ? "A" : "B";
}

Scenario parse_scenario(std::string_view text) {
    if (text == "A" || text == "a") return Scenario::A;
    if (text == "B" || text == "b") return Scenario::B;
    throw ParameterError("unknown scenario '" + std::string(text) + "' (expected A or B)");
}

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ParameterError(std::string(name) + " must be finite");
    }
}

void require_nonnegative(double v, const char* name) {
    require_finite(v, name);
    if (v < 0.0) {
        throw ParameterError(std::string(name) + " must be >= 0, got " + std::to_string(v));
    }
}

}  // namespace

void SystemParams::validate_hamiltonian() const {
    require_finite(delta_m, "delta_m");
    require_finite(delta_s, "delta_s");
    require_nonnegative(g_ms, "g_ms");
    require_nonnegative(g_ms_tilde, "g_ms_tilde");
    require_nonnegative(omega_s, "omega_s");
    require_nonnegative(omega_d, "omega_d");
    require_nonnegative(kappa_m, "kappa_m");
    require_nonnegative(kappa_s, "kappa_s");
    require_nonnegative(n_th, "n_th");
    if (fock_dim < 2) {
        throw ParameterError("fock_dim must be >= 2, got " + std::to_string(fock_dim));
    }
    if (scenario == Scenario::B && omega_s != 0.0) {
        throw ParameterError("scenario B has no qubit drive; omega_s must be 0");
    }
}

void SystemParams::validate() const {
    validate_hamiltonian();
    if (!(kappa_m > 0.0)) throw ParameterError("kappa_m must be > 0");
    if (!(kappa_s > 0.0)) throw ParameterError("kappa_s must be > 0");
}

std::pair<double, double> lab_to_detunings(const LabFrameParams& lab, Scenario scenario) {
    const double delta_m = lab.omega_m - lab.omega_d_lab;
    const double delta_s =
        scenario == Scenario::A ? lab.e_z - lab.omega_s_lab : lab.k_0 - lab.omega_d_lab;
    return {delta_m, delta_s};
}

Operator build_h_eff(const SystemParams& p, const SpaceDescriptor& space) {
    p.validate_hamiltonian();
    if (space.fock_dim() != p.fock_dim) {
        throw DimensionError("space fock_dim does not match parameters");
    }
    const Operator m = annihilation(space);
    const Operator md = dagger(m);
    const auto q = qubit_ops(space);

    const double g = p.active_coupling();
    Operator h = Complex(p.delta_m) * (md * m) + Complex(0.5 * p.delta_s) * q.sigma_z +
                 Complex(0.5 * g) * (m * q.sigma_plus + md * q.sigma_minus) +
                 Complex(p.omega_d) * (md + m);
    if (p.scenario == Scenario::A) {
        h = h + Complex(0.5 * p.omega_s) * q.sigma_x;
    }
    return h;
}

Operator build_h_eff(const SystemParams& p) {
    return build_h_eff(p, p.space());
}

Operator build_h_nonhermitian(const SystemParams& p, const SpaceDescriptor& space) {
    const Operator h = build_h_eff(p, space);
    const Operator m = annihilation(space);
    const auto q = qubit_ops(space);
    const Complex i(0.0, 1.0);
    return h - (0.5 * p.kappa_m * i) * (dagger(m) * m) -
           (0.5 * p.kappa_s * i) * (q.sigma_plus * q.sigma_minus);
}

Operator build_h_nonhermitian(const SystemParams& p) {
    return build_h_nonhermitian(p, p.space());
}

std::vector<DressedLevel> dressed_spectrum(double omega_m, double e_z, double g_ms, int n_max) {
    if (n_max < 1) throw ParameterError("n_max must be >= 1");
    if (!(g_ms >= 0.0)) throw ParameterError("g_ms must be >= 0");

    std::vector<DressedLevel> levels;
    levels.reserve(2 * static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        const double nd = n;
        const double centre = ((2.0 * nd - 1.0) * omega_m + e_z) / 2.0;
        const double half_split =
            std::sqrt((omega_m - e_z) * (omega_m - e_z) + g_ms * g_ms * nd) / 2.0;
        const double bare_g = nd * omega_m;
        const double bare_e = (nd - 1.0) * omega_m + e_z;

        for (Branch b : {Branch::plus, Branch::minus}) {
            DressedLevel lvl;
            lvl.n = n;
            lvl.branch = b;
            lvl.energy = b == Branch::plus ? centre + half_split : centre - half_split;

            if (g_ms == 0.0) {
                const bool g_is_plus = bare_g >= bare_e;
                const bool on_g = (b == Branch::plus) == g_is_plus;
                lvl.c_g_n = on_g ? 1.0 : 0.0;
                lvl.c_e_nm1 = on_g ? 0.0 : 1.0;
            } else {
                const double offset = bare_g - lvl.energy;
                const double coupling = g_ms * std::sqrt(nd);
                const double norm = std::sqrt(coupling * coupling + 4.0 * offset * offset);
                lvl.c_g_n = coupling / norm;
                lvl.c_e_nm1 = -2.0 * offset / norm;
            }
            levels.push_back(lvl);
        }
    }
    return levels;
}

}  // namespace mbl
