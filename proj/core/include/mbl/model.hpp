#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "mbl/quantum.hpp"

namespace mbl {

/// A: qubit tuned by electric field, driven by Omega_s, couples via g_ms.
/// B: qubit tuned by magnetic field, undriven, couples via g_ms_tilde.
enum class Scenario { A, B };

std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view text);

/// Rotating-frame model parameters. All rates are in units of gamma.
struct SystemParams {
    double delta_m = 0.0;
    double delta_s = 0.0;
    double g_ms = 0.0;
    double g_ms_tilde = 0.0;
    double omega_s = 0.0;
    double omega_d = 0.0;
    double kappa_m = 1.0;
    double kappa_s = 1.0;
    double n_th = 0.0;
    Scenario scenario = Scenario::A;
    int fock_dim = 6;

    /// Coupling that enters the Hamiltonian for the selected scenario.
    double active_coupling() const noexcept {
        return scenario == Scenario::A ? g_ms : g_ms_tilde;
    }

    SpaceDescriptor space() const { return SpaceDescriptor(fock_dim); }

    /// Checks what the Hamiltonian needs: finiteness, signs, the scenario
    /// rule and the truncation. Decay rates may be zero here.
    void validate_hamiltonian() const;

    /// Full check, additionally requiring strictly positive decay rates.
    void validate() const;

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct LabFrameParams {
    double omega_m = 0.0;
    double e_z = 0.0;
    double k_0 = 0.0;
    double omega_d_lab = 0.0;
    double omega_s_lab = 0.0;
};

/// Cyclic frequency in GHz expressed in units of gamma = 2 pi x 1 MHz.
constexpr double ghz_to_gamma(double f_ghz) noexcept { return f_ghz * 1.0e3; }

/// (delta_m, delta_s) from lab-frame frequencies given in a common unit.
std::pair<double, double> lab_to_detunings(const LabFrameParams& lab, Scenario scenario);

/// Rotating-frame Hamiltonian H_eff (scenario A) or H'_eff (scenario B).
Operator build_h_eff(const SystemParams& p, const SpaceDescriptor& space);
Operator build_h_eff(const SystemParams& p);

/// H_eff - i (kappa_m/2) m^dag m - i (kappa_s/2) sigma_+ sigma_-.
Operator build_h_nonhermitian(const SystemParams& p, const SpaceDescriptor& space);
Operator build_h_nonhermitian(const SystemParams& p);

enum class Branch { plus, minus };

/// Dressed eigenstate c_g_n |g', n> + c_e_nm1 |e', n-1> of the coupled
/// qubit-magnon ladder.
struct DressedLevel {
    int n = 1;
    Branch branch = Branch::plus;
    double energy = 0.0;
    double c_g_n = 0.0;
    double c_e_nm1 = 0.0;
};

/// Levels n = 1..n_max, plus branch before minus for each n.
///
/// Sign convention: c_g_n >= 0, and at resonance the plus branch is the
/// symmetric combination. At g_ms = 0 each branch collapses onto a bare
/// state; a tie assigns |g', n> to the plus branch.
std::vector<DressedLevel> dressed_spectrum(double omega_m, double e_z, double g_ms, int n_max);

}  // namespace mbl
