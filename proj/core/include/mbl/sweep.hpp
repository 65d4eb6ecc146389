#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mbl/model.hpp"

namespace mbl {

/// Sweepable SystemParams fields. `delta` and `kappa` set the magnon and
/// qubit values together.
enum class Parameter {
    delta,
    delta_m,
    delta_s,
    g_ms,
    g_ms_tilde,
    omega_s,
    omega_d,
    kappa,
    kappa_m,
    kappa_s,
    n_th,
};

std::string_view to_string(Parameter p);
Parameter parse_parameter(std::string_view name);
void set_parameter(SystemParams& p, Parameter which, double value);

enum class Spacing { linear, logarithmic, list };

/// One sweep axis. Linear/log axes are generated from (min, max, count);
/// list axes carry their values verbatim.
struct Axis {
    Parameter parameter = Parameter::delta;
    Spacing spacing = Spacing::linear;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    std::vector<double> explicit_values;

    static Axis linear(Parameter p, double min, double max, int count);
    static Axis logarithmic(Parameter p, double min, double max, int count);
    static Axis list(Parameter p, std::vector<double> values);

    std::vector<double> values() const;
    std::size_t size() const;
    void validate() const;

    friend bool operator==(const Axis&, const Axis&) = default;
};

enum class Quantity { g2_numeric, g2_analytic, populations, both_g2 };

std::string_view to_string(Quantity q);
Quantity parse_quantity(std::string_view name);

/// Optional linkage applied after the axis values are set.
enum class Constraint {
    none,
    /// delta_m = delta_s = active coupling / 2 (the optimal-detuning line).
    delta_half_coupling,
};

std::string_view to_string(Constraint c);
Constraint parse_constraint(std::string_view name);

struct SweepSpec {
    SystemParams base;
    Axis axis1;
    std::optional<Axis> axis2;
    Quantity quantity = Quantity::g2_numeric;
    Constraint constraint = Constraint::none;

    void validate() const;
    /// Parameters at grid point (i, j).
    SystemParams point(std::size_t i, std::size_t j) const;

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct Failure {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t channel = 0;
    std::string tag;

    friend bool operator==(const Failure&, const Failure&) = default;
};

/// Raw (un-logged) sweep results. Cell (i, j) sits at i * axis2_size + j;
/// a failed channel holds NaN and is listed in `failures`.
struct ResultGrid {
    SweepSpec spec;
    std::vector<double> axis1_values;
    std::vector<double> axis2_values;  // empty for a 1D sweep
    std::vector<std::string> channels;
    std::vector<std::vector<double>> values;  // [cell][channel]
    std::vector<Failure> failures;

    std::size_t rows() const noexcept { return axis1_values.size(); }
    std::size_t cols() const noexcept { return axis2_values.empty() ? 1 : axis2_values.size(); }
    std::size_t cell(std::size_t i, std::size_t j) const noexcept { return i * cols() + j; }
    double at(std::size_t i, std::size_t j, std::size_t channel = 0) const {
        return values[cell(i, j)][channel];
    }
    std::size_t channel_index(std::string_view name) const;
};

/// Channel names produced for a quantity at a given truncation.
std::vector<std::string> channel_names(Quantity q, int fock_dim);

/// Worker count: MBL_THREADS if set to a positive integer, otherwise the
/// available hardware parallelism (at least 1).
unsigned default_thread_count();

/// Evaluates every grid point; `threads == 0` means default_thread_count().
/// Point failures are recorded, never thrown. Output does not depend on
/// the thread count or scheduling.
ResultGrid run_sweep(const SweepSpec& spec, unsigned threads = 0);

struct Minimum {
    std::size_t i = 0;
    std::size_t j = 0;
    double axis1 = 0.0;
    double axis2 = 0.0;  // NaN for a 1D grid
    double value = 0.0;
};

using CellFilter = std::function<bool(double axis1, double axis2)>;

/// Smallest finite cell of `channel`, optionally restricted by `filter`.
/// Ties go to the smallest axis1 index, then axis2 index. Throws
/// NumericalError when no finite cell qualifies.
Minimum find_minimum(const ResultGrid& grid, std::size_t channel = 0, const CellFilter& filter = {});

// Figure recipes -----------------------------------------------------------

struct EvolutionJob {
    SystemParams params;
    QubitLevel initial_qubit = QubitLevel::ground;
    int initial_fock = 0;
    std::vector<double> times;

    friend bool operator==(const EvolutionJob&, const EvolutionJob&) = default;
};

using FigureJob = std::variant<SweepSpec, EvolutionJob>;

/// fig3a fig3b fig4a fig4b fig5a fig5b fig6a fig6b fig7 fig8 fig9a fig9b
const std::vector<std::string>& figure_names();
FigureJob figure_preset(std::string_view name);

/// Fock populations and g2(0) of each snapshot of an evolution job.
struct EvolutionResult {
    std::vector<double> times;
    std::vector<std::vector<double>> populations;  // [sample][n]
    std::vector<double> g2;                        // NaN where undefined
};

EvolutionResult run_evolution(const EvolutionJob& job);

}  // namespace mbl
