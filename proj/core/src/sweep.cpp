#include "mbl/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <utility>

#include "mbl/analytic.hpp"
#include "mbl/errors.hpp"
#include "mbl/lindblad.hpp"

namespace mbl {

namespace {

constexpr std::array<std::pair<Parameter, std::string_view>, 11> kParameterNames{{
    {Parameter::delta, "delta"},
    {Parameter::delta_m, "delta_m"},
    {Parameter::delta_s, "delta_s"},
    {Parameter::g_ms, "g_ms"},
    {Parameter::g_ms_tilde, "g_ms_tilde"},
    {Parameter::omega_s, "omega_s"},
    {Parameter::omega_d, "omega_d"},
    {Parameter::kappa, "kappa"},
    {Parameter::kappa_m, "kappa_m"},
    {Parameter::kappa_s, "kappa_s"},
    {Parameter::n_th, "n_th"},
}};

constexpr std::array<std::pair<Quantity, std::string_view>, 4> kQuantityNames{{
    {Quantity::g2_numeric, "g2_numeric"},
    {Quantity::g2_analytic, "g2_analytic"},
    {Quantity::populations, "populations"},
    {Quantity::both_g2, "both_g2"},
}};

constexpr std::array<std::pair<Constraint, std::string_view>, 2> kConstraintNames{{
    {Constraint::none, "none"},
    {Constraint::delta_half_coupling, "delta_half_coupling"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
    for (const auto& [e, name] : table) {
        if (e == value) return name;
    }
    return "?";
}

template <typename E, std::size_t N>
E parse_name(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view text,
             const char* what) {
    for (const auto& [e, name] : table) {
        if (name == text) return e;
    }
    std::string msg = "unknown " + std::string(what) + " '" + std::string(text) + "' (expected one of:";
    for (const auto& [e, name] : table) {
        msg += " " + std::string(name);
    }
    throw ParameterError(msg + ")");
}

std::string failure_tag(const std::exception_ptr& ep) {
    try {
        std::rethrow_exception(ep);
    } catch (const UndefinedCorrelationError&) {
        return "undefined_correlation";
    } catch (const SingularityError&) {
        return "singular";
    } catch (const IntegrationError&) {
        return "integration";
    } catch (const NumericalError&) {
        return "numerical";
    } catch (const ParameterError&) {
        return "invalid_parameters";
    } catch (const DimensionError&) {
        return "dimension";
    } catch (...) {
        return "error";
    }
}

bool is_coupling(Parameter p) {
    return p == Parameter::g_ms || p == Parameter::g_ms_tilde;
}

}  // namespace

std::string_view to_string(Parameter p) { return name_of(kParameterNames, p); }
Parameter parse_parameter(std::string_view name) {
    return parse_name(kParameterNames, name, "parameter");
}

std::string_view to_string(Quantity q) { return name_of(kQuantityNames, q); }
Quantity parse_quantity(std::string_view name) { return parse_name(kQuantityNames, name, "quantity"); }

std::string_view to_string(Constraint c) { return name_of(kConstraintNames, c); }
Constraint parse_constraint(std::string_view name) {
    return parse_name(kConstraintNames, name, "constraint");
}

void set_parameter(SystemParams& p, Parameter which, double value) {
    switch (which) {
        case Parameter::delta: p.delta_m = value; p.delta_s = value; break;
        case Parameter::delta_m: p.delta_m = value; break;
        case Parameter::delta_s: p.delta_s = value; break;
        case Parameter::g_ms: p.g_ms = value; break;
        case Parameter::g_ms_tilde: p.g_ms_tilde = value; break;
        case Parameter::omega_s: p.omega_s = value; break;
        case Parameter::omega_d: p.omega_d = value; break;
        case Parameter::kappa: p.kappa_m = value; p.kappa_s = value; break;
        case Parameter::kappa_m: p.kappa_m = value; break;
        case Parameter::kappa_s: p.kappa_s = value; break;
        case Parameter::n_th: p.n_th = value; break;
    }
}

Axis Axis::linear(Parameter p, double min, double max, int count) {
    Axis a;
    a.parameter = p;
    a.spacing = Spacing::linear;
    a.min = min;
    a.max = max;
    a.count = count;
    return a;
}

Axis Axis::logarithmic(Parameter p, double min, double max, int count) {
    Axis a = linear(p, min, max, count);
    a.spacing = Spacing::logarithmic;
    return a;
}

Axis Axis::list(Parameter p, std::vector<double> values) {
    Axis a;
    a.parameter = p;
    a.spacing = Spacing::list;
    a.count = static_cast<int>(values.size());
    a.explicit_values = std::move(values);
    return a;
}

void Axis::validate() const {
    const std::string name(to_string(parameter));
    if (spacing == Spacing::list) {
        if (explicit_values.empty()) {
            throw ParameterError("axis '" + name + "' has no values");
        }
        for (double v : explicit_values) {
            if (!std::isfinite(v)) throw ParameterError("axis '" + name + "' has a non-finite value");
        }
        return;
    }
    if (count < 2) throw ParameterError("axis '" + name + "' needs count >= 2");
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
        throw ParameterError("axis '" + name + "' needs finite min < max");
    }
    if (spacing == Spacing::logarithmic && !(min > 0.0)) {
        throw ParameterError("logarithmic axis '" + name + "' needs min > 0");
    }
}

std::vector<double> Axis::values() const {
    validate();
    if (spacing == Spacing::list) return explicit_values;

    std::vector<double> out(static_cast<std::size_t>(count));
    const double last = count - 1;
    for (int k = 0; k < count; ++k) {
        const double f = k / last;
        if (spacing == Spacing::linear) {
            out[static_cast<std::size_t>(k)] = min + (max - min) * f;
        } else {
            out[static_cast<std::size_t>(k)] =
                std::exp(std::log(min) + (std::log(max) - std::log(min)) * f);
        }
    }
    // Pin the endpoints so rounding in the interpolation never moves them.
    out.front() = min;
    out.back() = max;
    return out;
}

std::size_t Axis::size() const {
    return spacing == Spacing::list ? explicit_values.size() : static_cast<std::size_t>(count);
}

void SweepSpec::validate() const {
    axis1.validate();
    if (axis2) {
        axis2->validate();
        if (axis2->parameter == axis1.parameter) {
            throw ParameterError("both axes sweep the same parameter");
        }
    }
    for (const Axis* a : {&axis1, axis2 ? &*axis2 : nullptr}) {
        if (a == nullptr || !is_coupling(a->parameter)) continue;
        const bool used = (a->parameter == Parameter::g_ms) == (base.scenario == Scenario::A);
        if (!used) {
            throw ParameterError("axis '" + std::string(to_string(a->parameter)) +
                                 "' is not used by scenario " + std::string(to_string(base.scenario)));
        }
    }
    if (quantity == Quantity::g2_analytic || quantity == Quantity::both_g2) {
        if (base.scenario != Scenario::A) {
            throw ParameterError("analytic g2 is available for scenario A only");
        }
    }
    base.validate_hamiltonian();
}

namespace {

SystemParams params_at(const SweepSpec& spec, double v1, double v2) {
    SystemParams p = spec.base;
    set_parameter(p, spec.axis1.parameter, v1);
    if (spec.axis2) set_parameter(p, spec.axis2->parameter, v2);
    if (spec.constraint == Constraint::delta_half_coupling) {
        set_parameter(p, Parameter::delta, 0.5 * p.active_coupling());
    }
    return p;
}

}  // namespace

SystemParams SweepSpec::point(std::size_t i, std::size_t j) const {
    return params_at(*this, axis1.values().at(i), axis2 ? axis2->values().at(j) : 0.0);
}

std::size_t ResultGrid::channel_index(std::string_view name) const {
    for (std::size_t k = 0; k < channels.size(); ++k) {
        if (channels[k] == name) return k;
    }
    throw ParameterError("grid has no channel '" + std::string(name) + "'");
}

std::vector<std::string> channel_names(Quantity q, int fock_dim) {
    switch (q) {
        case Quantity::g2_numeric: return {"g2_numeric"};
        case Quantity::g2_analytic: return {"g2_analytic"};
        case Quantity::both_g2: return {"g2_numeric", "g2_analytic"};
        case Quantity::populations: {
            std::vector<std::string> names;
            for (int n = 0; n < fock_dim; ++n) names.push_back("p" + std::to_string(n));
            return names;
        }
    }
    return {};
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("MBL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Fills one cell; every channel either gets a value or a failure entry.
void evaluate_cell(const SweepSpec& spec, const SystemParams& p, std::vector<double>& out,
                   std::vector<std::pair<std::size_t, std::string>>& failed) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const bool want_numeric = spec.quantity != Quantity::g2_analytic;
    const bool want_analytic =
        spec.quantity == Quantity::g2_analytic || spec.quantity == Quantity::both_g2;

    std::fill(out.begin(), out.end(), nan);
    if (want_numeric) {
        try {
            p.validate();
            const DensityMatrix rho = steady_state(build_liouvillian(p));
            if (spec.quantity == Quantity::populations) {
                const auto pops = fock_populations(rho, p.space());
                std::copy(pops.begin(), pops.end(), out.begin());
            } else {
                out[0] = g2_zero(rho, p.space());
            }
        } catch (...) {
            const std::string tag = failure_tag(std::current_exception());
            const std::size_t n = spec.quantity == Quantity::populations ? out.size() : 1;
            for (std::size_t k = 0; k < n; ++k) failed.emplace_back(k, tag);
        }
    }
    if (want_analytic) {
        const std::size_t k = spec.quantity == Quantity::both_g2 ? 1 : 0;
        try {
            out[k] = analytic_g2(p);
        } catch (...) {
            failed.emplace_back(k, failure_tag(std::current_exception()));
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        const bool listed = std::any_of(failed.begin(), failed.end(),
                                        [k](const auto& f) { return f.first == k; });
        if (!std::isfinite(out[k]) && !listed) {
            out[k] = nan;
            failed.emplace_back(k, "non_finite");
        }
    }
}

}  // namespace

ResultGrid run_sweep(const SweepSpec& spec, unsigned threads) {
    spec.validate();

    ResultGrid grid;
    grid.spec = spec;
    grid.axis1_values = spec.axis1.values();
    if (spec.axis2) grid.axis2_values = spec.axis2->values();
    grid.channels = channel_names(spec.quantity, spec.base.fock_dim);

    const std::size_t rows = grid.rows();
    const std::size_t cols = grid.cols();
    const std::size_t cells = rows * cols;
    grid.values.assign(cells, std::vector<double>(grid.channels.size()));

    std::vector<std::vector<std::pair<std::size_t, std::string>>> cell_failures(cells);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next.fetch_add(1); c < cells; c = next.fetch_add(1)) {
            const std::size_t i = c / cols;
            const std::size_t j = c % cols;
            const double v2 = spec.axis2 ? grid.axis2_values[j] : 0.0;
            const SystemParams p = params_at(spec, grid.axis1_values[i], v2);
            evaluate_cell(spec, p, grid.values[c], cell_failures[c]);
        }
    };

    if (threads == 0) threads = default_thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (std::size_t c = 0; c < cells; ++c) {
        for (auto& [channel, tag] : cell_failures[c]) {
            grid.failures.push_back({c / cols, c % cols, channel, std::move(tag)});
        }
    }
    return grid;
}

Minimum find_minimum(const ResultGrid& grid, std::size_t channel, const CellFilter& filter) {
    if (channel >= grid.channels.size()) {
        throw ParameterError("find_minimum: channel index out of range");
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::optional<Minimum> best;
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            const double v = grid.at(i, j, channel);
            if (!std::isfinite(v)) continue;
            const double a1 = grid.axis1_values[i];
            const double a2 = grid.axis2_values.empty() ? nan : grid.axis2_values[j];
            if (filter && !filter(a1, a2)) continue;
            if (!best || v < best->value) best = Minimum{i, j, a1, a2, v};
        }
    }
    if (!best) throw NumericalError("find_minimum: grid has no finite cell");
    return *best;
}

// Presets ------------------------------------------------------------------

namespace {

// Default ranges for axes the presets do not pin down.
Axis delta_axis() { return Axis::linear(Parameter::delta, -20.0, 20.0, 201); }
Axis g_ms_axis() { return Axis::linear(Parameter::g_ms, 0.0, 30.0, 121); }
Axis omega_s_axis() { return Axis::linear(Parameter::omega_s, 0.0, 0.2, 101); }
Axis omega_d_axis() { return Axis::linear(Parameter::omega_d, 0.0, 0.05, 101); }
Axis kappa_axis() { return Axis::linear(Parameter::kappa, 0.05, 1.5, 59); }
Axis g_tilde_axis() { return Axis::linear(Parameter::g_ms_tilde, 0.0, 60.0, 121); }

SystemParams scenario_a(double delta, double g, double omega_s, double omega_d, double kappa) {
    SystemParams p;
    p.scenario = Scenario::A;
    p.delta_m = p.delta_s = delta;
    p.g_ms = g;
    p.omega_s = omega_s;
    p.omega_d = omega_d;
    p.kappa_m = p.kappa_s = kappa;
    p.n_th = 0.0;
    return p;
}

SystemParams scenario_b(double delta, double g_tilde, double omega_d, double kappa) {
    SystemParams p;
    p.scenario = Scenario::B;
    p.delta_m = p.delta_s = delta;
    p.g_ms_tilde = g_tilde;
    p.omega_d = omega_d;
    p.kappa_m = p.kappa_s = kappa;
    return p;
}

SweepSpec make_spec(SystemParams base, Axis a1, std::optional<Axis> a2, Quantity q,
                    Constraint c = Constraint::none) {
    SweepSpec s;
    s.base = base;
    s.axis1 = std::move(a1);
    s.axis2 = std::move(a2);
    s.quantity = q;
    s.constraint = c;
    return s;
}

}  // namespace

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig3a", "fig3b", "fig4a", "fig4b",
                                                "fig5a", "fig5b", "fig6a", "fig6b",
                                                "fig7",  "fig8",  "fig9a", "fig9b"};
    return names;
}

FigureJob figure_preset(std::string_view name) {
    const std::vector<double> kappas{0.15, 0.30, 0.45, 1.0};

    if (name == "fig3a") {
        return make_spec(scenario_a(0.0, 0.0, 0.06, 0.01, 1.0), delta_axis(), g_ms_axis(),
                         Quantity::g2_numeric);
    }
    if (name == "fig3b") {
        return make_spec(scenario_a(9.8, 19.6, 0.0, 0.0, 1.0), omega_s_axis(), omega_d_axis(),
                         Quantity::g2_numeric);
    }
    if (name == "fig4a") {
        return make_spec(scenario_a(0.0, 0.0, 0.06, 0.01, 1.0), g_ms_axis(), kappa_axis(),
                         Quantity::g2_numeric, Constraint::delta_half_coupling);
    }
    if (name == "fig4b") {
        return make_spec(scenario_a(9.8, 19.6, 0.0, 0.01, 1.0), omega_s_axis(), kappa_axis(),
                         Quantity::g2_numeric, Constraint::delta_half_coupling);
    }
    if (name == "fig5a") {
        return make_spec(scenario_a(0.0, 19.6, 0.06, 0.0, 0.15), delta_axis(),
                         Axis::list(Parameter::omega_d, {0.004, 0.01, 0.012}), Quantity::both_g2);
    }
    if (name == "fig5b") {
        return make_spec(scenario_a(0.0, 19.6, 0.0, 0.01, 0.15), delta_axis(),
                         Axis::list(Parameter::omega_s, {0.001, 0.05, 0.09}), Quantity::both_g2);
    }
    if (name == "fig6a") {
        return make_spec(scenario_a(9.8, 19.6, 0.0, 0.01, 0.15), omega_s_axis(),
                         Axis::list(Parameter::kappa, kappas), Quantity::g2_numeric);
    }
    if (name == "fig6b") {
        return make_spec(scenario_a(9.8, 19.6, 0.06, 0.0, 0.15), omega_d_axis(),
                         Axis::list(Parameter::kappa, kappas), Quantity::g2_numeric);
    }
    if (name == "fig7") {
        EvolutionJob job;
        job.params = scenario_a(9.8, 19.6, 0.06, 0.01, 0.15);
        job.initial_qubit = QubitLevel::ground;
        job.initial_fock = 0;
        constexpr int kSamples = 201;
        constexpr double kEnd = 1000.0;
        for (int k = 0; k < kSamples; ++k) job.times.push_back(kEnd * k / (kSamples - 1));
        return job;
    }
    if (name == "fig8") {
        // Delta range widened so the +-g_tilde/2 dips stay inside up to g_tilde = 60.
        return make_spec(scenario_b(0.0, 0.0, 0.01, 1.0),
                         Axis::linear(Parameter::delta, -40.0, 40.0, 321), g_tilde_axis(),
                         Quantity::g2_numeric);
    }
    if (name == "fig9a") {
        return make_spec(scenario_b(0.0, 0.0, 0.01, 1.0), g_tilde_axis(), kappa_axis(),
                         Quantity::g2_numeric, Constraint::delta_half_coupling);
    }
    if (name == "fig9b") {
        return make_spec(scenario_b(25.05, 50.1, 0.0, 1.0),
                         Axis::logarithmic(Parameter::omega_d, 0.001, 0.6, 101), kappa_axis(),
                         Quantity::g2_numeric, Constraint::delta_half_coupling);
    }
    throw ParameterError("unknown figure '" + std::string(name) + "'");
}

EvolutionResult run_evolution(const EvolutionJob& job) {
    const Superoperator L = build_liouvillian(job.params);
    const SpaceDescriptor space = job.params.space();
    const DensityMatrix rho0 = DensityMatrix::pure(space, job.initial_qubit, job.initial_fock);
    const auto states = evolve(L, rho0, job.times);

    EvolutionResult out;
    out.times = job.times;
    for (const auto& rho : states) {
        out.populations.push_back(fock_populations(rho, space));
        try {
            out.g2.push_back(g2_zero(rho, space));
        } catch (const UndefinedCorrelationError&) {
            out.g2.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    return out;
}

}  // namespace mbl
