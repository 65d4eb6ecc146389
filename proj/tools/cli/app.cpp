#include "app.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mbl/mbl.hpp"

namespace mbl::cli {

namespace {

// Flags that, when given, override the corresponding config-file values.
struct ParamFlags {
    std::optional<double> delta, delta_m, delta_s, g_ms, g_ms_tilde, omega_s, omega_d;
    std::optional<double> kappa, kappa_m, kappa_s, n_th;
    std::optional<std::string> scenario;
    std::optional<int> fock_dim;

    bool any() const {
        return delta || delta_m || delta_s || g_ms || g_ms_tilde || omega_s || omega_d || kappa ||
               kappa_m || kappa_s || n_th || scenario || fock_dim;
    }

    void apply(SystemParams& p) const {
        if (delta) p.delta_m = p.delta_s = *delta;
        if (delta_m) p.delta_m = *delta_m;
        if (delta_s) p.delta_s = *delta_s;
        if (g_ms) p.g_ms = *g_ms;
        if (g_ms_tilde) p.g_ms_tilde = *g_ms_tilde;
        if (omega_s) p.omega_s = *omega_s;
        if (omega_d) p.omega_d = *omega_d;
        if (kappa) p.kappa_m = p.kappa_s = *kappa;
        if (kappa_m) p.kappa_m = *kappa_m;
        if (kappa_s) p.kappa_s = *kappa_s;
        if (n_th) p.n_th = *n_th;
        if (scenario) p.scenario = parse_scenario(*scenario);
        if (fock_dim) p.fock_dim = *fock_dim;
    }
};

struct Options {
    std::string config_path;
    ParamFlags params;
    std::optional<std::string> out_path;
    std::optional<std::string> format;
    std::optional<double> gamma_mhz;

    std::optional<double> t_end;
    std::optional<int> samples;

    std::optional<double> omega_m, e_z;
    std::optional<int> n_max;

    std::string figure;
    std::optional<int> axis1_count, axis2_count;
};

void add_param_flags(CLI::App& app, Options& o) {
    const auto grp = "Model parameters (units of gamma)";
    app.add_option("--delta", o.params.delta, "Common detuning: delta_m = delta_s")->group(grp);
    app.add_option("--delta-m", o.params.delta_m, "Magnon-probe detuning")->group(grp);
    app.add_option("--delta-s", o.params.delta_s, "Qubit detuning")->group(grp);
    app.add_option("--g-ms", o.params.g_ms, "Qubit-magnon coupling (scenario A)")->group(grp);
    app.add_option("--g-ms-tilde", o.params.g_ms_tilde, "Transverse coupling (scenario B)")->group(grp);
    app.add_option("--omega-s", o.params.omega_s, "Qubit drive amplitude")->group(grp);
    app.add_option("--omega-d", o.params.omega_d, "Magnon probe amplitude")->group(grp);
    app.add_option("--kappa", o.params.kappa, "Common decay: kappa_m = kappa_s")->group(grp);
    app.add_option("--kappa-m", o.params.kappa_m, "Magnon decay rate")->group(grp);
    app.add_option("--kappa-s", o.params.kappa_s, "Qubit decay rate")->group(grp);
    app.add_option("--n-th", o.params.n_th, "Thermal magnon occupation")->group(grp);
    app.add_option("--scenario", o.params.scenario, "A or B")->group(grp);
    app.add_option("--fock-dim", o.params.fock_dim, "Fock truncation N")->group(grp);
}

OutputFormat resolve_format(const Options& o, OutputFormat from_config) {
    if (o.format) return parse_output_format(*o.format);
    if (o.out_path && o.out_path->size() >= 5 &&
        o.out_path->compare(o.out_path->size() - 5, 5, ".json") == 0) {
        return OutputFormat::json;
    }
    return from_config;
}

RunConfig assemble(const Options& o, std::optional<JobType> job) {
    RunConfig c = o.config_path.empty() ? RunConfig{} : load_run_config(o.config_path);
    if (job) c.job = *job;
    try {
        o.params.apply(c.params);
        c.params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    if (c.sweep) c.sweep->base = c.params;
    if (o.out_path) c.output_path = *o.out_path;
    c.output_format = resolve_format(o, c.output_format);
    if (o.gamma_mhz) c.gamma_mhz = *o.gamma_mhz;
    if (o.t_end) c.evolve.t_end = *o.t_end;
    if (o.samples) c.evolve.samples = *o.samples;
    if (o.omega_m) c.spectrum.omega_m = *o.omega_m;
    if (o.e_z) c.spectrum.e_z = *o.e_z;
    if (o.n_max) c.spectrum.n_max = *o.n_max;
    if (!o.figure.empty()) c.figure = o.figure;
    if (o.axis1_count) {
        if (!c.grid.axis1) c.grid.axis1.emplace();
        c.grid.axis1->count = *o.axis1_count;
    }
    if (o.axis2_count) {
        if (!c.grid.axis2) c.grid.axis2.emplace();
        c.grid.axis2->count = *o.axis2_count;
    }
    return c;
}

// Writes via `emit` to the configured file or to `out`.
template <typename Emit>
void deliver(const RunConfig& c, std::ostream& out, std::ostream& err, Emit&& emit) {
    if (c.output_path.empty()) {
        emit(out);
        return;
    }
    std::ofstream file(c.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open output file '" + c.output_path + "'");
    file.imbue(std::locale::classic());
    emit(file);
    if (!file) throw ConfigError("failed writing '" + c.output_path + "'");
    err << "wrote " << c.output_path << '\n';
}

void emit_grid(const RunConfig& c, const ResultGrid& grid, std::ostream& out, std::ostream& err) {
    deliver(c, out, err, [&](std::ostream& os) {
        if (c.output_format == OutputFormat::csv) {
            write_csv(os, grid);
        } else {
            write_json(os, grid, make_metadata(c.gamma_mhz));
        }
    });
    if (!grid.failures.empty()) {
        err << grid.failures.size() << " grid point(s) failed; see output for sentinels\n";
    }
}

void emit_evolution(const RunConfig& c, const EvolutionResult& r, std::ostream& out, std::ostream& err) {
    deliver(c, out, err, [&](std::ostream& os) {
        if (c.output_format == OutputFormat::csv) {
            write_csv(os, r);
        } else {
            write_json(os, r, make_metadata(c.gamma_mhz));
        }
    });
}

void line(std::ostream& out, const std::string& key, double v) {
    out << std::left << std::setw(22) << key << format_number(v) << '\n';
}

int job_steady(const RunConfig& c, std::ostream& out) {
    const SystemParams& p = c.params;
    const Superoperator L = build_liouvillian(p);
    const DensityMatrix rho = steady_state(L);
    const auto pops = fock_populations(rho, p.space());

    out << "scenario              " << to_string(p.scenario) << '\n';
    line(out, "trace", rho.data().trace().real());
    line(out, "hermiticity_defect", hermiticity_defect(rho.op()));
    line(out, "min_eigenvalue", min_eigenvalue(rho.op()));
    line(out, "residual", steady_residual(L, rho));
    for (std::size_t n = 0; n < std::min<std::size_t>(4, pops.size()); ++n) {
        line(out, "P" + std::to_string(n), pops[n]);
    }
    const double occ = mean_occupation(rho);
    line(out, "mean_occupation", occ);
    if (c.gamma_mhz) line(out, "gamma_mhz", *c.gamma_mhz);

    const double g2 = g2_zero(rho, p.space());
    line(out, "g2", g2);
    line(out, "log10_g2", column_value("g2", g2));
    return ok;
}

int job_analytic(const RunConfig& c, std::ostream& out) {
    const AmplitudeSet a = closed_form_amplitudes(c.params);
    auto amp = [&](const char* name, Complex v) {
        out << std::left << std::setw(22) << name << format_number(v.real()) << ' '
            << (v.imag() < 0 ? "- " : "+ ") << format_number(std::abs(v.imag())) << "i\n";
    };
    amp("c_g0", a.c_g0);
    amp("c_e0", a.c_e0);
    amp("c_g1", a.c_g1);
    amp("c_e1", a.c_e1);
    amp("c_g2", a.c_g2);
    const auto [plus, minus] = optimal_detuning(c.params.g_ms);
    line(out, "optimal_delta_plus", plus);
    line(out, "optimal_delta_minus", minus);
    const double g2 = g2_from_amplitudes(a);
    line(out, "g2", g2);
    line(out, "log10_g2", column_value("g2", g2));
    return ok;
}

int job_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const double g = c.params.active_coupling();
    const auto levels = dressed_spectrum(c.spectrum.omega_m, c.spectrum.e_z, g, c.spectrum.n_max);
    deliver(c, out, err, [&](std::ostream& os) {
        if (c.output_format == OutputFormat::csv) {
            write_csv(os, levels);
        } else {
            write_json(os, levels, make_metadata(c.gamma_mhz));
        }
    });
    return ok;
}

int job_evolve(const RunConfig& c, std::ostream& out, std::ostream& err) {
    EvolutionJob job;
    job.params = c.params;
    const int n = c.evolve.samples;
    for (int k = 0; k < n; ++k) job.times.push_back(c.evolve.t_end * k / (n - 1));
    emit_evolution(c, run_evolution(job), out, err);
    return ok;
}

int job_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (!c.sweep) throw ConfigError("sweep: no 'sweep' section in the config");
    emit_grid(c, run_sweep(*c.sweep), out, err);
    return ok;
}

int job_figure(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.figure.empty()) throw ConfigError("figure: missing figure name");
    FigureJob job;
    try {
        job = figure_preset(c.figure);
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    if (auto* spec = std::get_if<SweepSpec>(&job)) {
        emit_grid(c, run_sweep(apply_overrides(*spec, c.grid)), out, err);
    } else {
        emit_evolution(c, run_evolution(std::get<EvolutionJob>(job)), out, err);
    }
    return ok;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
    switch (c.job) {
        case JobType::steady: return job_steady(c, out);
        case JobType::evolve: return job_evolve(c, out, err);
        case JobType::sweep: return job_sweep(c, out, err);
        case JobType::spectrum: return job_spectrum(c, out, err);
        case JobType::analytic: return job_analytic(c, out);
        case JobType::figure: return job_figure(c, out, err);
    }
    return config_error;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Magnon blockade in a skyrmion-qubit/magnon hybrid: steady states, "
                 "g2(0), dynamics and figure sweeps",
                 "mbl"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("-c,--config", o.config_path, "JSON RunConfig; flags override its values")
        ->check(CLI::ExistingFile);
    app.add_option("-o,--out", o.out_path, "Output file (default: stdout)");
    app.add_option("--format", o.format, "csv or json (default: from --out extension, else csv)");
    app.add_option("--gamma-mhz", o.gamma_mhz, "Echo the unit gamma/2pi in MHz into metadata");
    add_param_flags(app, o);

    auto* steady = app.add_subcommand("steady", "Steady state diagnostics and g2(0)");
    auto* evolve = app.add_subcommand("evolve", "Fock populations and g2(0) from |g',0> over time");
    evolve->add_option("--t-end", o.t_end, "Final time (1/gamma)");
    evolve->add_option("--samples", o.samples, "Number of output samples");
    auto* sweep = app.add_subcommand("sweep", "Run the sweep described in --config");
    auto* figure = app.add_subcommand("figure", "Run a figure preset");
    figure->add_option("name", o.figure, "Preset name")
        ->required()
        ->check(CLI::IsMember(figure_names()));
    figure->add_option("--axis1-count", o.axis1_count, "Override grid points on axis 1");
    figure->add_option("--axis2-count", o.axis2_count, "Override grid points on axis 2");
    auto* spectrum = app.add_subcommand("spectrum", "Dressed-state energies and coefficients");
    spectrum->add_option("--omega-m", o.omega_m, "Magnon frequency");
    spectrum->add_option("--e-z", o.e_z, "Qubit splitting");
    spectrum->add_option("--n-max", o.n_max, "Highest excitation number");
    auto* analytic = app.add_subcommand("analytic", "Closed-form amplitudes and g2(0)");
    auto* run_cfg = app.add_subcommand("run", "Run the job named in --config");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream so, se;
        const int code = app.exit(e, so, se);
        out << so.str();
        err << se.str();
        return code == 0 ? ok : config_error;
    }

    try {
        std::optional<JobType> job;
        if (steady->parsed()) job = JobType::steady;
        if (evolve->parsed()) job = JobType::evolve;
        if (sweep->parsed()) job = JobType::sweep;
        if (figure->parsed()) job = JobType::figure;
        if (spectrum->parsed()) job = JobType::spectrum;
        if (analytic->parsed()) job = JobType::analytic;
        if (run_cfg->parsed() && o.config_path.empty()) {
            throw ConfigError("run: --config is required");
        }
        if ((sweep->parsed()) && o.config_path.empty()) {
            throw ConfigError("sweep: --config is required");
        }
        if (figure->parsed() && o.params.any()) {
            throw ConfigError("figure presets fix their own parameters; drop the model flags");
        }
        return dispatch(assemble(o, job), out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const ParameterError& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const DimensionError& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return numerical_failure;
    }
}

}  // namespace mbl::cli
