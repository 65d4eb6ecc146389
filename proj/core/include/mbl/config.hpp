#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mbl/model.hpp"
#include "mbl/sweep.hpp"

namespace mbl {

enum class JobType { steady, evolve, sweep, spectrum, analytic, figure };
enum class OutputFormat { csv, json };

std::string_view to_string(JobType j);
JobType parse_job_type(std::string_view text);
std::string_view to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view text);

struct EvolveSettings {
    double t_end = 1000.0;
    int samples = 201;

    friend bool operator==(const EvolveSettings&, const EvolveSettings&) = default;
};

struct SpectrumSettings {
    double omega_m = 0.0;
    double e_z = 0.0;
    int n_max = 3;

    friend bool operator==(const SpectrumSettings&, const SpectrumSettings&) = default;
};

/// Replaces parts of a preset axis; unset fields keep the preset value.
struct AxisOverride {
    std::optional<double> min;
    std::optional<double> max;
    std::optional<int> count;

    friend bool operator==(const AxisOverride&, const AxisOverride&) = default;
};

struct GridOverrides {
    std::optional<AxisOverride> axis1;
    std::optional<AxisOverride> axis2;

    friend bool operator==(const GridOverrides&, const GridOverrides&) = default;
};

/// Everything one CLI invocation needs. Loaded from a single JSON document;
/// command-line flags are applied on top by the front-end.
struct RunConfig {
    JobType job = JobType::steady;
    SystemParams params;
    std::string output_path;  // empty: stdout
    OutputFormat output_format = OutputFormat::csv;
    std::optional<double> gamma_mhz;
    std::optional<SweepSpec> sweep;  // job == sweep; its `base` mirrors `params`
    EvolveSettings evolve;
    SpectrumSettings spectrum;
    std::string figure;
    GridOverrides grid;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a RunConfig document. Unknown keys, wrong types and
/// invalid parameters raise ConfigError naming the line or field at fault.
RunConfig parse_run_config(std::string_view json_text);

RunConfig load_run_config(const std::string& path);

/// Canonical JSON form; parse_run_config(to_json(c)) == c.
std::string to_json(const RunConfig& config);

/// Applies `grid` overrides to a preset sweep.
SweepSpec apply_overrides(SweepSpec spec, const GridOverrides& grid);

}  // namespace mbl
