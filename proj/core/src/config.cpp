#include "mbl/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "mbl/errors.hpp"

namespace mbl {

using nlohmann::json;

std::string_view to_string(JobType j) {
    switch (j) {
        case JobType::steady: return "steady";
        case JobType::evolve: return "evolve";
        case JobType::sweep: return "sweep";
        case JobType::spectrum: return "spectrum";
        case JobType::analytic: return "analytic";
        case JobType::figure: return "figure";
    }
    return "?";
}

JobType parse_job_type(std::string_view text) {
    for (JobType j : {JobType::steady, JobType::evolve, JobType::sweep, JobType::spectrum,
                      JobType::analytic, JobType::figure}) {
        if (to_string(j) == text) return j;
    }
    throw ConfigError("unknown job type '" + std::string(text) + "'");
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

namespace {

// Walks a JSON object, tracking the dotted path for diagnostics and
// rejecting keys nobody asked for.
class Reader {
  public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail("expected an object");
    }

    void allow_only(std::initializer_list<std::string_view> keys) const {
        for (const auto& [key, value] : node_.items()) {
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
                throw ConfigError("unknown key '" + field(key) + "'");
            }
        }
    }

    bool has(std::string_view key) const { return node_.contains(std::string(key)); }

    double number(std::string_view key, double fallback) const {
        if (!has(key)) return fallback;
        const json& v = node_.at(std::string(key));
        if (!v.is_number()) throw ConfigError("field '" + field(key) + "' must be a number");
        return v.get<double>();
    }

    int integer(std::string_view key, int fallback) const {
        if (!has(key)) return fallback;
        const json& v = node_.at(std::string(key));
        if (!v.is_number_integer()) throw ConfigError("field '" + field(key) + "' must be an integer");
        return v.get<int>();
    }

    std::string text(std::string_view key, std::string fallback) const {
        if (!has(key)) return fallback;
        const json& v = node_.at(std::string(key));
        if (!v.is_string()) throw ConfigError("field '" + field(key) + "' must be a string");
        return v.get<std::string>();
    }

    Reader child(std::string_view key) const { return Reader(node_.at(std::string(key)), field(key)); }

    const json& raw(std::string_view key) const { return node_.at(std::string(key)); }

    const std::string& path() const noexcept { return path_; }

    std::string field(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError((path_.empty() ? std::string("document") : "field '" + path_ + "'") +
                          ": " + what);
    }

  private:
    const json& node_;
    std::string path_;
};

// Re-throws library exceptions as ConfigError tagged with the field.
template <typename F>
auto guarded(const std::string& field, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("field '" + field + "': " + e.what());
    }
}

SystemParams read_params(const Reader& r) {
    r.allow_only({"delta", "delta_m", "delta_s", "g_ms", "g_ms_tilde", "omega_s", "omega_d",
                  "kappa", "kappa_m", "kappa_s", "n_th", "scenario", "fock_dim"});
    SystemParams p;
    const double delta = r.number("delta", 0.0);
    const double kappa = r.number("kappa", 1.0);
    p.delta_m = r.number("delta_m", delta);
    p.delta_s = r.number("delta_s", delta);
    p.g_ms = r.number("g_ms", 0.0);
    p.g_ms_tilde = r.number("g_ms_tilde", 0.0);
    p.omega_s = r.number("omega_s", 0.0);
    p.omega_d = r.number("omega_d", 0.0);
    p.kappa_m = r.number("kappa_m", kappa);
    p.kappa_s = r.number("kappa_s", kappa);
    p.n_th = r.number("n_th", 0.0);
    p.fock_dim = r.integer("fock_dim", 6);
    const std::string scen = r.text("scenario", "A");
    p.scenario = guarded(r.field("scenario"), [&] { return parse_scenario(scen); });
    guarded(r.path(), [&] {
        p.validate();
        return 0;
    });
    return p;
}

Axis read_axis(const Reader& r) {
    r.allow_only({"parameter", "min", "max", "count", "spacing", "values"});
    if (!r.has("parameter")) r.fail("missing 'parameter'");
    const Parameter param =
        guarded(r.field("parameter"), [&] { return parse_parameter(r.text("parameter", "")); });
    Axis a;
    if (r.has("values")) {
        const json& v = r.raw("values");
        if (!v.is_array()) throw ConfigError("field '" + r.field("values") + "' must be an array");
        std::vector<double> vals;
        for (const auto& x : v) {
            if (!x.is_number()) throw ConfigError("field '" + r.field("values") + "' must hold numbers");
            vals.push_back(x.get<double>());
        }
        if (r.has("min") || r.has("max") || r.has("count")) {
            r.fail("give either 'values' or 'min'/'max'/'count', not both");
        }
        a = Axis::list(param, std::move(vals));
    } else {
        const std::string spacing = r.text("spacing", "linear");
        const double lo = r.number("min", 0.0);
        const double hi = r.number("max", 0.0);
        const int n = r.integer("count", 0);
        if (spacing == "linear") {
            a = Axis::linear(param, lo, hi, n);
        } else if (spacing == "log") {
            a = Axis::logarithmic(param, lo, hi, n);
        } else {
            throw ConfigError("field '" + r.field("spacing") + "' must be 'linear' or 'log'");
        }
    }
    guarded(r.path(), [&] {
        a.validate();
        return 0;
    });
    return a;
}

json write_axis(const Axis& a) {
    json j;
    j["parameter"] = std::string(to_string(a.parameter));
    if (a.spacing == Spacing::list) {
        j["values"] = a.explicit_values;
    } else {
        j["spacing"] = a.spacing == Spacing::linear ? "linear" : "log";
        j["min"] = a.min;
        j["max"] = a.max;
        j["count"] = a.count;
    }
    return j;
}

AxisOverride read_override(const Reader& r) {
    r.allow_only({"min", "max", "count"});
    AxisOverride o;
    if (r.has("min")) o.min = r.number("min", 0.0);
    if (r.has("max")) o.max = r.number("max", 0.0);
    if (r.has("count")) o.count = r.integer("count", 0);
    return o;
}

json write_override(const AxisOverride& o) {
    json j = json::object();
    if (o.min) j["min"] = *o.min;
    if (o.max) j["max"] = *o.max;
    if (o.count) j["count"] = *o.count;
    return j;
}

std::string locate(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON at " + locate(json_text, e.byte) + ": " + e.what());
    }

    Reader root(doc, "");
    root.allow_only({"job", "params", "output", "gamma_mhz", "sweep", "evolve", "spectrum",
                     "figure", "grid"});

    RunConfig c;
    const std::string job = root.text("job", "steady");
    c.job = guarded("job", [&] { return parse_job_type(job); });
    if (root.has("params")) c.params = read_params(root.child("params"));

    if (root.has("output")) {
        const Reader out = root.child("output");
        out.allow_only({"path", "format"});
        c.output_path = out.text("path", "");
        const std::string fmt = out.text("format", "csv");
        c.output_format = guarded("output.format", [&] { return parse_output_format(fmt); });
    }
    if (root.has("gamma_mhz")) {
        c.gamma_mhz = root.number("gamma_mhz", 1.0);
        if (!(*c.gamma_mhz > 0.0)) throw ConfigError("field 'gamma_mhz' must be > 0");
    }

    if (root.has("sweep")) {
        const Reader s = root.child("sweep");
        s.allow_only({"axis1", "axis2", "quantity", "constraint"});
        if (!s.has("axis1")) s.fail("missing 'axis1'");
        SweepSpec spec;
        spec.base = c.params;
        spec.axis1 = read_axis(s.child("axis1"));
        if (s.has("axis2")) spec.axis2 = read_axis(s.child("axis2"));
        const std::string q = s.text("quantity", "g2_numeric");
        spec.quantity = guarded("sweep.quantity", [&] { return parse_quantity(q); });
        const std::string con = s.text("constraint", "none");
        spec.constraint = guarded("sweep.constraint", [&] { return parse_constraint(con); });
        guarded("sweep", [&] {
            spec.validate();
            return 0;
        });
        c.sweep = std::move(spec);
    }
    if (c.job == JobType::sweep && !c.sweep) {
        throw ConfigError("job 'sweep' requires a 'sweep' section");
    }

    if (root.has("evolve")) {
        const Reader e = root.child("evolve");
        e.allow_only({"t_end", "samples"});
        c.evolve.t_end = e.number("t_end", c.evolve.t_end);
        c.evolve.samples = e.integer("samples", c.evolve.samples);
        if (!(c.evolve.t_end > 0.0)) throw ConfigError("field 'evolve.t_end' must be > 0");
        if (c.evolve.samples < 2) throw ConfigError("field 'evolve.samples' must be >= 2");
    }
    if (root.has("spectrum")) {
        const Reader s = root.child("spectrum");
        s.allow_only({"omega_m", "e_z", "n_max"});
        c.spectrum.omega_m = s.number("omega_m", 0.0);
        c.spectrum.e_z = s.number("e_z", 0.0);
        c.spectrum.n_max = s.integer("n_max", 3);
        if (c.spectrum.n_max < 1) throw ConfigError("field 'spectrum.n_max' must be >= 1");
    }

    c.figure = root.text("figure", "");
    if (!c.figure.empty()) {
        const auto& names = figure_names();
        if (std::find(names.begin(), names.end(), c.figure) == names.end()) {
            throw ConfigError("field 'figure': unknown figure '" + c.figure + "'");
        }
    }
    if (c.job == JobType::figure && c.figure.empty()) {
        throw ConfigError("job 'figure' requires a 'figure' name");
    }

    if (root.has("grid")) {
        const Reader g = root.child("grid");
        g.allow_only({"axis1", "axis2"});
        if (g.has("axis1")) c.grid.axis1 = read_override(g.child("axis1"));
        if (g.has("axis2")) c.grid.axis2 = read_override(g.child("axis2"));
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::string to_json(const RunConfig& c) {
    json doc;
    doc["job"] = std::string(to_string(c.job));
    const SystemParams& p = c.params;
    doc["params"] = {
        {"delta_m", p.delta_m},       {"delta_s", p.delta_s}, {"g_ms", p.g_ms},
        {"g_ms_tilde", p.g_ms_tilde}, {"omega_s", p.omega_s}, {"omega_d", p.omega_d},
        {"kappa_m", p.kappa_m},       {"kappa_s", p.kappa_s}, {"n_th", p.n_th},
        {"scenario", std::string(to_string(p.scenario))},     {"fock_dim", p.fock_dim},
    };
    doc["output"] = {{"path", c.output_path}, {"format", std::string(to_string(c.output_format))}};
    if (c.gamma_mhz) doc["gamma_mhz"] = *c.gamma_mhz;
    if (c.sweep) {
        json s;
        s["axis1"] = write_axis(c.sweep->axis1);
        if (c.sweep->axis2) s["axis2"] = write_axis(*c.sweep->axis2);
        s["quantity"] = std::string(to_string(c.sweep->quantity));
        s["constraint"] = std::string(to_string(c.sweep->constraint));
        doc["sweep"] = s;
    }
    doc["evolve"] = {{"t_end", c.evolve.t_end}, {"samples", c.evolve.samples}};
    doc["spectrum"] = {
        {"omega_m", c.spectrum.omega_m}, {"e_z", c.spectrum.e_z}, {"n_max", c.spectrum.n_max}};
    if (!c.figure.empty()) doc["figure"] = c.figure;
    if (c.grid.axis1 || c.grid.axis2) {
        json g = json::object();
        if (c.grid.axis1) g["axis1"] = write_override(*c.grid.axis1);
        if (c.grid.axis2) g["axis2"] = write_override(*c.grid.axis2);
        doc["grid"] = g;
    }
    return doc.dump(2) + "\n";
}

SweepSpec apply_overrides(SweepSpec spec, const GridOverrides& grid) {
    auto apply = [](Axis& a, const AxisOverride& o, const char* which) {
        if (a.spacing == Spacing::list) {
            throw ConfigError(std::string("grid.") + which + ": preset axis is an explicit list");
        }
        if (o.min) a.min = *o.min;
        if (o.max) a.max = *o.max;
        if (o.count) a.count = *o.count;
        try {
            a.validate();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("grid.") + which + ": " + e.what());
        }
    };
    if (grid.axis1) apply(spec.axis1, *grid.axis1, "axis1");
    if (grid.axis2) {
        if (!spec.axis2) throw ConfigError("grid.axis2: preset has no second axis");
        apply(*spec.axis2, *grid.axis2, "axis2");
    }
    return spec;
}

}  // namespace mbl
