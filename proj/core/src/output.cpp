#include "mbl/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>

#include <json.hpp>

#ifndef MBL_VERSION
#define MBL_VERSION "0.1.0"
#endif

namespace mbl {

using nlohmann::json;

namespace {

constexpr std::size_t kPopulationColumns = 4;

json number_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json spec_to_json(const SweepSpec& s) {
    const SystemParams& p = s.base;
    json j;
    j["base"] = {
        {"delta_m", p.delta_m},       {"delta_s", p.delta_s}, {"g_ms", p.g_ms},
        {"g_ms_tilde", p.g_ms_tilde}, {"omega_s", p.omega_s}, {"omega_d", p.omega_d},
        {"kappa_m", p.kappa_m},       {"kappa_s", p.kappa_s}, {"n_th", p.n_th},
        {"scenario", std::string(to_string(p.scenario))},     {"fock_dim", p.fock_dim},
    };
    j["quantity"] = std::string(to_string(s.quantity));
    j["constraint"] = std::string(to_string(s.constraint));
    return j;
}

json metadata_to_json(const OutputMetadata& m) {
    json j{{"version", m.version}, {"timestamp", m.timestamp}};
    if (m.gamma_mhz) j["gamma_mhz"] = *m.gamma_mhz;
    return j;
}

void write_row(std::ostream& os, const std::vector<double>& row) {
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (k) os << ',';
        os << format_number(row[k]);
    }
    os << '\n';
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string column_name(const std::string& channel) {
    return channel.rfind("g2", 0) == 0 ? "log10_" + channel : channel;
}

double column_value(const std::string& channel, double raw) {
    if (channel.rfind("g2", 0) != 0) return raw;
    return raw > 0.0 ? std::log10(raw) : std::numeric_limits<double>::quiet_NaN();
}

OutputMetadata make_metadata(std::optional<double> gamma_mhz) {
    OutputMetadata m;
    m.version = MBL_VERSION;
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    m.timestamp = buf;
    m.gamma_mhz = gamma_mhz;
    return m;
}

void write_csv(std::ostream& os, const ResultGrid& grid) {
    os << to_string(grid.spec.axis1.parameter);
    if (grid.spec.axis2) os << ',' << to_string(grid.spec.axis2->parameter);
    for (const auto& ch : grid.channels) os << ',' << column_name(ch);
    os << '\n';

    std::vector<double> row;
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            row.clear();
            row.push_back(grid.axis1_values[i]);
            if (grid.spec.axis2) row.push_back(grid.axis2_values[j]);
            for (std::size_t k = 0; k < grid.channels.size(); ++k) {
                row.push_back(column_value(grid.channels[k], grid.at(i, j, k)));
            }
            write_row(os, row);
        }
    }
}

void write_json(std::ostream& os, const ResultGrid& grid, const OutputMetadata& meta) {
    json doc;
    doc["spec"] = spec_to_json(grid.spec);

    json axes = json::array();
    axes.push_back({{"name", std::string(to_string(grid.spec.axis1.parameter))},
                    {"values", grid.axis1_values}});
    if (grid.spec.axis2) {
        axes.push_back({{"name", std::string(to_string(grid.spec.axis2->parameter))},
                        {"values", grid.axis2_values}});
    }
    doc["axes"] = axes;

    json columns = json::array();
    for (const auto& ch : grid.channels) columns.push_back(column_name(ch));
    doc["columns"] = columns;

    json values = json::array();
    for (std::size_t c = 0; c < grid.values.size(); ++c) {
        json row = json::array();
        for (std::size_t k = 0; k < grid.channels.size(); ++k) {
            row.push_back(number_or_null(column_value(grid.channels[k], grid.values[c][k])));
        }
        values.push_back(row);
    }
    doc["values"] = values;

    json failures = json::array();
    for (const auto& f : grid.failures) {
        failures.push_back({{"index", {f.i, f.j}},
                            {"channel", column_name(grid.channels[f.channel])},
                            {"tag", f.tag}});
    }
    doc["failures"] = failures;
    doc["metadata"] = metadata_to_json(meta);
    os << doc.dump(2) << '\n';
}

void write_csv(std::ostream& os, const EvolutionResult& result) {
    os << 't';
    for (std::size_t n = 0; n < kPopulationColumns; ++n) os << ",p" << n;
    os << ",log10_g2\n";
    std::vector<double> row;
    for (std::size_t s = 0; s < result.times.size(); ++s) {
        row.clear();
        row.push_back(result.times[s]);
        for (std::size_t n = 0; n < kPopulationColumns; ++n) {
            const auto& pops = result.populations[s];
            row.push_back(n < pops.size() ? pops[n] : 0.0);
        }
        row.push_back(column_value("g2", result.g2[s]));
        write_row(os, row);
    }
}

void write_json(std::ostream& os, const EvolutionResult& result, const OutputMetadata& meta) {
    json doc;
    doc["times"] = result.times;
    doc["populations"] = result.populations;
    json g2 = json::array();
    for (double v : result.g2) g2.push_back(number_or_null(column_value("g2", v)));
    doc["log10_g2"] = g2;
    doc["metadata"] = metadata_to_json(meta);
    os << doc.dump(2) << '\n';
}

void write_csv(std::ostream& os, const std::vector<DressedLevel>& levels) {
    os << "n,branch,energy,c_g_n,c_e_nm1\n";
    for (const auto& l : levels) {
        os << std::to_string(l.n) << ',' << (l.branch == Branch::plus ? "plus" : "minus") << ','
           << format_number(l.energy) << ',' << format_number(l.c_g_n) << ','
           << format_number(l.c_e_nm1) << '\n';
    }
}

void write_json(std::ostream& os, const std::vector<DressedLevel>& levels, const OutputMetadata& meta) {
    json arr = json::array();
    for (const auto& l : levels) {
        arr.push_back({{"n", l.n},
                       {"branch", l.branch == Branch::plus ? "plus" : "minus"},
                       {"energy", l.energy},
                       {"c_g_n", l.c_g_n},
                       {"c_e_nm1", l.c_e_nm1}});
    }
    json doc{{"levels", arr}, {"metadata", metadata_to_json(meta)}};
    os << doc.dump(2) << '\n';
}

}  // namespace mbl
