#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mbl/model.hpp"
#include "mbl/sweep.hpp"

namespace mbl {

/// 17 significant digits, '.' decimal point regardless of locale; NaN is
/// written as "nan".
std::string format_number(double v);

/// Column header used for a channel: g2 channels are written as log10.
std::string column_name(const std::string& channel);

/// Channel value as written (log10 for g2 channels).
double column_value(const std::string& channel, double raw);

struct OutputMetadata {
    std::string version;
    std::string timestamp;  // ISO-8601 UTC; excluded from CSV
    std::optional<double> gamma_mhz;
};

OutputMetadata make_metadata(std::optional<double> gamma_mhz);

/// Header: axis names then channel columns; one LF-terminated row per grid
/// point in axis-major order.
void write_csv(std::ostream& os, const ResultGrid& grid);

/// {spec, axes, columns, values, failures, metadata}.
void write_json(std::ostream& os, const ResultGrid& grid, const OutputMetadata& meta);

/// t, p0..p3, log10_g2.
void write_csv(std::ostream& os, const EvolutionResult& result);
void write_json(std::ostream& os, const EvolutionResult& result, const OutputMetadata& meta);

void write_csv(std::ostream& os, const std::vector<DressedLevel>& levels);
void write_json(std::ostream& os, const std::vector<DressedLevel>& levels, const OutputMetadata& meta);

}  // namespace mbl
