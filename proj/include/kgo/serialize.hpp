#pragma once

#include "kgo/measures.hpp"
#include "kgo/published.hpp"
#include "kgo/spectrum.hpp"
#include "kgo/states.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace kgo {

/// Shortest round-trip text for a double; "NA" for an empty optional.
std::string format_number(double value);
std::string format_optional(const std::optional<double>& value);

/// Column order of the uncertainty table.
const std::vector<std::string>& table_columns();
/// Diagnostic columns appended after the table columns.
const std::vector<std::string>& report_extra_columns();

std::string csv_header(bool compare_paper);
std::string csv_row(const MeasureReport& report, bool compare_paper);

nlohmann::json to_json(const InequalityRecord& record);
nlohmann::json to_json(const MeasureReport& report);
nlohmann::json to_json(const PublishedRow& row);
nlohmann::json to_json(const EnergyLevel& level);
nlohmann::json to_json(const DensityCurve& curve);

InequalityRecord inequality_from_json(const nlohmann::json& j);
MeasureReport report_from_json(const nlohmann::json& j);

/// Table values of a report in table_columns() order (n and gamma first).
std::vector<std::optional<double>> table_values(const MeasureReport& report);
std::vector<double> table_values(const PublishedRow& row);

std::string density_csv(const DensityCurve& curve);

}  // namespace kgo
