#pragma once

#include <string>

#include "sttrace/experiments.hpp"

namespace sttrace {

enum class ReportFormat { Csv, Json, Svg };

/// "csv", "json" or "svg"; anything else is InvalidArgument.
ReportFormat parse_report_format(const std::string& text);

/// Columns n,k_n,window_ok,delta_mid,delta_rad,tail_bound,proxy,bound,pass,reason.
/// Numbers use %.17g, missing values are empty, pass is true/false/skip.
std::string report_to_csv(const ExperimentReport& report);

/// The CSV columns plus the extra per-row checks and the metadata block.
std::string report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);

/// Log-scale line plot of proxy and bound against n.
std::string report_to_svg(const ExperimentReport& report);

std::string render_report(const ExperimentReport& report, ReportFormat format);

/// Writes the rendered report; Io errors name the path.
void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path);

/// %.17g
std::string format_double(double v);

/// Writes text to path (or stdout for "-"); throws Io with the path on failure.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace sttrace
