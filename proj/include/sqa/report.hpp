#pragma once

#include <string>
#include <vector>

namespace sqa {

enum class OutputFormat { Table, Csv, Structured };

bool parse_output_format(const std::string& name, OutputFormat& out);

// A titled grid of cells; the first row in `rows` is data, headers are kept
// separately so every format can render them its own way.
struct ReportTable {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

std::string render(const ReportTable& table, OutputFormat format);
std::string render_all(const std::vector<ReportTable>& tables, OutputFormat format);

std::string format_number(double v);

}  // namespace sqa
