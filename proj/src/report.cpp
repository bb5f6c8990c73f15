#include "sqa/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sqa {

bool parse_output_format(const std::string& name, OutputFormat& out) {
    if (name == "table") {
        out = OutputFormat::Table;
        return true;
    }
    if (name == "csv") {
        out = OutputFormat::Csv;
        return true;
    }
    if (name == "structured") {
        out = OutputFormat::Structured;
        return true;
    }
    return false;
}

std::string format_number(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void render_table(std::ostringstream& os, const ReportTable& t) {
    os << "# " << t.title << '\n';
    std::vector<size_t> widths(t.headers.size(), 0);
    for (size_t i = 0; i < t.headers.size(); ++i) widths[i] = t.headers[i].size();
    for (const auto& row : t.rows)
        for (size_t i = 0; i < row.size() && i < widths.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            os << row[i];
            if (i + 1 < row.size())
                os << std::string(widths[i] - row[i].size() + 2, ' ');
        }
        os << '\n';
    };
    emit_row(t.headers);
    for (const auto& row : t.rows) emit_row(row);
}

void render_csv(std::ostringstream& os, const ReportTable& t) {
    os << "# " << t.title << '\n';
    for (size_t i = 0; i < t.headers.size(); ++i)
        os << (i ? "," : "") << csv_escape(t.headers[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
        os << '\n';
    }
}

void render_structured(std::ostringstream& os, const ReportTable& t) {
    os << "record " << t.title << '\n';
    for (const auto& row : t.rows) {
        os << "entry";
        for (size_t i = 0; i < row.size(); ++i)
            os << ' ' << (i < t.headers.size() ? t.headers[i] : "field") << '=' << row[i];
        os << '\n';
    }
}

}  // namespace

std::string render(const ReportTable& table, OutputFormat format) {
    std::ostringstream os;
    switch (format) {
        case OutputFormat::Table: render_table(os, table); break;
        case OutputFormat::Csv: render_csv(os, table); break;
        case OutputFormat::Structured: render_structured(os, table); break;
    }
    return os.str();
}

std::string render_all(const std::vector<ReportTable>& tables, OutputFormat format) {
    std::string out;
    for (const auto& t : tables) {
        if (!out.empty()) out += '\n';
        out += render(t, format);
    }
    return out;
}

}  // namespace sqa
