#include "skewrd/report.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "skewrd/config.hpp"
#include "skewrd/error.hpp"

namespace skewrd {

ReportFormat parse_report_format(const std::string& name) {
    if (name == "text") return ReportFormat::text;
    if (name == "csv") return ReportFormat::csv;
    if (name == "json-lines") return ReportFormat::json_lines;
    fail(ErrorCode::config_value, "report format '" + name + "' is not text, csv or json-lines");
}

void Report::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        fail(ErrorCode::invalid_argument, "report row has " + std::to_string(row.size()) +
                                              " cells for " + std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

namespace {

std::string plain(const Report::Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return format_double(v);
            else if constexpr (std::is_same_v<T, long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else return v;
        },
        c);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

std::string json_value(const Report::Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_double(*d) : "null";
    if (const std::string* s = std::get_if<std::string>(&c)) return nlohmann::json(*s).dump();
    return plain(c);
}

}  // namespace

void emit_report(const Report& r, ReportFormat format, std::ostream& out) {
    switch (format) {
        case ReportFormat::text:
            for (const auto& row : r.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    out << (i ? " " : "") << r.columns[i] << "=" << plain(row[i]);
                }
                out << "\n";
            }
            break;
        case ReportFormat::csv:
            for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_field(r.columns[i]);
            out << "\n";
            for (const auto& row : r.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(plain(row[i]));
                out << "\n";
            }
            break;
        case ReportFormat::json_lines:
            for (const auto& row : r.rows) {
                out << "{";
                for (std::size_t i = 0; i < row.size(); ++i) {
                    out << (i ? "," : "") << nlohmann::json(r.columns[i]).dump() << ":" << json_value(row[i]);
                }
                out << "}\n";
            }
            break;
    }
    if (!out) fail(ErrorCode::io_failure, "failed to write report");
}

std::string emit_report(const Report& report, ReportFormat format) {
    std::ostringstream ss;
    emit_report(report, format, ss);
    return ss.str();
}

Report lemma_report(const std::vector<LemmaCheck>& checks) {
    Report r;
    r.columns = {"lemma", "status", "samples", "violations", "worst_margin", "extreme_value"};
    for (const LemmaCheck& c : checks) {
        r.add({c.name, std::string(c.passed() ? "pass" : "fail"), c.samples, c.violations,
               c.worst_margin, c.extreme_value});
    }
    return r;
}

Report norm_sweep_report(const std::vector<NormSample>& samples) {
    Report r;
    r.columns = {"lambda_re", "lambda_im", "norm_product"};
    for (const NormSample& s : samples) r.add({s.lambda.real(), s.lambda.imag(), s.product});
    return r;
}

}  // namespace skewrd
