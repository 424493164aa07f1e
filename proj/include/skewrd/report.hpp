#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "skewrd/lemmas.hpp"
#include "skewrd/resolvent.hpp"

namespace skewrd {

enum class ReportFormat { text, csv, json_lines };

ReportFormat parse_report_format(const std::string& name);

// A flat table of result records. Doubles are written with 17 significant digits.
struct Report {
    using Cell = std::variant<double, long, std::string, bool>;

    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

// text: one line per row of column=value pairs; csv: header then rows (header only
// when empty); json-lines: one object per row.
void emit_report(const Report& report, ReportFormat format, std::ostream& out);
std::string emit_report(const Report& report, ReportFormat format);

Report lemma_report(const std::vector<LemmaCheck>& checks);
Report norm_sweep_report(const std::vector<NormSample>& samples);

}  // namespace skewrd
