// result_table.hpp — tabular results with CSV/JSON export
//
// One table per run: named columns, rows of cells. Cells hold nothing, a double,
// a list of doubles (e.g. a site profile) or a string (e.g. an error message).
// CSV uses 17-significant-digit formatting so numeric round-trips are exact.
#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace nesskit {

using Cell = std::variant<std::monostate, double, std::vector<double>, std::string>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows; // each row has columns.size() cells
};

enum class TableFormat { csv, json };

// CSV: header line, LF endings, empty field for missing values, ';'-joined
// entries for lists, RFC-style quoting only where a field needs it.
std::string to_csv(const ResultTable& table);

// JSON: {"columns": [...], "rows": [{column: value, ...}, ...]} with null for
// missing values and arrays for lists.
std::string to_json(const ResultTable& table);

// Serialize and write atomically enough for scripting: on a failed or short
// write the partial file is removed and the OS error is rethrown.
void write_table(const ResultTable& table, const std::filesystem::path& path,
                 TableFormat format);

// Inverse of to_csv: numbers become doubles, ';'-joined numbers become lists,
// empty fields become missing, everything else stays a string.
ResultTable parse_csv(const std::string& text);
ResultTable read_csv_file(const std::filesystem::path& path);

} // namespace nesskit
