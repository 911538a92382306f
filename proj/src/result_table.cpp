// result_table.cpp — CSV/JSON serialization of result tables
#include "nesskit/result_table.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace nesskit {

namespace {

void check_shape(const ResultTable& table) {
    if (table.columns.empty())
        throw std::invalid_argument("result table has no columns");
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size())
            throw std::invalid_argument(fmt::format(
                "row has {} cells but the table has {} columns", row.size(),
                table.columns.size()));
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_to_csv(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, std::vector<double>>) {
                std::string joined;
                for (size_t i = 0; i < v.size(); ++i) {
                    if (i > 0)
                        joined += ';';
                    joined += format_double(v[i]);
                }
                return joined;
            } else {
                return csv_escape(v);
            }
        },
        cell);
}

bool parse_double(const std::string& field, double& out) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

Cell classify_field(const std::string& field) {
    if (field.empty())
        return std::monostate{};
    double d = 0.0;
    if (parse_double(field, d))
        return d;
    if (field.find(';') != std::string::npos) {
        std::vector<double> values;
        size_t start = 0;
        bool all_numeric = true;
        while (start <= field.size()) {
            const size_t stop = field.find(';', start);
            const std::string part =
                field.substr(start, stop == std::string::npos ? stop : stop - start);
            double v = 0.0;
            if (!parse_double(part, v)) {
                all_numeric = false;
                break;
            }
            values.push_back(v);
            if (stop == std::string::npos)
                break;
            start = stop + 1;
        }
        if (all_numeric)
            return values;
    }
    return field;
}

// Split one CSV record (no trailing newline) honoring quoted fields.
std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace

std::string to_csv(const ResultTable& table) {
    check_shape(table);
    std::string out;
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0)
            out += ',';
        out += csv_escape(table.columns[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i > 0)
                out += ',';
            out += cell_to_csv(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const ResultTable& table) {
    check_shape(table);
    nlohmann::ordered_json doc;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (size_t i = 0; i < row.size(); ++i) {
            const std::string& key = table.columns[i];
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>)
                        obj[key] = nullptr;
                    else
                        obj[key] = v;
                },
                row[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

void write_table(const ResultTable& table, const std::filesystem::path& path,
                 TableFormat format) {
    const std::string body = format == TableFormat::csv ? to_csv(table) : to_json(table);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        const std::error_code ec(errno, std::generic_category());
        throw std::runtime_error(
            fmt::format("cannot open '{}' for writing: {}", path.string(), ec.message()));
    }
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.flush();
    if (!out) {
        const std::error_code ec(errno, std::generic_category());
        out.close();
        std::error_code ignore;
        std::filesystem::remove(path, ignore);
        throw std::runtime_error(
            fmt::format("failed writing '{}': {}", path.string(), ec.message()));
    }
}

ResultTable parse_csv(const std::string& text) {
    ResultTable table;
    size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        pos = eol + 1;
        if (line.empty())
            continue;
        const std::vector<std::string> fields = split_record(line);
        if (header) {
            table.columns = fields;
            header = false;
            continue;
        }
        if (fields.size() != table.columns.size())
            throw std::invalid_argument(fmt::format(
                "CSV row has {} fields but the header has {} columns", fields.size(),
                table.columns.size()));
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const std::string& f : fields)
            row.push_back(classify_field(f));
        table.rows.push_back(std::move(row));
    }
    if (header)
        throw std::invalid_argument("CSV input has no header line");
    return table;
}

ResultTable read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        const std::error_code ec(errno, std::generic_category());
        throw std::runtime_error(
            fmt::format("cannot open '{}' for reading: {}", path.string(), ec.message()));
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_csv(text);
}

} // namespace nesskit
