#include "leagueopt/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace leagueopt {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<CsvRow> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    std::vector<CsvRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        CsvRow row;
        row.line = line_no;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = t.find(',', start);
            std::string field = (comma == std::string::npos) ? t.substr(start)
                                                             : t.substr(start, comma - start);
            row.fields.push_back(trim(field));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<CsvRow> read_csv_with_header(const std::string& path,
                                         const std::vector<std::string>& expected_header) {
    std::vector<CsvRow> rows = read_csv(path);
    if (rows.empty()) {
        throw ParseError(path + ": missing header row");
    }
    if (rows.front().fields != expected_header) {
        std::string want;
        for (std::size_t i = 0; i < expected_header.size(); ++i) {
            if (i) want += ",";
            want += expected_header[i];
        }
        throw ParseError(path + ":" + std::to_string(rows.front().line) +
                         ": bad header, expected '" + want + "'");
    }
    rows.erase(rows.begin());
    for (const CsvRow& row : rows) {
        if (row.fields.size() != expected_header.size()) {
            throw ParseError(path + ":" + std::to_string(row.line) + ": expected " +
                             std::to_string(expected_header.size()) + " fields, got " +
                             std::to_string(row.fields.size()));
        }
    }
    return rows;
}

int parse_int_field(const CsvRow& row, int field, const std::string& path) {
    const std::string& s = row.fields[static_cast<std::size_t>(field)];
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ParseError(path + ":" + std::to_string(row.line) + ": field " +
                         std::to_string(field + 1) + " is not an integer: '" + s + "'");
    }
    return static_cast<int>(v);
}

double parse_double_field(const CsvRow& row, int field, const std::string& path) {
    const std::string& s = row.fields[static_cast<std::size_t>(field)];
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ParseError(path + ":" + std::to_string(row.line) + ": field " +
                         std::to_string(field + 1) + " is not a number: '" + s + "'");
    }
    return v;
}

std::string format_double(double value, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
    return buf;
}

std::string format_double_exact(double value) {
    return format_double(value, 17);
}

}  // namespace leagueopt
