#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace leagueopt {

// Thrown for malformed rows; the message always carries the file and
// 1-based line number.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Referential problems in otherwise well-formed files (unknown teams,
// duplicate fixtures, results for unscheduled games, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CsvRow {
    int line = 0;  // 1-based line number in the source file
    std::vector<std::string> fields;
};

// Reads a comma-separated file. Skips blank lines and lines starting with
// '#'. Fields may not contain commas or quotes (none of the formats here
// need them); leading/trailing spaces are trimmed.
std::vector<CsvRow> read_csv(const std::string& path);

// Checks the first row against the expected header and returns the data
// rows, each validated to have exactly `expected_header.size()` fields.
std::vector<CsvRow> read_csv_with_header(const std::string& path,
                                         const std::vector<std::string>& expected_header);

int parse_int_field(const CsvRow& row, int field, const std::string& path);
double parse_double_field(const CsvRow& row, int field, const std::string& path);

// Deterministic decimal renderings used by every writer in the project.
std::string format_double(double value, int significant_digits = 10);
std::string format_double_exact(double value);  // 17 significant digits, round-trips

}  // namespace leagueopt
