#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace vertisite::csv {

struct Row {
    std::vector<std::string> fields;
    int line = 0; // 1-based line number in the source file
};

// Reads a CSV with a mandatory, case-sensitive header. Fields may be quoted
// with double quotes; "" inside quotes is an escaped quote. Blank lines are
// skipped. Throws ValidationError when the header does not match exactly.
std::vector<Row> read_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& expected_header);

// Locale-independent numeric parsing (dot decimal separator only).
bool parse_double(const std::string& s, double& out);
bool parse_int(const std::string& s, int& out);

} // namespace vertisite::csv
