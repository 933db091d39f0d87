#include "vertisite/csv.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>

#include "vertisite/errors.hpp"

namespace vertisite::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
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
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace

std::vector<Row> read_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& expected_header) {
    std::ifstream in(path);
    if (!in) throw ValidationError(fmt::format("cannot open '{}'", path.string()));
    std::vector<Row> rows;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_line(line);
        if (!header_seen) {
            if (fields != expected_header) {
                std::string want;
                for (const auto& h : expected_header) {
                    if (!want.empty()) want += ",";
                    want += h;
                }
                throw ValidationError(fmt::format("{}:{}: header mismatch, expected '{}'",
                                                  path.string(), line_no, want));
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != expected_header.size())
            throw ValidationError(fmt::format("{}:{}: expected {} fields, got {}",
                                              path.string(), line_no,
                                              expected_header.size(), fields.size()));
        rows.push_back(Row{std::move(fields), line_no});
    }
    if (!header_seen)
        throw ValidationError(fmt::format("{}: missing header", path.string()));
    return rows;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

bool parse_int(const std::string& s, int& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

} // namespace vertisite::csv
