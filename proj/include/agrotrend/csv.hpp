#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace agrotrend::csv {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

double parse_double(std::string_view field, const std::string& file, int line);
long parse_long(std::string_view field, const std::string& file, int line);

struct Table {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> line_numbers; // source line per row

    int column(std::string_view name) const; // -1 if absent
    int require_column(std::string_view name) const;
};

// UTF-8, comma-separated, header row required. No quoting: the schemas in
// this project never embed commas.
Table read_table(const std::filesystem::path& path);
void expect_header(const Table& t, const std::vector<std::string>& names);

class Writer {
public:
    Writer(const std::filesystem::path& path, const std::vector<std::string>& header);

    template <typename... Fields>
    void row(const Fields&... fields) {
        bool first = true;
        (write_field(fields, first), ...);
        out_ << '\n';
    }

private:
    void write_field(double v, bool& first);
    void write_field(int v, bool& first);
    void write_field(long v, bool& first);
    void write_field(const std::string& v, bool& first);
    void write_field(const char* v, bool& first);
    void sep(bool& first);

    std::ofstream out_;
    std::string path_;
};

} // namespace agrotrend::csv
