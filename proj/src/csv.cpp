#include "agrotrend/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "agrotrend/errors.hpp"

namespace agrotrend::csv {

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double parse_double(std::string_view field, const std::string& file, int line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(file + ":" + std::to_string(line) + ": bad number '" +
                         std::string(field) + "'");
    }
    return v;
}

long parse_long(std::string_view field, const std::string& file, int line) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(file + ":" + std::to_string(line) + ": bad integer '" +
                         std::string(field) + "'");
    }
    return v;
}

namespace {

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        std::string_view field = (comma == std::string_view::npos)
                                     ? line.substr(start)
                                     : line.substr(start, comma - start);
        // trim surrounding spaces
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
            field.remove_prefix(1);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t' ||
                                  field.back() == '\r'))
            field.remove_suffix(1);
        out.emplace_back(field);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

int Table::column(std::string_view name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return -1;
    return static_cast<int>(it - header.begin());
}

int Table::require_column(std::string_view name) const {
    int c = column(name);
    if (c < 0) {
        throw ParseError(path + ": missing column '" + std::string(name) + "'");
    }
    return c;
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    Table t;
    t.path = path.string();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_fields(line);
        if (t.header.empty()) {
            t.header = std::move(fields);
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw ParseError(t.path + ":" + std::to_string(line_no) +
                             ": expected " + std::to_string(t.header.size()) +
                             " fields, got " + std::to_string(fields.size()));
        }
        t.rows.push_back(std::move(fields));
        t.line_numbers.push_back(line_no);
    }
    if (t.header.empty()) throw ParseError(t.path + ": empty file (no header)");
    return t;
}

void expect_header(const Table& t, const std::vector<std::string>& names) {
    if (t.header != names) {
        std::string want;
        for (const auto& n : names) {
            if (!want.empty()) want += ',';
            want += n;
        }
        std::string got;
        for (const auto& n : t.header) {
            if (!got.empty()) got += ',';
            got += n;
        }
        throw ParseError(t.path + ": header '" + got + "' != expected '" + want + "'");
    }
}

Writer::Writer(const std::filesystem::path& path,
               const std::vector<std::string>& header)
    : out_(path), path_(path.string()) {
    if (!out_) throw IoError("cannot write " + path_);
    bool first = true;
    for (const auto& h : header) write_field(h, first);
    out_ << '\n';
}

void Writer::sep(bool& first) {
    if (!first) out_ << ',';
    first = false;
}

void Writer::write_field(double v, bool& first) {
    sep(first);
    out_ << format_double(v);
}

void Writer::write_field(int v, bool& first) {
    sep(first);
    out_ << v;
}

void Writer::write_field(long v, bool& first) {
    sep(first);
    out_ << v;
}

void Writer::write_field(const std::string& v, bool& first) {
    sep(first);
    out_ << v;
}

void Writer::write_field(const char* v, bool& first) {
    sep(first);
    out_ << v;
}

} // namespace agrotrend::csv
