#pragma once

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "cfl/error.hpp"

namespace cfl {

/// Shortest round-trip decimal form, locale independent ('.' decimal point).
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Line-per-point CSV writer: header row, '.' decimal separator, every line
/// newline-terminated. Bytes depend only on the values written.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns) : out_(path) {
        if (!out_) throw error(errc::io_error, "cannot open " + path);
        for (size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ',';
            out_ << columns[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << format_double(values[i]);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

} // namespace cfl
