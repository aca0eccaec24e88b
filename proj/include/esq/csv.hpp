// Minimal deterministic CSV output: UTF-8, LF line endings, shortest
// round-trip formatting for doubles (std::to_chars), empty cells for
// unavailable values.

#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace esq::csv {

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("csv: double formatting failed");
    return std::string(buf, ptr);
}

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("csv: cannot open output path: " + path);
    }

    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    void flush_or_throw() {
        out_.flush();
        if (!out_) throw std::runtime_error("csv: write failed");
    }

    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    }
    static std::string cell(const char* v) { return v; }
    static std::string cell(const std::string& v) { return v; }

private:
    std::ofstream out_;
};

}  // namespace esq::csv
