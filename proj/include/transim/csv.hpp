// csv.hpp — Deterministic CSV emission: fixed 17-significant-digit floats so
// repeated runs diff byte-for-byte.

#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "transim/common.hpp"

namespace transim {

inline std::string format_value(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(const std::vector<double>& values) {
        if (values.size() != header_.size()) {
            throw std::invalid_argument("CsvWriter: row width does not match header");
        }
        rows_.push_back(values);
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < header_.size(); ++i) {
            out += header_[i];
            out += (i + 1 < header_.size()) ? ',' : '\n';
        }
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out += format_value(row[i]);
                out += (i + 1 < row.size()) ? ',' : '\n';
            }
        }
        return out;
    }

    void write(const std::string& path) const {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("CsvWriter: cannot open " + path);
        file << str();
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

}  // namespace transim
