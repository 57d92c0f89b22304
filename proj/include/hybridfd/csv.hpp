#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hybridfd {

// Shortest round-trip decimal representation, so CSV outputs are bit-stable
// across reruns and exact on re-import.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// CSV writer with two contracts: the first line declares the column schema,
// and the file appears atomically (written to a temp name, renamed on
// close) so a crashed run never leaves a truncated artifact behind.
class CsvWriter {
public:
    CsvWriter(std::filesystem::path path, const std::vector<std::string>& columns)
        : final_path_(std::move(path)), tmp_path_(final_path_.string() + ".tmp") {
        if (final_path_.has_parent_path())
            std::filesystem::create_directories(final_path_.parent_path());
        out_.open(tmp_path_);
        if (!out_)
            throw validation_error("cannot open output file " + tmp_path_.string());
        write_row_strings(columns);
    }

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    ~CsvWriter() {
        if (!closed_) {
            // Abnormal exit: drop the partial temp file instead of renaming.
            out_.close();
            std::error_code ec;
            std::filesystem::remove(tmp_path_, ec);
        }
    }

    void write_row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    void write_row(std::initializer_list<double> cells) {
        std::vector<std::string> s;
        s.reserve(cells.size());
        for (double v : cells) s.push_back(format_double(v));
        write_row_strings(s);
    }

    // Flush and atomically move into place.
    void close() {
        if (closed_) return;
        out_.close();
        if (!out_)
            throw numerical_error("write failed for " + final_path_.string());
        std::filesystem::rename(tmp_path_, final_path_);
        closed_ = true;
    }

    const std::filesystem::path& path() const { return final_path_; }

private:
    std::filesystem::path final_path_;
    std::filesystem::path tmp_path_;
    std::ofstream out_;
    bool closed_ = false;
};

// Minimal CSV reader: splits on commas, no quoting (none of our artifacts
// need it). Returns rows excluding the header line.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open CSV file " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            table.columns = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

} // namespace hybridfd
