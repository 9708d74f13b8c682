#include "csv.hpp"

#include <cstdio>
#include <fstream>

namespace qnb {

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw std::invalid_argument("CsvWriter: need at least one column");
    for (const auto& c : columns_)
        if (c.find(',') != std::string::npos || c.find('\n') != std::string::npos)
            throw std::invalid_argument("CsvWriter: column name '" + c + "' contains a delimiter");
}

void CsvWriter::comment(const std::string& text) {
    if (text.find('\n') != std::string::npos)
        throw std::invalid_argument("CsvWriter: comment must be a single line");
    comments_.push_back(text);
}

void CsvWriter::row(std::span<const double> values) {
    if (values.size() != columns_.size())
        throw std::invalid_argument("CsvWriter: row has " + std::to_string(values.size()) +
                                    " cells, header names " + std::to_string(columns_.size()));
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) line += ',';
        line += format(values[i]);
    }
    rows_.push_back(std::move(line));
}

void CsvWriter::row(std::initializer_list<double> values) {
    row(std::span<const double>(values.begin(), values.size()));
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size())
        throw std::invalid_argument("CsvWriter: row has " + std::to_string(cells.size()) +
                                    " cells, header names " + std::to_string(columns_.size()));
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].find(',') != std::string::npos || cells[i].find('\n') != std::string::npos)
            throw std::invalid_argument("CsvWriter: cell '" + cells[i] + "' contains a delimiter");
        if (i > 0) line += ',';
        line += cells[i];
    }
    rows_.push_back(std::move(line));
}

std::string CsvWriter::str() const {
    std::string out;
    for (const auto& c : comments_) {
        out += "# ";
        out += c;
        out += '\n';
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i > 0) out += ',';
        out += columns_[i];
    }
    out += '\n';
    for (const auto& r : rows_) {
        out += r;
        out += '\n';
    }
    return out;
}

void CsvWriter::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    const std::string text = str();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::string CsvWriter::format(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace qnb
