#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnb {

// Filesystem write failure (unwritable path, missing directory, ...).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic CSV assembly: '#' metadata lines, one header row naming every
// column (units in brackets where the quantity has one), then data rows with
// doubles printed at full round-trip precision. Output is byte-identical for
// identical inputs.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns);

    // Metadata line, emitted as "# text" ahead of the header row.
    void comment(const std::string& text);

    void row(std::span<const double> values);
    void row(std::initializer_list<double> values);
    // Mixed-content row (summary tables); cells must not contain commas.
    void row_text(const std::vector<std::string>& cells);

    std::string str() const;
    void write_file(const std::string& path) const;

    // Full round-trip formatting for a double ("%.17g", with -0 kept as is).
    static std::string format(double value);

  private:
    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::string> rows_;
};

} // namespace qnb
