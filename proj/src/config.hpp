#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qnb {

// Malformed configuration input; the message carries "origin:line:".
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Plain-text key = value configuration with [section] headers. Lines starting
// with '#' or ';' are comments, blank lines are skipped, keys are addressed
// as "section.key". Duplicate keys and keys outside any section are errors —
// reproducible artifacts want unambiguous configs.
class KeyValueConfig {
  public:
    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_text(std::string_view text, std::string origin);

    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, std::string fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int_or(const std::string& key, long fallback) const;

    // All "section.key" names under a section, in file order.
    std::vector<std::string> keys_in(const std::string& section) const;
    const std::string& origin() const { return origin_; }

    // Raise a ConfigError pointing at the line the key came from (or at the
    // file as a whole when the key is absent).
    [[noreturn]] void fail(const std::string& key, const std::string& message) const;

  private:
    std::string origin_;
    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_;
    std::vector<std::string> order_;
};

} // namespace qnb
