#include "config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qnb {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail_at(const std::string& origin, int line, const std::string& message) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + message);
}

} // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), path);
}

KeyValueConfig KeyValueConfig::parse_text(std::string_view text, std::string origin) {
    KeyValueConfig cfg;
    cfg.origin_ = std::move(origin);

    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail_at(cfg.origin_, line_no, "section header is missing the closing ']'");
            const std::string_view name = trim(line.substr(1, line.size() - 2));
            if (name.empty())
                fail_at(cfg.origin_, line_no, "section header has an empty name");
            section = std::string(name);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail_at(cfg.origin_, line_no,
                    "expected 'key = value' or a [section] header, got '" + std::string(line) + "'");
        const std::string_view key_part = trim(line.substr(0, eq));
        const std::string_view value_part = trim(line.substr(eq + 1));
        if (key_part.empty()) fail_at(cfg.origin_, line_no, "missing key before '='");
        if (section.empty())
            fail_at(cfg.origin_, line_no,
                    "key '" + std::string(key_part) + "' appears before any [section] header");

        const std::string key = section + "." + std::string(key_part);
        if (const auto prior = cfg.lines_.find(key); prior != cfg.lines_.end())
            fail_at(cfg.origin_, line_no,
                    "duplicate key '" + key + "' (first set on line " +
                        std::to_string(prior->second) + ")");
        cfg.values_[key] = std::string(value_part);
        cfg.lines_[key] = line_no;
        cfg.order_.push_back(key);
    }
    return cfg;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string& KeyValueConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError(origin_ + ": missing required key '" + key + "'");
    return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, std::string fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? std::move(fallback) : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
    const std::string& text = get(key);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty() || errno == ERANGE)
        fail(key, "value '" + text + "' is not a valid number");
    return v;
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long KeyValueConfig::get_int(const std::string& key) const {
    const std::string& text = get(key);
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size() || text.empty() || errno == ERANGE)
        fail(key, "value '" + text + "' is not a valid integer");
    return v;
}

long KeyValueConfig::get_int_or(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::vector<std::string> KeyValueConfig::keys_in(const std::string& section) const {
    std::vector<std::string> out;
    const std::string prefix = section + ".";
    for (const auto& key : order_)
        if (key.rfind(prefix, 0) == 0) out.push_back(key);
    return out;
}

void KeyValueConfig::fail(const std::string& key, const std::string& message) const {
    const auto it = lines_.find(key);
    if (it == lines_.end()) throw ConfigError(origin_ + ": " + message);
    fail_at(origin_, it->second, message);
}

} // namespace qnb
