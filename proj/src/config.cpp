#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sgmatch/error.hpp"
#include "sgmatch/experiments.hpp"

namespace sgmatch::experiments {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::size_t to_size(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (text.empty() || text[0] == '-' || *end != '\0' || errno != 0)
        throw ParseError("key '" + key + "': expected a non-negative integer, got '" + text + "'", 0);
    return static_cast<std::size_t>(v);
}

double to_double(const std::string& key, const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || *end != '\0')
        throw ParseError("key '" + key + "': expected a number, got '" + text + "'", 0);
    return v;
}

}  // namespace

Config Config::parse(std::istream& in) {
    Config cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body(line);
        if (auto pos = body.find('#'); pos != std::string_view::npos) body = body.substr(0, pos);
        const std::string text = trim(body);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
        const std::string key = trim(std::string_view(text).substr(0, eq));
        if (key.empty()) throw ParseError("empty key", line_no);
        cfg.values_[key] = trim(std::string_view(text).substr(eq + 1));
        cfg.lines_[key] = line_no;
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    return parse(in);
}

std::string Config::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ParseError("missing key '" + key + "'", 0);
    return it->second;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
    return has(key) ? to_size(key, get(key)) : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? to_double(key, get(key)) : fallback;
}

std::vector<std::size_t> Config::get_sizes(const std::string& key) const {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(get(key))) out.push_back(to_size(key, item));
    if (out.empty()) throw ParseError("key '" + key + "': empty list", 0);
    return out;
}

std::vector<double> Config::get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(get(key))) out.push_back(to_double(key, item));
    if (out.empty()) throw ParseError("key '" + key + "': empty list", 0);
    return out;
}

void Config::require_known(const std::vector<std::string>& known) const {
    for (const auto& [key, value] : values_)
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ParseError("unknown key '" + key + "'", lines_.count(key) ? lines_.at(key) : 0);
}

}  // namespace sgmatch::experiments
