#include "core/config.hpp"

#include <stdexcept>

#include "core/fs.hpp"
#include "core/hash.hpp"

namespace interdyn::core {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::from_file(const std::string& path) {
    return from_text(read_text_file(path));
}

Config Config::from_text(const std::string& text) {
    Config cfg;
    size_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = strip(text.substr(pos, end - pos));
        pos = end + 1;
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string val = strip(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        json parsed = json::parse(val, nullptr, false);
        if (parsed.is_discarded()) parsed = val;  // bare strings allowed
        cfg.values_[key] = std::move(parsed);
    }
    return cfg;
}

Config::json Config::raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::runtime_error("config: missing key " + key);
    return it->second;
}

std::string Config::canonical_text() const {
    std::string out;
    for (const auto& [k, v] : values_) {
        out += k;
        out += '=';
        out += v.dump();
        out += '\n';
    }
    return out;
}

std::string Config::hash() const {
    return hex64(fnv1a(canonical_text()));
}

}  // namespace interdyn::core
