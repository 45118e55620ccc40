#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace interdyn::core {

// Experiment configuration: `key = value` lines with JSON-typed values and
// dotted section keys (e.g. `train.backbone.max_steps = 2000`). CLI flags
// override file keys. The hash is over the canonicalized key/value map.
class Config {
public:
    using json = nlohmann::json;

    static Config from_file(const std::string& path);
    static Config from_text(const std::string& text);

    void set(const std::string& key, json value) { values_[key] = std::move(value); }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    template <typename T>
    T get(const std::string& key, T fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        return it->second.get<T>();
    }

    json raw(const std::string& key) const;

    // FNV over "key=canonical_json\n" lines in sorted key order.
    std::string hash() const;
    std::string canonical_text() const;

    const std::map<std::string, json>& values() const { return values_; }

private:
    std::map<std::string, json> values_;
};

}  // namespace interdyn::core
