#pragma once
// JSON config loading with typed fallbacks, shared by the CLI drivers.

#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace brlab {

using json = nlohmann::json;

inline json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    json j;
    in >> j;
    return j;
}

template <class T>
T jget(const json& j, const std::string& key, T fallback) {
    if (j.contains(key)) return j.at(key).get<T>();
    return fallback;
}

}  // namespace brlab
