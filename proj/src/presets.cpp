#include "hystrd/config.hpp"

#include "hystrd/errors.hpp"
#include "presets_data.hpp"

namespace hystrd {

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, text] : detail::kPresets) {
            out.emplace_back(name);
        }
        return out;
    }();
    return names;
}

std::string preset_text(const std::string& name) {
    for (const auto& [n, text] : detail::kPresets) {
        if (n == name) {
            return std::string(text);
        }
    }
    std::string list;
    for (const auto& n : preset_names()) {
        list += list.empty() ? n : ", " + n;
    }
    throw ConfigError("--preset", "unknown preset '" + name + "' (available: " + list + ")");
}

} // namespace hystrd
