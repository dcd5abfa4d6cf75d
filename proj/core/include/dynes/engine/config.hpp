#pragma once

#include <span>
#include <string>
#include <string_view>

#include "dynes/kb/ast.hpp"

namespace dynes {

enum class FiringMode : std::uint8_t { Multi, Single };

struct EngineConfig {
    double theta_fire = 0.5;
    int max_firings = 100;  // per tick
    int alpha_levels = 11;
    double singleton_epsilon = 1e-6;
    FiringMode firing_mode = FiringMode::Multi;
    bool persist_conflict_set = false;  // carry the conflict set over tick boundaries
    bool use_cache = true;

    /// Applies one `key: value` setting. std::invalid_argument for unknown
    /// keys or out-of-range values.
    void apply(const ConfigSetting& s);
    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    friend bool operator==(const EngineConfig&, const EngineConfig&) = default;
};

/// Defaults overridden by the knowledge base's `config` block.
EngineConfig config_from_kb(const KnowledgeBase& kb);

/// Overrides from a JSON object such as `{"theta_fire": 0.6}`; the sidecar
/// config file format. Throws std::invalid_argument.
EngineConfig apply_config_json(std::string_view json, EngineConfig base);

const char* to_string(FiringMode m);

}  // namespace dynes
