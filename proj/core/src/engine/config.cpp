#include "dynes/engine/config.hpp"

#include <cmath>
#include <stdexcept>

namespace dynes {

const char* to_string(FiringMode m) { return m == FiringMode::Multi ? "multi" : "single"; }

namespace {

double number(const ConfigSetting& s) {
    if (const double* d = std::get_if<double>(&s.value)) return *d;
    throw std::invalid_argument(s.key + " expects a number");
}

int integer(const ConfigSetting& s) {
    const double d = number(s);
    if (d != std::floor(d) || std::abs(d) > 1e9) throw std::invalid_argument(s.key + " expects an integer");
    return static_cast<int>(d);
}

}  // namespace

void EngineConfig::apply(const ConfigSetting& s) {
    if (s.key == "theta_fire") {
        theta_fire = number(s);
    } else if (s.key == "max_firings") {
        max_firings = integer(s);
    } else if (s.key == "alpha_levels") {
        alpha_levels = integer(s);
    } else if (s.key == "singleton_epsilon") {
        singleton_epsilon = number(s);
    } else if (s.key == "firing_mode") {
        const auto* m = std::get_if<std::string>(&s.value);
        if (!m || (*m != "multi" && *m != "single")) throw std::invalid_argument("firing_mode expects multi or single");
        firing_mode = *m == "multi" ? FiringMode::Multi : FiringMode::Single;
    } else if (s.key == "persist_conflict_set") {
        const auto* b = std::get_if<bool>(&s.value);
        if (!b) throw std::invalid_argument("persist_conflict_set expects true or false");
        persist_conflict_set = *b;
    } else if (s.key == "use_cache") {
        const auto* b = std::get_if<bool>(&s.value);
        if (!b) throw std::invalid_argument("use_cache expects true or false");
        use_cache = *b;
    } else {
        throw std::invalid_argument("unknown config key '" + s.key + "'");
    }
    validate();
}

void EngineConfig::validate() const {
    if (!(theta_fire > 0.0 && theta_fire <= 1.0)) throw std::invalid_argument("theta_fire must lie in (0;1]");
    if (max_firings < 1) throw std::invalid_argument("max_firings must be >= 1");
    if (alpha_levels < 2) throw std::invalid_argument("alpha_levels must be >= 2");
    if (!(singleton_epsilon > 0.0)) throw std::invalid_argument("singleton_epsilon must be positive");
}

EngineConfig config_from_kb(const KnowledgeBase& kb) {
    EngineConfig c;
    for (const auto& s : kb.config) c.apply(s);
    return c;
}

}  // namespace dynes
