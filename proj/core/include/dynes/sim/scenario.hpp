#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynes/engine/engine.hpp"

namespace dynes {

struct ScenarioEntry {
    int tick = 0;
    std::vector<ExternalFact> facts;  // ordered by ref
    friend bool operator==(const ScenarioEntry&, const ScenarioEntry&) = default;
};

/// Recorded external assertions, ticks strictly ascending from 0.
struct Scenario {
    std::vector<ScenarioEntry> entries;

    /// Assertions for `tick`; empty when the scenario is silent there.
    std::vector<ExternalFact> facts_at(int tick) const;
    /// Canonical JSONL form; parse_scenario(to_jsonl()) == *this.
    std::string to_jsonl() const;
    friend bool operator==(const Scenario&, const Scenario&) = default;
};

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

/// One `{"tick": N, "set": {"obj.attr": literal, ...}}` object per line.
/// Blank lines are skipped. Refs are not checked here.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace dynes
