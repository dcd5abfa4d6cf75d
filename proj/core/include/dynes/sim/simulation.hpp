#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynes/engine/engine.hpp"
#include "dynes/sim/scenario.hpp"

namespace dynes {

struct TraceHeader {
    std::string kb_hash;
    std::string scenario_hash;
    EngineConfig config;
    int ticks = 0;
    std::string created;  // informational; not covered by any comparison
    friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

struct Trace {
    TraceHeader header;
    std::vector<TickRecord> records;  // one per tick, in tick order
};

/// Assertion to an undeclared attribute, reported with its tick.
class SimulationError : public std::runtime_error {
public:
    SimulationError(int tick, const std::string& message);
    int tick() const { return tick_; }

private:
    int tick_;
};

std::string kb_hash(const KnowledgeBase& kb);
std::string scenario_hash(const Scenario& scenario);

/// Serialized header and record lines, without the trailing newline.
std::string header_line(const TraceHeader& header);
std::string record_line(const TickRecord& record);
std::string trace_to_jsonl(const Trace& trace);

struct SimulationOptions {
    std::ostream* stream = nullptr;  // receives the JSONL trace as it grows
    std::optional<std::string> created;  // defaults to the current UTC time
};

/// Runs ticks 0..ticks-1 on a fresh engine, feeding each tick the
/// scenario's assertions for it.
Trace run_simulation(const KnowledgeBase& kb, const Scenario& scenario, int ticks, const EngineConfig& config,
                     const SimulationOptions& options = {});

class ReplayError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReplayResult {
    bool ok = true;
    std::optional<int> divergent_tick;
    std::string detail;
};

/// Re-runs the simulation described by a JSONL trace and compares record by
/// record. Throws ReplayError when the trace is malformed or its hashes do
/// not match `kb` and `scenario`.
ReplayResult verify_replay(std::string_view trace_jsonl, const KnowledgeBase& kb, const Scenario& scenario);

}  // namespace dynes
