#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dynes/engine/config.hpp"
#include "dynes/engine/conflict.hpp"
#include "dynes/engine/evaluator.hpp"
#include "dynes/kb/ast.hpp"
#include "dynes/temporal/event_flow.hpp"
#include "dynes/wm/blackboard.hpp"
#include "dynes/wm/working_memory.hpp"

namespace dynes {

/// External assertion fed into a tick.
struct ExternalFact {
    std::string ref;
    Value value;
    friend bool operator==(const ExternalFact&, const ExternalFact&) = default;
};

struct Assignment {
    std::string ref;
    Value value;  // as asserted, certainty included
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Firing {
    std::string rule;
    TruthValue truth;
    std::vector<Assignment> assignments;
    friend bool operator==(const Firing&, const Firing&) = default;
};

struct DiffEntry {
    std::string phase;  // "input", "fire" or "defuzz"
    std::string ref;
    std::optional<Fact> before;
    std::optional<Fact> after;
    friend bool operator==(const DiffEntry&, const DiffEntry&) = default;
};

struct DefuzzRecord {
    std::string ref;
    std::vector<double> modes;
    double primary = 0.0;
    friend bool operator==(const DefuzzRecord&, const DefuzzRecord&) = default;
};

struct TemporalNotice {
    std::string object;
    std::string kind;  // "origin", "open", "close"
    friend bool operator==(const TemporalNotice&, const TemporalNotice&) = default;
};

struct AnomalyRecord {
    std::string object;
    std::string kind;
    std::string message;
    friend bool operator==(const AnomalyRecord&, const AnomalyRecord&) = default;
};

/// Everything observable about one cycle.
struct TickRecord {
    int tick = 0;
    std::vector<std::string> phases;  // in execution order
    std::vector<TemporalNotice> origins;
    std::vector<AnomalyRecord> anomalies;
    std::vector<Firing> fired;
    std::vector<DiffEntry> wm_diff;
    std::vector<ControlAction> control_actions;
    std::vector<DefuzzRecord> defuzz_modes;
    std::vector<std::string> flags;
    friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

/// Phase A: conventional rules always; periodic(p) when tick % p == 0;
/// response(E) when E originated this tick. Declaration order.
std::vector<int> select_active(const KnowledgeBase& kb, int tick, const TickOrigins& origins);

/// Phase D: collapses every fact in `attrs` whose payload is a membership
/// function to its primary defuzzified value.
std::vector<DefuzzRecord> finalize_defuzz(WorkingMemory& wm, const std::vector<int>& attrs);

/// Forward engine state: working memory, blackboard, event-flow
/// interpretation, conflict set and refractoriness memory.
class Engine {
public:
    Engine(const KnowledgeBase& kb, EngineConfig config);

    /// One cycle at tick next_tick(): external assertions, event-flow
    /// interpretation, the A-S-K-W loop until quiescence or the firing cap,
    /// then defuzzification. Throws UndeclaredReference for unknown refs
    /// before anything is changed.
    TickRecord run_cycle(const std::vector<ExternalFact>& facts);

    /// Phase S: matches `rules` at the current tick; instantiations whose
    /// truth reaches theta and whose signature has not fired yet.
    std::vector<Instantiation> match(const std::vector<int>& rules, int tick, const TickOrigins& origins);

    /// Phase W: fires an instantiation. Returns the firing, or nullopt when
    /// a right-hand side failed (reason appended to `flags`).
    std::optional<Firing> fire(const Instantiation& inst, int tick, std::vector<std::string>& flags);

    int next_tick() const { return next_tick_; }
    const KnowledgeBase& kb() const { return *kb_; }
    const EngineConfig& config() const { return config_; }
    const WorkingMemory& wm() const { return wm_; }
    WorkingMemory& wm() { return wm_; }
    Blackboard& blackboard() { return blackboard_; }
    const EventFlow& flow() const { return flow_; }
    const ConflictSet& conflict_set() const { return conflict_set_; }
    std::size_t fired_signatures() const { return fired_.size(); }

private:
    Signature signature_of(const Rule& r, const DepSet& deps, int tick, const TickOrigins& origins) const;

    const KnowledgeBase* kb_;
    EngineConfig config_;
    TermIndex terms_;
    WorkingMemory wm_;
    Blackboard blackboard_;
    EventFlow flow_;
    ConflictSet conflict_set_;
    std::set<std::string> fired_;
    std::vector<std::vector<int>> rule_temporal_;  // temporal ids each rule refers to
    int next_tick_ = 0;
};

}  // namespace dynes
