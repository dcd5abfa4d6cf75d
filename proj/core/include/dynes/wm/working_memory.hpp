#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynes/kb/ast.hpp"
#include "dynes/values/value.hpp"
#include "dynes/wm/eval_cache.hpp"

namespace dynes {

struct Provenance {
    enum class Kind : std::uint8_t { External, Rule, Answer };
    Kind kind = Kind::External;
    std::string source;  // rule name, or question id for answers

    static Provenance external() { return {}; }
    static Provenance rule(std::string name) { return {Kind::Rule, std::move(name)}; }
    static Provenance answer(std::string question) { return {Kind::Answer, std::move(question)}; }

    /// "external", "rule:<name>", "answer:<id>"
    std::string to_string() const;
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Fact {
    int attr = -1;
    Value value;
    int asserted_at = 0;      // tick
    std::uint64_t stamp = 0;  // global write sequence; bumps whenever value or certainty change
    Provenance provenance;
    friend bool operator==(const Fact&, const Fact&) = default;
};

/// Same-tick rule assertions with different payloads; the later one won.
struct FactConflict {
    int attr = -1;
    int tick = 0;
    Fact overridden;
    Fact winner;
};

class UndeclaredReference : public std::invalid_argument {
public:
    explicit UndeclaredReference(const std::string& ref)
        : std::invalid_argument("undeclared attribute '" + ref + "'") {}
};

enum class AssertOutcome : std::uint8_t {
    Inserted,   // no previous fact
    Replaced,   // previous fact archived to history
    Merged,     // equal payload from two rules in one tick: certainties combined
    Refreshed,  // same value re-asserted later: tick and provenance updated in place
    Unchanged,  // identical assertion
};

struct WmSnapshot {
    std::vector<std::optional<Fact>> facts;  // by attribute id
};

struct FactChange {
    int attr = -1;
    std::string ref;
    std::optional<Fact> before;
    std::optional<Fact> after;
};

/// Facts keyed by attribute, with per-attribute history and the antecedent
/// evaluation cache that must be invalidated whenever a fact changes.
class WorkingMemory {
public:
    explicit WorkingMemory(const KnowledgeBase& kb);

    const KnowledgeBase& kb() const { return *kb_; }

    /// Throws UndeclaredReference for an unknown attribute id or name, and
    /// std::invalid_argument when `tick` is earlier than the latest
    /// assertion.
    AssertOutcome assert_fact(int attr, Value value, int tick, Provenance provenance);
    AssertOutcome assert_fact(std::string_view ref, Value value, int tick, Provenance provenance);

    /// Swaps the payload of an existing fact in place (stamp bumps, previous
    /// fact archived). Used when fuzzy results are collapsed to crisp ones.
    void replace_value(int attr, Value value);

    const Fact* lookup(int attr) const;
    const Fact* lookup(std::string_view ref) const;
    std::span<const Fact> history(int attr) const;
    /// Stamp of the current fact; 0 when absent.
    std::uint64_t stamp_of(int attr) const;
    std::uint64_t last_stamp() const { return next_stamp_ - 1; }
    int current_tick() const { return tick_; }
    std::size_t fact_count() const;

    const std::vector<FactConflict>& conflicts() const { return conflicts_; }

    EvalCache& cache() { return cache_; }
    const EvalCache& cache() const { return cache_; }

    WmSnapshot snapshot() const;

private:
    int checked(int attr) const;
    void changed(int attr);

    const KnowledgeBase* kb_;
    std::vector<std::optional<Fact>> current_;
    std::vector<std::vector<Fact>> history_;
    std::vector<FactConflict> conflicts_;
    EvalCache cache_;
    std::uint64_t next_stamp_ = 1;
    int tick_ = 0;
};

/// Attributes whose current fact differs between two snapshots of the same
/// knowledge base, ordered by qualified name.
std::vector<FactChange> snapshot_diff(const KnowledgeBase& kb, const WmSnapshot& before, const WmSnapshot& after);

}  // namespace dynes
