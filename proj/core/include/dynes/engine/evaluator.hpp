#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dynes/engine/config.hpp"
#include "dynes/kb/ast.hpp"
#include "dynes/temporal/event_flow.hpp"
#include "dynes/values/neg_ops.hpp"
#include "dynes/wm/working_memory.hpp"

namespace dynes {

/// Sorted, duplicate-free attribute ids an evaluation read (present or not).
using DepSet = std::vector<int>;
void merge_deps(DepSet& into, const DepSet& from);

/// A value together with what is known about its type for fuzzification.
struct Operand {
    Value value;
    FuzzyContext ctx;
};

/// Fuzzification context of every attribute, plus a global index of
/// linguistic terms for literals that appear without a typed neighbour.
class TermIndex {
public:
    TermIndex(const KnowledgeBase& kb, const EngineConfig& config);

    const FuzzyContext& of(int attr) const { return attrs_.at(attr); }
    /// Context in which `term` is defined: `sibling` if it knows the term,
    /// else the first declared type that does, else `sibling` unchanged.
    FuzzyContext for_literal(const std::string& term, const FuzzyContext& sibling) const;

private:
    std::vector<FuzzyContext> attrs_;
    std::map<std::string, const TermTable*, std::less<>> terms_;
};

/// Static solver: evaluates antecedent fragments and right-hand sides
/// against working memory with NEG-factor semantics. Missing facts give NE
/// (or no value); a failing graded comparison gives NE.
class Evaluator {
public:
    Evaluator(const KnowledgeBase& kb, const EngineConfig& config, WorkingMemory& wm, const TermIndex& terms);

    /// Truth of a condition node. When `cache_rule` >= 0 and caching is on,
    /// sub-results are served from and stored into the evaluation cache
    /// under that rule.
    TruthValue truth(const Expr& e, NodeId id, DepSet& deps, int cache_rule = -1);
    TruthValue truth(const Expr& e, DepSet& deps, int cache_rule = -1);

    /// Value of a value node; nullopt when a referenced fact is missing.
    /// Propagates NegError from the value algebra.
    std::optional<Operand> value(const Expr& e, NodeId id, DepSet& deps);

    /// Truth of a mixed temporal fragment at tick `now`.
    TruthValue temporal_truth(const Expr& e, const EventFlow& flow, int now, DepSet& deps);

private:
    TruthValue compute(const Expr& e, NodeId id, DepSet& deps, int cache_rule);

    const KnowledgeBase& kb_;
    const EngineConfig& config_;
    WorkingMemory& wm_;
    const TermIndex& terms_;
};

}  // namespace dynes
