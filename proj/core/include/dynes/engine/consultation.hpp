#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynes/engine/config.hpp"
#include "dynes/engine/evaluator.hpp"
#include "dynes/kb/ast.hpp"
#include "dynes/temporal/event_flow.hpp"
#include "dynes/wm/blackboard.hpp"
#include "dynes/wm/working_memory.hpp"

namespace dynes {

/// Orders askable parameters by the question heuristics, applied as a
/// lexicographic cascade: (1) number of rules whose antecedent uses the
/// parameter, descending; (2) declared domain size, descending; (3)
/// leftmost atom position in a normalized antecedent, ascending; (4)
/// parameters that occur in a mutually exclusive pair (X in one rule, ~X in
/// another) first; then declaration order.
std::vector<int> rank_question_candidates(const std::vector<int>& candidates, const KnowledgeBase& kb);

/// Attributes that occur with opposite polarity as top-level conjuncts of
/// two rules: `X` / `~X` for booleans, `X = v` / `X != v` otherwise.
std::set<int> mutually_exclusive_parameters(const KnowledgeBase& kb);

/// Human-readable domain of an attribute, e.g. `enum {idle, run}` or
/// `number [0, 200]`.
std::string describe_domain(const KnowledgeBase& kb, int attr);

class InvalidAnswer : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses an answer typed by a user: a number, `true`/`false`/`yes`/`no`,
/// an enum symbol (bare or quoted), `inexact(c, h)`, `range(lo, hi)` or a
/// set `{1, 2}`. Throws InvalidAnswer when the text does not fit the
/// attribute's type.
Value parse_answer(std::string_view text, const KnowledgeBase& kb, int attr);

/// Throws InvalidAnswer when `v` does not fit the attribute's type.
void check_answer(const Value& v, const KnowledgeBase& kb, int attr);

struct Question {
    std::uint64_t id = 0;
    int attr = -1;
    std::string ref;
    std::string domain;
    std::vector<std::string> candidates;  // ranked, the asked one first
    friend bool operator==(const Question&, const Question&) = default;
};

struct QuestionLogEntry {
    Question question;
    std::optional<Value> answer;  // nullopt = unknown
    friend bool operator==(const QuestionLogEntry&, const QuestionLogEntry&) = default;
};

struct ConsultationResult {
    std::string goal;
    std::optional<Value> value;  // nullopt = undetermined
    std::vector<std::string> fired;
    friend bool operator==(const ConsultationResult&, const ConsultationResult&) = default;
};

/// Goal-driven consultation as a resumable state machine: next() runs
/// inference until a parameter has to be asked (or the goal is settled),
/// answer() feeds the reply back.
///
/// Rules are considered only while they can still contribute to the goal:
/// a rule is rejected once its antecedent is known to be below theta, so
/// evidence that excludes a rule stops its remaining parameters from being
/// asked. Only parameters that no rule concludes and that are not outputs
/// are asked, each at most once.
class Consultation {
public:
    Consultation(const KnowledgeBase& kb, int goal, EngineConfig config = {});
    Consultation(const KnowledgeBase& kb, std::string_view goal, EngineConfig config = {});

    /// Pending question, advancing inference first if none is pending.
    /// nullopt once finished.
    const Question* next();
    bool finished() const { return finished_; }
    const Question* pending() const { return pending_ ? &*pending_ : nullptr; }

    /// Throws std::logic_error when no question is pending and
    /// InvalidAnswer when the value does not fit the parameter.
    void answer(const Value& v);
    void answer_unknown();

    /// Settled result; std::logic_error before finished().
    ConsultationResult result() const;
    const std::vector<QuestionLogEntry>& log() const { return log_; }
    const WorkingMemory& wm() const { return wm_; }
    Blackboard& blackboard() { return blackboard_; }

private:
    void advance();
    bool fire_ready_rules();
    std::vector<int> relevant_rules() const;
    bool rejected(int rule);

    const KnowledgeBase* kb_;
    int goal_;
    EngineConfig config_;
    TermIndex terms_;
    WorkingMemory wm_;
    EventFlow flow_;
    Blackboard blackboard_;
    std::vector<bool> concluded_;  // by attribute: some rule assigns it
    std::set<int> asked_;
    std::set<int> fired_rules_;
    std::set<int> rejected_rules_;
    std::optional<Question> pending_;
    std::vector<QuestionLogEntry> log_;
    std::vector<std::string> fired_names_;
    std::uint64_t next_question_ = 1;
    bool finished_ = false;
};

}  // namespace dynes
