#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dynes/engine/evaluator.hpp"
#include "dynes/values/truth.hpp"

namespace dynes {

/// Ordering key of an instantiation. Lexicographic: specificity desc,
/// novelty desc, reliability desc, declaration index asc.
struct RankTuple {
    int specificity = 0;      // condition atoms in the antecedent
    int novelty = -1;         // latest asserted_at among matched facts; -1 if none
    double reliability = 0.0; // rule cf x antecedent truth
    int index = 0;            // rule declaration index

    friend bool operator==(const RankTuple&, const RankTuple&) = default;
};

/// Strict "ranks before" relation.
bool rank_before(const RankTuple& a, const RankTuple& b);

/// Identity of an instantiation for refractoriness: the rule, the stamps
/// of the facts it read, the state of the temporal objects it refers to
/// and, for periodic/response rules, the activation that enabled it.
struct Signature {
    int rule = -1;
    std::vector<std::pair<int, std::uint64_t>> facts;  // (attribute, stamp); stamp 0 = absent
    std::vector<std::array<int, 3>> temporal;          // (count, last start, last end or -1)
    int activation = -1;

    std::string key() const;
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct Instantiation {
    int rule = -1;
    TruthValue truth;
    DepSet deps;
    RankTuple rank;
    Signature signature;
};

/// Ranked instantiations eligible to fire, kept sorted by rank_before.
class ConflictSet {
public:
    const std::vector<Instantiation>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const Instantiation* head() const { return entries_.empty() ? nullptr : &entries_.front(); }

    /// Re-validates the set against a fresh match of the active rules:
    /// entries whose rule no longer matches, or matches with a different
    /// signature (its facts were superseded), are dropped; new ones are
    /// merged in. Returns the head, or nullptr when empty.
    const Instantiation* resolve(std::vector<Instantiation> fresh);

    void remove_rule(int rule);
    void clear() { entries_.clear(); }

private:
    std::vector<Instantiation> entries_;
};

}  // namespace dynes
