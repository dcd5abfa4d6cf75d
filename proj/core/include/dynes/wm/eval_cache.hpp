#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dynes/kb/ast.hpp"
#include "dynes/values/truth.hpp"

namespace dynes {

struct CacheEntry {
    TruthValue truth;
    std::vector<int> deps;        // attribute ids read, present or not
    std::uint64_t valid_as_of = 0;  // working-memory stamp at evaluation time
};

struct CacheStats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t invalidations = 0;
};

/// Truth of antecedent sub-expressions keyed by (rule, node). Entries are
/// dropped eagerly when any dependency attribute changes.
class EvalCache {
public:
    const CacheEntry* find(int rule, NodeId node);
    void store(int rule, NodeId node, CacheEntry entry);
    void invalidate(int attr);
    void clear();

    std::size_t size() const { return entries_.size(); }
    const CacheStats& stats() const { return stats_; }

private:
    static std::uint64_t key(int rule, NodeId node) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(rule)) << 32) | node;
    }

    std::unordered_map<std::uint64_t, CacheEntry> entries_;
    std::unordered_map<int, std::unordered_set<std::uint64_t>> by_attr_;
    CacheStats stats_;
};

}  // namespace dynes
