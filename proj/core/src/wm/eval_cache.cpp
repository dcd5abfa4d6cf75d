#include "dynes/wm/eval_cache.hpp"

namespace dynes {

const CacheEntry* EvalCache::find(int rule, NodeId node) {
    auto it = entries_.find(key(rule, node));
    if (it == entries_.end()) {
        ++stats_.misses;
        return nullptr;
    }
    ++stats_.hits;
    return &it->second;
}

void EvalCache::store(int rule, NodeId node, CacheEntry entry) {
    const auto k = key(rule, node);
    for (int a : entry.deps) by_attr_[a].insert(k);
    entries_.insert_or_assign(k, std::move(entry));
}

void EvalCache::invalidate(int attr) {
    auto it = by_attr_.find(attr);
    if (it == by_attr_.end()) return;
    for (auto k : it->second) stats_.invalidations += entries_.erase(k);
    by_attr_.erase(it);
}

void EvalCache::clear() {
    entries_.clear();
    by_attr_.clear();
}

}  // namespace dynes
