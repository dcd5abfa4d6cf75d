#include "dynes/wm/working_memory.hpp"

#include <algorithm>

#include "dynes/values/neg_ops.hpp"

namespace dynes {

std::string Provenance::to_string() const {
    switch (kind) {
    case Kind::External: return "external";
    case Kind::Rule: return "rule:" + source;
    case Kind::Answer: return "answer:" + source;
    }
    return "external";
}

WorkingMemory::WorkingMemory(const KnowledgeBase& kb)
    : kb_(&kb), current_(kb.attributes.size()), history_(kb.attributes.size()) {
    if (!kb.resolved) throw std::logic_error("working memory needs a resolved knowledge base");
}

int WorkingMemory::checked(int attr) const {
    if (attr < 0 || static_cast<std::size_t>(attr) >= current_.size()) {
        throw UndeclaredReference("#" + std::to_string(attr));
    }
    return attr;
}

void WorkingMemory::changed(int attr) { cache_.invalidate(attr); }

AssertOutcome WorkingMemory::assert_fact(std::string_view ref, Value value, int tick, Provenance provenance) {
    const auto id = kb_->find_attribute(ref);
    if (!id) throw UndeclaredReference(std::string(ref));
    return assert_fact(*id, std::move(value), tick, std::move(provenance));
}

AssertOutcome WorkingMemory::assert_fact(int attr, Value value, int tick, Provenance provenance) {
    checked(attr);
    if (tick < tick_) {
        throw std::invalid_argument("assertion at tick " + std::to_string(tick) + " after tick " +
                                    std::to_string(tick_));
    }
    tick_ = tick;
    auto& slot = current_[attr];
    if (!slot) {
        slot = Fact{attr, std::move(value), tick, next_stamp_++, std::move(provenance)};
        changed(attr);
        return AssertOutcome::Inserted;
    }

    Fact& cur = *slot;
    const bool same_payload = cur.value.same_payload(value);
    const bool both_rules = cur.provenance.kind == Provenance::Kind::Rule &&
                            provenance.kind == Provenance::Kind::Rule;

    if (both_rules && cur.asserted_at == tick && cur.provenance.source != provenance.source) {
        if (same_payload) {
            const double cf = combine_cf(cur.value.certainty(), value.certainty());
            if (cf == cur.value.certainty()) return AssertOutcome::Unchanged;
            cur.value = cur.value.with_certainty(cf);
            cur.stamp = next_stamp_++;
            changed(attr);
            return AssertOutcome::Merged;
        }
        Fact winner{attr, std::move(value), tick, next_stamp_++, std::move(provenance)};
        conflicts_.push_back({attr, tick, cur, winner});
        history_[attr].push_back(std::move(cur));
        cur = std::move(winner);
        changed(attr);
        return AssertOutcome::Replaced;
    }

    if (same_payload && cur.value.certainty() == value.certainty()) {
        if (cur.asserted_at == tick && cur.provenance == provenance) return AssertOutcome::Unchanged;
        cur.asserted_at = tick;
        cur.provenance = std::move(provenance);
        return AssertOutcome::Refreshed;
    }

    history_[attr].push_back(cur);
    cur = Fact{attr, std::move(value), tick, next_stamp_++, std::move(provenance)};
    changed(attr);
    return AssertOutcome::Replaced;
}

void WorkingMemory::replace_value(int attr, Value value) {
    auto& slot = current_[checked(attr)];
    if (!slot) throw std::logic_error("replace_value on an absent fact");
    history_[attr].push_back(*slot);
    slot->value = std::move(value);
    slot->stamp = next_stamp_++;
    changed(attr);
}

const Fact* WorkingMemory::lookup(int attr) const {
    const auto& slot = current_[checked(attr)];
    return slot ? &*slot : nullptr;
}

const Fact* WorkingMemory::lookup(std::string_view ref) const {
    const auto id = kb_->find_attribute(ref);
    if (!id) return nullptr;
    return lookup(*id);
}

std::span<const Fact> WorkingMemory::history(int attr) const { return history_[checked(attr)]; }

std::uint64_t WorkingMemory::stamp_of(int attr) const {
    const auto& slot = current_[checked(attr)];
    return slot ? slot->stamp : 0;
}

std::size_t WorkingMemory::fact_count() const {
    return static_cast<std::size_t>(std::count_if(current_.begin(), current_.end(), [](const auto& f) { return f.has_value(); }));
}

WmSnapshot WorkingMemory::snapshot() const { return WmSnapshot{current_}; }

std::vector<FactChange> snapshot_diff(const KnowledgeBase& kb, const WmSnapshot& before, const WmSnapshot& after) {
    if (before.facts.size() != after.facts.size()) {
        throw std::invalid_argument("snapshots of different knowledge bases");
    }
    std::vector<FactChange> out;
    for (std::size_t i = 0; i < after.facts.size(); ++i) {
        if (before.facts[i] == after.facts[i]) continue;
        out.push_back({static_cast<int>(i), kb.attribute_name(static_cast<int>(i)), before.facts[i], after.facts[i]});
    }
    std::sort(out.begin(), out.end(), [](const FactChange& a, const FactChange& b) { return a.ref < b.ref; });
    return out;
}

}  // namespace dynes
