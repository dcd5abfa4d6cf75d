#include "dynes/engine/conflict.hpp"

#include <algorithm>
#include <map>

namespace dynes {

bool rank_before(const RankTuple& a, const RankTuple& b) {
    if (a.specificity != b.specificity) return a.specificity > b.specificity;
    if (a.novelty != b.novelty) return a.novelty > b.novelty;
    if (a.reliability != b.reliability) return a.reliability > b.reliability;
    return a.index < b.index;
}

std::string Signature::key() const {
    std::string k = std::to_string(rule) + "|";
    for (const auto& [attr, stamp] : facts) k += std::to_string(attr) + ":" + std::to_string(stamp) + ",";
    k += "|";
    for (const auto& t : temporal) k += std::to_string(t[0]) + ":" + std::to_string(t[1]) + ":" + std::to_string(t[2]) + ",";
    k += "|" + std::to_string(activation);
    return k;
}

const Instantiation* ConflictSet::resolve(std::vector<Instantiation> fresh) {
    std::map<int, Instantiation*> by_rule;
    for (auto& f : fresh) by_rule[f.rule] = &f;
    std::erase_if(entries_, [&](const Instantiation& e) {
        auto it = by_rule.find(e.rule);
        return it == by_rule.end() || !(it->second->signature == e.signature);
    });
    for (auto& f : fresh) {
        auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Instantiation& e) { return e.rule == f.rule; });
        if (it == entries_.end()) entries_.push_back(std::move(f));
        else *it = std::move(f);  // same signature; refresh truth and rank
    }
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const Instantiation& a, const Instantiation& b) { return rank_before(a.rank, b.rank); });
    return head();
}

void ConflictSet::remove_rule(int rule) {
    std::erase_if(entries_, [rule](const Instantiation& e) { return e.rule == rule; });
}

}  // namespace dynes
