#include "dynes/engine/engine.hpp"

#include <algorithm>

#include "dynes/values/neg_ops.hpp"

namespace dynes {

namespace {

void collect_temporal(const Expr& e, std::vector<int>& out) {
    for (const Node& n : e.nodes()) {
        if (n.kind == NodeKind::TemporalAttr || n.kind == NodeKind::TemporalVar || n.kind == NodeKind::Relation) {
            out.push_back(n.temporal);
            if (n.kind == NodeKind::Relation) out.push_back(n.temporal2);
        }
    }
}

std::vector<DiffEntry> tagged(const KnowledgeBase& kb, const WmSnapshot& a, const WmSnapshot& b, const char* phase) {
    std::vector<DiffEntry> out;
    for (auto& c : snapshot_diff(kb, a, b)) out.push_back({phase, c.ref, std::move(c.before), std::move(c.after)});
    return out;
}

}  // namespace

std::vector<int> select_active(const KnowledgeBase& kb, int tick, const TickOrigins& origins) {
    std::vector<int> out;
    for (const Rule& r : kb.rules) {
        switch (r.kind) {
        case RuleKind::Conventional: out.push_back(r.index); break;
        case RuleKind::Periodic:
            if (tick % r.period == 0) out.push_back(r.index);
            break;
        case RuleKind::Response:
            if (origins.originated(r.trigger_event)) out.push_back(r.index);
            break;
        }
    }
    return out;
}

std::vector<DefuzzRecord> finalize_defuzz(WorkingMemory& wm, const std::vector<int>& attrs) {
    std::vector<int> sorted = attrs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<DefuzzRecord> out;
    for (int a : sorted) {
        const Fact* f = wm.lookup(a);
        if (!f || !f->value.is_fuzzy()) continue;
        const Defuzzified d = defuzzify(f->value.as_mf());
        out.push_back({wm.kb().attribute_name(a), d.modes, d.primary});
        wm.replace_value(a, Value(d.primary, f->value.certainty()));
    }
    std::sort(out.begin(), out.end(), [](const DefuzzRecord& x, const DefuzzRecord& y) { return x.ref < y.ref; });
    return out;
}

Engine::Engine(const KnowledgeBase& kb, EngineConfig config)
    : kb_(&kb), config_(config), terms_(kb, config_), wm_(kb), flow_(kb) {
    config_.validate();
    for (const Rule& r : kb.rules) {
        std::vector<int> ts;
        collect_temporal(r.lhs, ts);
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        rule_temporal_.push_back(std::move(ts));
    }
}

Signature Engine::signature_of(const Rule& r, const DepSet& deps, int tick, const TickOrigins&) const {
    Signature s;
    s.rule = r.index;
    for (int a : deps) s.facts.emplace_back(a, wm_.stamp_of(a));
    for (int t : rule_temporal_[r.index]) {
        const Occurrence* occ = flow_.latest(t);
        s.temporal.push_back({flow_.count(t), occ ? occ->start : -1, occ && occ->end ? *occ->end : -1});
    }
    if (r.kind != RuleKind::Conventional) s.activation = tick;
    return s;
}

std::vector<Instantiation> Engine::match(const std::vector<int>& rules, int tick, const TickOrigins& origins) {
    Evaluator ev(*kb_, config_, wm_, terms_);
    std::vector<Instantiation> out;
    for (int ri : rules) {
        const Rule& r = kb_->rules[ri];
        DepSet deps;
        const TruthValue st = ev.truth(r.static_lhs, deps, r.index);
        const TruthValue tt = r.temporal_lhs.empty() ? TruthValue::truth() : ev.temporal_truth(r.temporal_lhs, flow_, tick, deps);
        const TruthValue t = truth_and(st, tt);
        if (!t.satisfies(config_.theta_fire)) continue;
        Signature sig = signature_of(r, deps, tick, origins);
        if (fired_.contains(sig.key())) continue;

        Instantiation inst;
        inst.rule = ri;
        inst.truth = t;
        inst.rank.specificity = r.specificity;
        for (int a : deps)
            if (const Fact* f = wm_.lookup(a)) inst.rank.novelty = std::max(inst.rank.novelty, f->asserted_at);
        inst.rank.reliability = r.certainty() * t.degree();
        inst.rank.index = r.index;
        inst.deps = std::move(deps);
        inst.signature = std::move(sig);
        out.push_back(std::move(inst));
    }
    return out;
}

std::optional<Firing> Engine::fire(const Instantiation& inst, int tick, std::vector<std::string>& flags) {
    const Rule& r = kb_->rules[inst.rule];
    Evaluator ev(*kb_, config_, wm_, terms_);
    std::vector<std::pair<int, Value>> results;
    for (const Action& a : r.actions) {
        DepSet unused;
        try {
            auto v = ev.value(a.value, a.value.root(), unused);
            if (!v) {
                flags.push_back("rhs_error:" + r.name + ": missing fact for " + kb_->attribute_name(a.attr));
                return std::nullopt;
            }
            const double cf = std::clamp(r.certainty() * inst.truth.degree() * a.certainty() * v->value.certainty(), 0.0, 1.0);
            results.emplace_back(a.attr, v->value.with_certainty(cf));
        } catch (const NegError& e) {
            flags.push_back("rhs_error:" + r.name + ": " + e.what());
            return std::nullopt;
        }
    }
    Firing out{r.name, inst.truth, {}};
    for (auto& [attr, value] : results) {
        wm_.assert_fact(attr, value, tick, Provenance::rule(r.name));
        const std::string& ref = kb_->attribute_name(attr);
        if (kb_->attribute(attr).output) blackboard_.post(ControlAction{tick, r.name, attr, ref, value});
        out.assignments.push_back({ref, std::move(value)});
    }
    return out;
}

TickRecord Engine::run_cycle(const std::vector<ExternalFact>& facts) {
    const int tick = next_tick_;
    std::vector<std::pair<int, const Value*>> inputs;
    for (const auto& f : facts) {
        const auto id = kb_->find_attribute(f.ref);
        if (!id) throw UndeclaredReference(f.ref);
        inputs.emplace_back(*id, &f.value);
    }

    TickRecord rec;
    rec.tick = tick;
    const std::size_t conflicts_before = wm_.conflicts().size();

    rec.phases.push_back("input");
    const WmSnapshot s0 = wm_.snapshot();
    for (const auto& [attr, value] : inputs) wm_.assert_fact(attr, *value, tick, Provenance::external());
    const WmSnapshot s1 = wm_.snapshot();
    rec.wm_diff = tagged(*kb_, s0, s1, "input");

    rec.phases.push_back("interpret");
    Evaluator ev(*kb_, config_, wm_, terms_);
    const TickOrigins origins = flow_.interpret_tick(
        tick,
        [&](const Expr& e) {
            DepSet unused;
            return ev.truth(e, unused);
        },
        config_.theta_fire);
    for (int t : origins.events) blackboard_.post(OriginNotice{tick, t, OriginNotice::Kind::Origin});
    for (int t : origins.opened) blackboard_.post(OriginNotice{tick, t, OriginNotice::Kind::Open});
    for (int t : origins.closed) blackboard_.post(OriginNotice{tick, t, OriginNotice::Kind::Close});
    for (const auto& a : origins.anomalies)
        rec.anomalies.push_back({kb_->temporal_name(a.temporal), to_string(a.kind), a.message()});

    auto notices = blackboard_.take_origins();
    std::stable_sort(notices.begin(), notices.end(),
                     [](const OriginNotice& a, const OriginNotice& b) { return a.temporal < b.temporal; });
    for (const auto& n : notices) {
        const char* kind = n.kind == OriginNotice::Kind::Origin ? "origin" : n.kind == OriginNotice::Kind::Open ? "open" : "close";
        rec.origins.push_back({kb_->temporal_name(n.temporal), kind});
    }

    if (!config_.persist_conflict_set) conflict_set_.clear();
    std::vector<int> derived;
    int firings = 0;
    for (;;) {
        rec.phases.push_back("A");
        const std::vector<int> active = select_active(*kb_, tick, origins);
        rec.phases.push_back("S");
        std::vector<Instantiation> fresh = match(active, tick, origins);
        rec.phases.push_back("K");
        const Instantiation* head = conflict_set_.resolve(std::move(fresh));
        if (!head) break;
        if (firings >= config_.max_firings) {
            rec.flags.push_back("max_firings");
            break;
        }
        const Instantiation chosen = *head;
        conflict_set_.remove_rule(chosen.rule);
        fired_.insert(chosen.signature.key());
        rec.phases.push_back("W");
        if (auto f = fire(chosen, tick, rec.flags)) {
            for (const auto& a : kb_->rules[chosen.rule].actions) derived.push_back(a.attr);
            rec.fired.push_back(std::move(*f));
        }
        ++firings;
        if (config_.firing_mode == FiringMode::Single) break;
    }
    const WmSnapshot s2 = wm_.snapshot();
    for (auto& d : tagged(*kb_, s1, s2, "fire")) rec.wm_diff.push_back(std::move(d));

    rec.phases.push_back("D");
    rec.defuzz_modes = finalize_defuzz(wm_, derived);
    for (auto& d : tagged(*kb_, s2, wm_.snapshot(), "defuzz")) rec.wm_diff.push_back(std::move(d));

    rec.control_actions = blackboard_.take_controls();
    for (std::size_t i = conflicts_before; i < wm_.conflicts().size(); ++i) {
        rec.flags.push_back("conflict:" + kb_->attribute_name(wm_.conflicts()[i].attr));
    }
    ++next_tick_;
    return rec;
}

}  // namespace dynes
