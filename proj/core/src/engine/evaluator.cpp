#include "dynes/engine/evaluator.hpp"

#include <algorithm>

#include "dynes/temporal/allen.hpp"

namespace dynes {

void merge_deps(DepSet& into, const DepSet& from) {
    if (from.empty()) return;
    DepSet out;
    out.reserve(into.size() + from.size());
    std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
    into = std::move(out);
}

namespace {

void add_dep(DepSet& deps, int attr) {
    auto it = std::lower_bound(deps.begin(), deps.end(), attr);
    if (it == deps.end() || *it != attr) deps.insert(it, attr);
}

MembershipFunction mirrored(const MembershipFunction& mf) {
    std::vector<Breakpoint> pts;
    for (auto it = mf.points().rbegin(); it != mf.points().rend(); ++it) pts.push_back({-it->x, it->mu});
    return MembershipFunction(std::move(pts));
}

Value negate(const Operand& op) {
    const Value& v = op.value;
    const double cf = v.certainty();
    switch (v.kind()) {
    case PayloadKind::Crisp: return Value(-v.as_crisp(), cf);
    case PayloadKind::Inexact: return Value(Inexact{-v.as_inexact().center, v.as_inexact().half_width}, cf);
    case PayloadKind::Range: return Value(Range{-v.as_range().hi, -v.as_range().lo}, cf);
    case PayloadKind::FiniteSet: {
        std::vector<double> m;
        for (double x : v.as_set().members) m.push_back(-x);
        return Value::finite_set(std::move(m), cf);
    }
    case PayloadKind::Fuzzy:
    case PayloadKind::Term: return Value(mirrored(fuzzify(v, op.ctx).value.as_mf()), cf);
    case PayloadKind::Boolean: break;
    }
    throw NegError(NegError::Kind::NonNumeric, "cannot negate a boolean");
}

}  // namespace

TermIndex::TermIndex(const KnowledgeBase& kb, const EngineConfig& config) {
    for (const auto& t : kb.types)
        for (const auto& [name, mf] : t.terms) terms_.emplace(name, &t.terms);
    attrs_.reserve(kb.attributes.size());
    for (int a = 0; a < static_cast<int>(kb.attributes.size()); ++a) {
        const TypeDecl& t = kb.attribute(a).type;
        FuzzyContext ctx;
        ctx.terms = t.terms.empty() ? nullptr : &t.terms;
        ctx.singleton_half_width = config.singleton_epsilon;
        if (t.range && t.range->hi > t.range->lo) ctx.singleton_half_width *= t.range->hi - t.range->lo;
        attrs_.push_back(ctx);
        if (t.name.empty())
            for (const auto& [name, mf] : t.terms) terms_.emplace(name, &t.terms);
    }
}

FuzzyContext TermIndex::for_literal(const std::string& term, const FuzzyContext& sibling) const {
    if (sibling.terms && sibling.terms->contains(term)) return sibling;
    auto it = terms_.find(term);
    if (it == terms_.end()) return sibling;
    return FuzzyContext{it->second, sibling.singleton_half_width};
}

Evaluator::Evaluator(const KnowledgeBase& kb, const EngineConfig& config, WorkingMemory& wm, const TermIndex& terms)
    : kb_(kb), config_(config), wm_(wm), terms_(terms) {}

TruthValue Evaluator::truth(const Expr& e, DepSet& deps, int cache_rule) {
    if (e.empty()) return TruthValue::truth();
    return truth(e, e.root(), deps, cache_rule);
}

TruthValue Evaluator::truth(const Expr& e, NodeId id, DepSet& deps, int cache_rule) {
    if (cache_rule < 0 || !config_.use_cache) return compute(e, id, deps, cache_rule);
    EvalCache& cache = wm_.cache();
    if (const CacheEntry* hit = cache.find(cache_rule, id)) {
        merge_deps(deps, hit->deps);
        return hit->truth;
    }
    DepSet local;
    const TruthValue t = compute(e, id, local, cache_rule);
    merge_deps(deps, local);
    cache.store(cache_rule, id, CacheEntry{t, std::move(local), wm_.last_stamp()});
    return t;
}

TruthValue Evaluator::compute(const Expr& e, NodeId id, DepSet& deps, int cache_rule) {
    const Node& n = e.node(id);
    switch (n.kind) {
    case NodeKind::And:
        return truth_and(truth(e, n.children[0], deps, cache_rule), truth(e, n.children[1], deps, cache_rule));
    case NodeKind::Or:
        return truth_or(truth(e, n.children[0], deps, cache_rule), truth(e, n.children[1], deps, cache_rule));
    case NodeKind::Not: return truth_not(truth(e, n.children[0], deps, cache_rule));
    case NodeKind::Literal:
        if (n.literal->kind() == PayloadKind::Boolean) {
            return n.literal->as_bool() ? TruthValue::truth() : TruthValue::falsity();
        }
        return TruthValue::ne();
    case NodeKind::AttrRef: {
        add_dep(deps, n.attr);
        const Fact* f = wm_.lookup(n.attr);
        if (!f || f->value.kind() != PayloadKind::Boolean) return TruthValue::ne();
        return f->value.as_bool() ? TruthValue::truth() : TruthValue::falsity();
    }
    case NodeKind::Compare: {
        auto a = value(e, n.children[0], deps);
        auto b = value(e, n.children[1], deps);
        if (!a || !b) return TruthValue::ne();
        if (a->value.kind() == PayloadKind::Term) a->ctx = terms_.for_literal(a->value.as_term(), b->ctx);
        if (b->value.kind() == PayloadKind::Term) b->ctx = terms_.for_literal(b->value.as_term(), a->ctx);
        try {
            return neg_compare(n.compare, a->value, b->value, a->ctx, b->ctx);
        } catch (const NegError&) {
            return TruthValue::ne();
        }
    }
    default: break;
    }
    throw std::logic_error("temporal atom in a static fragment");
}

std::optional<Operand> Evaluator::value(const Expr& e, NodeId id, DepSet& deps) {
    const Node& n = e.node(id);
    switch (n.kind) {
    case NodeKind::Literal: return Operand{*n.literal, FuzzyContext{nullptr, config_.singleton_epsilon}};
    case NodeKind::AttrRef: {
        add_dep(deps, n.attr);
        const Fact* f = wm_.lookup(n.attr);
        if (!f) return std::nullopt;
        return Operand{f->value, terms_.of(n.attr)};
    }
    case NodeKind::Negate: {
        auto v = value(e, n.children[0], deps);
        if (!v) return std::nullopt;
        return Operand{negate(*v), v->ctx};
    }
    case NodeKind::Arith: {
        auto a = value(e, n.children[0], deps);
        auto b = value(e, n.children[1], deps);
        if (!a || !b) return std::nullopt;
        if (a->value.kind() == PayloadKind::Term) a->ctx = terms_.for_literal(a->value.as_term(), b->ctx);
        if (b->value.kind() == PayloadKind::Term) b->ctx = terms_.for_literal(b->value.as_term(), a->ctx);
        FuzzyParams params;
        params.alpha_levels = config_.alpha_levels;
        Value r = neg_arith(n.arith, a->value, b->value, a->ctx, b->ctx, params);
        FuzzyContext ctx{nullptr, std::max(a->ctx.singleton_half_width, b->ctx.singleton_half_width)};
        return Operand{std::move(r), ctx};
    }
    default: break;
    }
    throw std::logic_error("condition node where a value was expected");
}

TruthValue Evaluator::temporal_truth(const Expr& e, const EventFlow& flow, int now, DepSet& deps) {
    return eval_temporal_formula(e, flow, now, [&](const Expr& f, NodeId id) { return truth(f, id, deps); });
}

}  // namespace dynes
