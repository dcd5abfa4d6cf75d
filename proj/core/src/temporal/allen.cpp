#include "dynes/temporal/allen.hpp"

#include <stdexcept>
#include <string>

#include "dynes/kb/validate.hpp"

namespace dynes {

namespace {

TruthValue boolean(bool b) { return b ? TruthValue::truth() : TruthValue::falsity(); }

bool holds(Connective rel, int x1, int x2, int y1, int y2) {
    using enum Connective;
    switch (rel) {
    case Before: return x2 < y1;
    case After: return x1 > y2;
    case Meets: return x2 == y1;
    case Overlaps: return x1 < y1 && y1 < x2 && x2 < y2;
    case Starts: return x1 == y1 && x2 < y2;
    case During: return y1 < x1 && x2 < y2;
    case Equals: return x1 == y1 && x2 == y2;
    case Finishes: return x1 > y1 && x2 == y2;
    }
    return false;
}

bool point_vs_interval(Connective rel, int p, int y1, int y2) {
    using enum Connective;
    switch (rel) {
    case Before: return p < y1;
    case Starts: return p == y1;
    case During: return y1 < p && p < y2;
    case Finishes: return p == y2;
    case After: return p > y2;
    default: return false;
    }
}

bool compare_int(CompareOp op, int a, int b) {
    switch (op) {
    case CompareOp::Gt: return a > b;
    case CompareOp::Lt: return a < b;
    case CompareOp::Eq: return a == b;
    case CompareOp::Ge: return a >= b;
    case CompareOp::Le: return a <= b;
    case CompareOp::Ne: return a != b;
    }
    return false;
}

CompareOp mirror(CompareOp op) {
    switch (op) {
    case CompareOp::Gt: return CompareOp::Lt;
    case CompareOp::Lt: return CompareOp::Gt;
    case CompareOp::Ge: return CompareOp::Le;
    case CompareOp::Le: return CompareOp::Ge;
    default: return op;
    }
}

TruthValue temporal_attr(const Node& attr, CompareOp op, const Node& lit, const EventFlow& flow, int now) {
    const int n = static_cast<int>(lit.literal->as_crisp());
    if (attr.temporal_attr == TemporalAttrKind::Count) return boolean(compare_int(op, flow.count(attr.temporal), n));
    const auto len = flow.length(attr.temporal, now);
    if (!len) return TruthValue::ne();
    return boolean(compare_int(op, *len, n));
}

}  // namespace

TruthValue relation_holds(Connective rel, const Occurrence& x, TemporalKind xk, const Occurrence& y, TemporalKind yk,
                          int now) {
    if (!relation_allowed(xk, rel, yk)) {
        throw std::invalid_argument(std::string("connective ") + connective_letter(rel) +
                                    " not allowed for these operand kinds");
    }
    if (xk == TemporalKind::Event && yk == TemporalKind::Event) {
        const int p = x.start;
        const int q = y.start;
        return boolean(rel == Connective::Before ? p < q : rel == Connective::After ? p > q : p == q);
    }
    if (xk == TemporalKind::Event) return boolean(point_vs_interval(rel, x.start, y.start, y.end_or(now)));
    return boolean(holds(rel, x.start, x.end_or(now), y.start, y.end_or(now)));
}

TruthValue relation_holds(Connective rel, const Occurrence* x, TemporalKind xk, const Occurrence* y, TemporalKind yk,
                          int now) {
    if (!relation_allowed(xk, rel, yk)) {
        throw std::invalid_argument(std::string("connective ") + connective_letter(rel) +
                                    " not allowed for these operand kinds");
    }
    if (!x || !y) return TruthValue::ne();
    return relation_holds(rel, *x, xk, *y, yk, now);
}

TruthValue eval_temporal_formula(const Expr& f, const EventFlow& flow, int now, const AtomEval& atoms) {
    if (f.empty()) return TruthValue::truth();
    return eval_temporal_formula(f, f.root(), flow, now, atoms);
}

TruthValue eval_temporal_formula(const Expr& f, NodeId id, const EventFlow& flow, int now, const AtomEval& atoms) {
    const Node& n = f.node(id);
    switch (n.kind) {
    case NodeKind::And:
        return truth_and(eval_temporal_formula(f, n.children[0], flow, now, atoms),
                         eval_temporal_formula(f, n.children[1], flow, now, atoms));
    case NodeKind::Or:
        return truth_or(eval_temporal_formula(f, n.children[0], flow, now, atoms),
                        eval_temporal_formula(f, n.children[1], flow, now, atoms));
    case NodeKind::Not: return truth_not(eval_temporal_formula(f, n.children[0], flow, now, atoms));
    case NodeKind::TemporalVar: return boolean(flow.active(n.temporal, now));
    case NodeKind::Relation:
        return relation_holds(n.connective, flow.latest(n.temporal), flow.kind(n.temporal), flow.latest(n.temporal2),
                              flow.kind(n.temporal2), now);
    case NodeKind::Compare: {
        const Node& l = f.node(n.children[0]);
        const Node& r = f.node(n.children[1]);
        if (l.kind == NodeKind::TemporalAttr) return temporal_attr(l, n.compare, r, flow, now);
        if (r.kind == NodeKind::TemporalAttr) return temporal_attr(r, mirror(n.compare), l, flow, now);
        break;
    }
    default: break;
    }
    if (!atoms) throw std::logic_error("static atom in a temporal formula without an atom evaluator");
    return atoms(f, id);
}

}  // namespace dynes
