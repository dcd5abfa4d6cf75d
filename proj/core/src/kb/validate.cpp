#include "dynes/kb/validate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "dynes/kb/normalize.hpp"

namespace dynes {

bool relation_allowed(TemporalKind lhs, Connective c, TemporalKind rhs) {
    using enum Connective;
    if (lhs == TemporalKind::Interval && rhs == TemporalKind::Interval) return true;
    if (lhs == TemporalKind::Event && rhs == TemporalKind::Event) return c == Before || c == After || c == Equals;
    if (lhs == TemporalKind::Event && rhs == TemporalKind::Interval)
        return c == Before || c == After || c == Starts || c == During || c == Finishes;
    return false;
}

namespace {

const char* pair_phrase(TemporalKind lhs, TemporalKind rhs) {
    if (lhs == TemporalKind::Event && rhs == TemporalKind::Event) return "between events";
    if (lhs == TemporalKind::Interval && rhs == TemporalKind::Interval) return "between intervals";
    if (lhs == TemporalKind::Event) return "between an event and an interval";
    return "between an interval and an event";
}

bool is_temporal_member(const std::string& m) { return m == "c" || m == "l"; }

class Validator {
public:
    explicit Validator(const KnowledgeBase& kb) : kb_(kb) {}

    std::vector<Diagnostic> run() {
        collect_names();
        for (const auto& o : kb_.objects) check_object(o);
        for (const auto& ev : kb_.events) check_condition(ev.origin, false, "origin condition");
        for (const auto& iv : kb_.intervals) {
            check_condition(iv.open, false, "open condition");
            check_condition(iv.close, false, "close condition");
        }
        std::set<std::string> rule_names;
        for (const auto& r : kb_.rules) {
            if (!rule_names.insert(r.name).second) report(r.loc, "duplicate rule name '" + r.name + "'");
            check_rule(r);
        }
        check_config();
        return std::move(out_);
    }

private:
    void report(SourceLoc loc, std::string msg) { out_.push_back(Diagnostic{loc, std::move(msg)}); }

    void collect_names() {
        for (const auto& t : kb_.types) {
            if (!types_.emplace(t.name, &t).second) report(t.loc, "duplicate type name '" + t.name + "'");
            check_type(t, t.name);
        }
        struct Claim {
            SourceLoc loc;
            const std::string* name;
            const char* what;
        };
        std::vector<Claim> claims;
        for (const auto& o : kb_.objects) {
            claims.push_back({o.loc, &o.name, "object"});
            objects_.emplace(o.name, &o);
        }
        for (const auto& ev : kb_.events) {
            claims.push_back({ev.loc, &ev.name, "event"});
            temporal_.emplace(ev.name, TemporalKind::Event);
        }
        for (const auto& iv : kb_.intervals) {
            claims.push_back({iv.loc, &iv.name, "interval"});
            temporal_.emplace(iv.name, TemporalKind::Interval);
        }
        std::stable_sort(claims.begin(), claims.end(), [](const Claim& a, const Claim& b) {
            return std::tie(a.loc.line, a.loc.column) < std::tie(b.loc.line, b.loc.column);
        });
        std::set<std::string> names;
        for (const auto& c : claims) {
            if (!names.insert(*c.name).second) {
                report(c.loc, std::string("duplicate ") + c.what + " name '" + *c.name + "'");
            }
        }
    }

    void check_type(const TypeDecl& t, const std::string& label) {
        const bool numeric = t.base == BaseType::Number || t.base == BaseType::Integer;
        if (t.base == BaseType::Symbol && t.symbols.empty()) report(t.loc, "enum type '" + label + "' has no values");
        if (t.base != BaseType::Symbol && !t.symbols.empty()) report(t.loc, "only enum types list values");
        if (!numeric && t.range) report(t.loc, "only numeric types take a range");
        if (!numeric && !t.terms.empty()) report(t.loc, "linguistic terms need a numeric base type");
        std::set<std::string> seen;
        for (const auto& s : t.symbols)
            if (!seen.insert(s).second) report(t.loc, "duplicate enum value '" + s + "'");
    }

    void check_object(const ObjectDecl& o) {
        std::set<std::string> attrs;
        for (const auto& a : o.attributes) {
            if (!attrs.insert(a.name).second) {
                report(a.loc, "duplicate attribute '" + o.name + "." + a.name + "'");
            }
            if (!a.type_name.empty()) {
                if (!types_.contains(a.type_name)) report(a.loc, "unknown type '" + a.type_name + "'");
            } else {
                check_type(a.type, o.name + "." + a.name);
            }
        }
    }

    const AttributeDecl* find_attr(const std::string& object, const std::string& member) const {
        auto it = objects_.find(object);
        if (it == objects_.end()) return nullptr;
        for (const auto& a : it->second->attributes)
            if (a.name == member) return &a;
        return nullptr;
    }

    const TypeDecl* type_of(const AttributeDecl& a) const {
        if (a.type_name.empty()) return &a.type;
        auto it = types_.find(a.type_name);
        return it == types_.end() ? nullptr : it->second;
    }

    std::optional<TemporalKind> temporal_kind(const std::string& name) const {
        auto it = temporal_.find(name);
        if (it == temporal_.end()) return std::nullopt;
        return it->second;
    }

    bool refers_to_temporal_attr(const Node& n) const {
        return (n.kind == NodeKind::AttrRef || n.kind == NodeKind::TemporalAttr) && temporal_kind(n.object);
    }

    void check_condition(const Expr& e, bool allow_temporal, const char* where) {
        if (e.empty()) return;
        check_node(e, e.root(), true, allow_temporal, where);
    }

    void check_symbol_literal(const AttributeDecl& a, const std::string& qualified, const Node& lit) {
        const TypeDecl* t = type_of(a);
        if (!t || t->base != BaseType::Symbol || !lit.literal || lit.literal->kind() != PayloadKind::Term) return;
        const auto& s = lit.literal->as_term();
        if (std::find(t->symbols.begin(), t->symbols.end(), s) == t->symbols.end()) {
            report(lit.loc, "\"" + s + "\" is not a value of " + qualified);
        }
    }

    void check_node(const Expr& e, NodeId id, bool condition, bool allow_temporal, const char* where) {
        const Node& n = e.node(id);
        switch (n.kind) {
        case NodeKind::Literal: return;
        case NodeKind::AttrRef:
        case NodeKind::TemporalAttr: {
            if (temporal_kind(n.object)) {
                if (!is_temporal_member(n.member)) {
                    report(n.loc, "unknown temporal attribute '" + n.object + "." + n.member + "' (expected .c or .l)");
                } else if (!allow_temporal) {
                    report(n.loc, std::string("temporal attribute not allowed in ") + where);
                } else {
                    report(n.loc, "temporal attribute '" + n.object + "." + n.member +
                                      "' can only be compared with an integer");
                }
                return;
            }
            const AttributeDecl* a = find_attr(n.object, n.member);
            if (!a) {
                report(n.loc, "unresolved reference '" + n.object + "." + n.member + "'");
                return;
            }
            if (condition) {
                const TypeDecl* t = type_of(*a);
                if (t && t->base != BaseType::Boolean) {
                    report(n.loc, "condition '" + n.object + "." + n.member + "' is not boolean");
                }
            }
            return;
        }
        case NodeKind::TemporalVar:
            if (!temporal_kind(n.object)) report(n.loc, "unknown event or interval '" + n.object + "'");
            else if (!allow_temporal) report(n.loc, std::string("temporal formula not allowed in ") + where);
            return;
        case NodeKind::Relation: {
            auto lk = temporal_kind(n.object);
            auto rk = temporal_kind(n.member);
            if (!lk) report(n.loc, "unknown event or interval '" + n.object + "'");
            if (!rk) report(n.loc, "unknown event or interval '" + n.member + "'");
            if (!lk || !rk) return;
            if (!allow_temporal) {
                report(n.loc, std::string("temporal formula not allowed in ") + where);
                return;
            }
            if (!relation_allowed(*lk, n.connective, *rk)) {
                report(n.loc, std::string("connective ") + connective_letter(n.connective) + " not allowed " +
                                  pair_phrase(*lk, *rk));
            }
            return;
        }
        case NodeKind::Compare: {
            const Node& l = e.node(n.children[0]);
            const Node& r = e.node(n.children[1]);
            const bool lt = refers_to_temporal_attr(l);
            const bool rt = refers_to_temporal_attr(r);
            if (lt || rt) {
                const Node& attr = lt ? l : r;
                const Node& other = lt ? r : l;
                const bool integer_literal = other.kind == NodeKind::Literal &&
                                             other.literal->kind() == PayloadKind::Crisp &&
                                             other.literal->as_crisp() == std::floor(other.literal->as_crisp());
                if (!is_temporal_member(attr.member)) {
                    report(attr.loc, "unknown temporal attribute '" + attr.object + "." + attr.member +
                                         "' (expected .c or .l)");
                } else if (!allow_temporal) {
                    report(attr.loc, std::string("temporal attribute not allowed in ") + where);
                } else if (!integer_literal) {
                    report(other.loc, "temporal attribute '" + attr.object + "." + attr.member +
                                          "' must be compared with an integer");
                }
                return;
            }
            for (NodeId c : n.children) check_node(e, c, false, allow_temporal, where);
            // enum attribute compared against a literal symbol
            for (int side = 0; side < 2; ++side) {
                const Node& a = side == 0 ? l : r;
                const Node& b = side == 0 ? r : l;
                if (a.kind != NodeKind::AttrRef || b.kind != NodeKind::Literal) continue;
                if (const AttributeDecl* decl = find_attr(a.object, a.member))
                    check_symbol_literal(*decl, a.object + "." + a.member, b);
            }
            return;
        }
        case NodeKind::Negate:
        case NodeKind::Arith:
            for (NodeId c : n.children) check_node(e, c, false, allow_temporal, where);
            return;
        case NodeKind::Not:
        case NodeKind::And:
        case NodeKind::Or:
            for (NodeId c : n.children) check_node(e, c, true, allow_temporal, where);
            return;
        }
    }

    void check_cf(std::optional<double> cf, SourceLoc loc, const char* what) {
        if (cf && !(*cf >= 0.0 && *cf <= 1.0)) report(loc, std::string(what) + " certainty outside [0;1]");
    }

    void check_rule(const Rule& r) {
        if (r.kind == RuleKind::Periodic && r.period < 1) {
            report(r.loc, "periodic period must be >= 1 in rule '" + r.name + "'");
        }
        if (r.kind == RuleKind::Response) {
            auto k = temporal_kind(r.trigger);
            if (!k || *k != TemporalKind::Event) report(r.loc, "unknown trigger '" + r.trigger + "'");
        }
        check_cf(r.cf, r.loc, "rule");
        check_condition(r.lhs, true, "rule antecedent");
        for (const auto& a : r.actions) {
            if (temporal_kind(a.object)) {
                report(a.loc, "cannot assign to temporal object '" + a.object + "'");
            } else if (const AttributeDecl* decl = find_attr(a.object, a.member)) {
                if (!a.value.empty() && a.value.node(a.value.root()).kind == NodeKind::Literal)
                    check_symbol_literal(*decl, a.object + "." + a.member, a.value.node(a.value.root()));
            } else {
                report(a.loc, "unknown assignment target '" + a.object + "." + a.member + "'");
            }
            check_cf(a.cf, a.loc, "action");
            if (!a.value.empty()) check_node(a.value, a.value.root(), false, false, "assigned expression");
        }
    }

    void check_config() {
        std::set<std::string> seen;
        for (const auto& s : kb_.config) {
            if (std::find(std::begin(kConfigKeys), std::end(kConfigKeys), s.key) == std::end(kConfigKeys)) {
                report(s.loc, "unknown config key '" + s.key + "'");
                continue;
            }
            if (!seen.insert(s.key).second) report(s.loc, "duplicate config key '" + s.key + "'");
            const double* d = std::get_if<double>(&s.value);
            const std::string* str = std::get_if<std::string>(&s.value);
            const bool* b = std::get_if<bool>(&s.value);
            if (s.key == "theta_fire") {
                if (!d || !(*d > 0.0 && *d <= 1.0)) report(s.loc, "theta_fire must be a number in (0;1]");
            } else if (s.key == "max_firings" || s.key == "alpha_levels") {
                const double min = s.key == "alpha_levels" ? 2.0 : 1.0;
                if (!d || *d != std::floor(*d) || *d < min) {
                    report(s.loc, s.key + " must be an integer >= " + std::to_string(static_cast<int>(min)));
                }
            } else if (s.key == "singleton_epsilon") {
                if (!d || !(*d > 0.0)) report(s.loc, "singleton_epsilon must be a positive number");
            } else if (s.key == "firing_mode") {
                if (!str || (*str != "multi" && *str != "single")) report(s.loc, "firing_mode must be multi or single");
            } else if (s.key == "persist_conflict_set") {
                if (!b) report(s.loc, "persist_conflict_set must be true or false");
            }
        }
    }

    const KnowledgeBase& kb_;
    std::vector<Diagnostic> out_;
    std::map<std::string, const TypeDecl*> types_;
    std::map<std::string, const ObjectDecl*> objects_;
    std::map<std::string, TemporalKind> temporal_;
};

// ── resolution ────────────────────────────────────────────────────────────

bool has_temporal(const Expr& e, NodeId id) {
    const Node& n = e.node(id);
    if (n.kind == NodeKind::TemporalAttr || n.kind == NodeKind::TemporalVar || n.kind == NodeKind::Relation) {
        return true;
    }
    return std::any_of(n.children.begin(), n.children.end(), [&](NodeId c) { return has_temporal(e, c); });
}

Expr conjunction_of(const Expr& src, const std::vector<NodeId>& parts) {
    Expr out;
    if (parts.empty()) return out;
    if (parts.size() == 1) {
        out.set_root(out.graft(src, parts[0]));
        return out;
    }
    Node conj;
    conj.kind = NodeKind::And;
    conj.loc = src.node(parts[0]).loc;
    const NodeId root = out.add(std::move(conj));
    std::vector<NodeId> kids;
    for (NodeId p : parts) kids.push_back(out.graft(src, p));
    out.node(root).children = std::move(kids);
    out.set_root(root);
    return normalize_lhs(out);
}

class Resolver {
public:
    explicit Resolver(KnowledgeBase& kb) : kb_(kb) {}

    void run() {
        std::map<std::string, const TypeDecl*> types;
        for (const auto& t : kb_.types) types.emplace(t.name, &t);
        kb_.attributes.clear();
        for (std::size_t oi = 0; oi < kb_.objects.size(); ++oi) {
            auto& o = kb_.objects[oi];
            for (std::size_t ai = 0; ai < o.attributes.size(); ++ai) {
                auto& a = o.attributes[ai];
                if (!a.type_name.empty()) {
                    const SourceLoc loc = a.type.loc;
                    a.type = *types.at(a.type_name);
                    a.type.loc = loc;
                }
                const int id = static_cast<int>(kb_.attributes.size());
                kb_.attributes.push_back({o.name + "." + a.name, static_cast<int>(oi), static_cast<int>(ai)});
                attr_ids_.emplace(kb_.attributes.back().qualified, id);
            }
        }
        for (int t = 0; t < kb_.temporal_count(); ++t) temporal_ids_.emplace(kb_.temporal_name(t), t);

        for (auto& ev : kb_.events) resolve(ev.origin);
        for (auto& iv : kb_.intervals) {
            resolve(iv.open);
            resolve(iv.close);
        }
        for (std::size_t i = 0; i < kb_.rules.size(); ++i) {
            Rule& r = kb_.rules[i];
            r.index = static_cast<int>(i);
            if (r.kind == RuleKind::Response) r.trigger_event = temporal_ids_.at(r.trigger);
            resolve(r.lhs);
            for (auto& a : r.actions) {
                a.attr = attr_ids_.at(a.object + "." + a.member);
                resolve(a.value);
            }
            split(r);
            r.specificity = static_cast<int>(condition_atoms(r.lhs).size());
        }
        kb_.resolved = true;
    }

private:
    void resolve(Expr& e) {
        for (NodeId id = 0; id < e.size(); ++id) {
            Node& n = e.node(id);
            switch (n.kind) {
            case NodeKind::AttrRef:
            case NodeKind::TemporalAttr:
                if (auto it = temporal_ids_.find(n.object); it != temporal_ids_.end()) {
                    n.kind = NodeKind::TemporalAttr;
                    n.temporal = it->second;
                    n.temporal_attr = n.member == "c" ? TemporalAttrKind::Count : TemporalAttrKind::Length;
                } else {
                    n.attr = attr_ids_.at(n.object + "." + n.member);
                }
                break;
            case NodeKind::TemporalVar: n.temporal = temporal_ids_.at(n.object); break;
            case NodeKind::Relation:
                n.temporal = temporal_ids_.at(n.object);
                n.temporal2 = temporal_ids_.at(n.member);
                break;
            default: break;
            }
        }
    }

    void split(Rule& r) {
        r.static_lhs = Expr{};
        r.temporal_lhs = Expr{};
        if (r.lhs.empty()) return;
        std::vector<NodeId> conjuncts;
        NodeId cur = r.lhs.root();
        while (r.lhs.node(cur).kind == NodeKind::And) {
            conjuncts.push_back(r.lhs.node(cur).children[0]);
            cur = r.lhs.node(cur).children[1];
        }
        conjuncts.push_back(cur);
        std::vector<NodeId> stat;
        std::vector<NodeId> temp;
        for (NodeId c : conjuncts) (has_temporal(r.lhs, c) ? temp : stat).push_back(c);
        r.static_lhs = conjunction_of(r.lhs, stat);
        r.temporal_lhs = conjunction_of(r.lhs, temp);
    }

    KnowledgeBase& kb_;
    std::map<std::string, int> attr_ids_;
    std::map<std::string, int> temporal_ids_;
};

}  // namespace

std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb) { return Validator(kb).run(); }

void resolve_kb(KnowledgeBase& kb) {
    if (!validate_kb(kb).empty()) throw std::logic_error("resolve_kb on a knowledge base with diagnostics");
    Resolver(kb).run();
}

}  // namespace dynes
