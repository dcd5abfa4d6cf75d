#include "dynes/kb/ast.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dynes {

char connective_letter(Connective c) {
    switch (c) {
    case Connective::Before: return 'b';
    case Connective::After: return 'a';
    case Connective::Meets: return 'm';
    case Connective::Overlaps: return 'o';
    case Connective::Starts: return 's';
    case Connective::During: return 'd';
    case Connective::Equals: return 'e';
    case Connective::Finishes: return 'f';
    }
    return '?';
}

std::optional<Connective> connective_from_letter(std::string_view s) {
    if (s.size() != 1) return std::nullopt;
    for (auto c : kAllConnectives)
        if (connective_letter(c) == s[0]) return c;
    return std::nullopt;
}

bool Node::same_shape(const Node& o) const {
    if (kind != o.kind || children.size() != o.children.size()) return false;
    switch (kind) {
    case NodeKind::Literal: return literal == o.literal;
    case NodeKind::AttrRef:
    case NodeKind::TemporalAttr:
    case NodeKind::Relation:
        if (kind == NodeKind::Relation && connective != o.connective) return false;
        return object == o.object && member == o.member;
    case NodeKind::TemporalVar: return object == o.object;
    case NodeKind::Arith: return arith == o.arith;
    case NodeKind::Compare: return compare == o.compare;
    case NodeKind::Negate:
    case NodeKind::Not:
    case NodeKind::And:
    case NodeKind::Or: return true;
    }
    return false;
}

NodeId Expr::add(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Expr::graft(const Expr& src, NodeId id) {
    Node copy = src.node(id);
    std::vector<NodeId> kids;
    const NodeId self = add(Node{});
    for (NodeId c : copy.children) kids.push_back(graft(src, c));
    copy.children = std::move(kids);
    nodes_[self] = std::move(copy);
    return self;
}

bool Expr::same_shape(const Expr& other) const {
    if (empty() || other.empty()) return empty() == other.empty();
    return same_subtree(root_, other, other.root_);
}

bool Expr::same_subtree(NodeId a, const Expr& other, NodeId b) const {
    const Node& x = node(a);
    const Node& y = other.node(b);
    if (!x.same_shape(y)) return false;
    for (std::size_t i = 0; i < x.children.size(); ++i)
        if (!same_subtree(x.children[i], other, y.children[i])) return false;
    return true;
}

std::vector<NodeId> condition_atoms(const Expr& e) {
    std::vector<NodeId> out;
    if (e.empty()) return out;
    std::vector<NodeId> stack{e.root()};
    while (!stack.empty()) {
        const NodeId id = stack.back();
        stack.pop_back();
        const Node& n = e.node(id);
        if (n.kind == NodeKind::Not || n.kind == NodeKind::And || n.kind == NodeKind::Or) {
            for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
        } else {
            out.push_back(id);
        }
    }
    return out;
}

const char* to_string(BaseType b) {
    switch (b) {
    case BaseType::Number: return "number";
    case BaseType::Integer: return "int";
    case BaseType::Boolean: return "bool";
    case BaseType::Symbol: return "enum";
    case BaseType::String: return "string";
    }
    return "?";
}

const char* to_string(RuleKind k) {
    switch (k) {
    case RuleKind::Conventional: return "conventional";
    case RuleKind::Periodic: return "periodic";
    case RuleKind::Response: return "response";
    }
    return "?";
}

double TypeDecl::domain_size() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (base) {
    case BaseType::Boolean: return 2.0;
    case BaseType::Symbol: return static_cast<double>(symbols.size());
    case BaseType::Integer:
        if (!range) return inf;
        return std::floor(range->hi) - std::ceil(range->lo) + 1.0;
    case BaseType::Number:
    case BaseType::String: return inf;
    }
    return inf;
}

std::optional<int> KnowledgeBase::find_attribute(std::string_view qualified) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
        if (attributes[i].qualified == qualified) return static_cast<int>(i);
    return std::nullopt;
}

const AttributeDecl& KnowledgeBase::attribute(int id) const {
    const auto& info = attributes.at(static_cast<std::size_t>(id));
    return objects.at(info.object).attributes.at(info.attribute);
}

TemporalKind KnowledgeBase::temporal_kind(int id) const {
    return id < static_cast<int>(events.size()) ? TemporalKind::Event : TemporalKind::Interval;
}

const std::string& KnowledgeBase::temporal_name(int id) const {
    if (id < static_cast<int>(events.size())) return events.at(id).name;
    return intervals.at(id - events.size()).name;
}

std::optional<int> KnowledgeBase::find_temporal(std::string_view name) const {
    for (std::size_t i = 0; i < events.size(); ++i)
        if (events[i].name == name) return static_cast<int>(i);
    for (std::size_t i = 0; i < intervals.size(); ++i)
        if (intervals[i].name == name) return static_cast<int>(events.size() + i);
    return std::nullopt;
}

std::optional<int> KnowledgeBase::find_rule(std::string_view name) const {
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (rules[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

}  // namespace dynes
