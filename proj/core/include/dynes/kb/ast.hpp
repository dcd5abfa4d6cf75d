#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dynes/values/neg_ops.hpp"
#include "dynes/values/value.hpp"

namespace dynes {

struct SourceLoc {
    int line = 0;
    int column = 0;
    friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

// ── Expressions ───────────────────────────────────────────────────────────
//
// An expression is a small arena of nodes addressed by NodeId. After
// normalization ids are assigned in pre-order, so the root is always 0 and
// ids are stable across parse/print/parse round trips.

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class NodeKind : std::uint8_t {
    Literal,
    AttrRef,       // object.attribute
    TemporalAttr,  // X.c or X.l (an AttrRef whose object is an event/interval)
    TemporalVar,   // bare event/interval name used as a condition
    Relation,      // X r Y with an Allen connective
    Negate,        // unary minus
    Arith,
    Compare,
    Not,
    And,
    Or,
};

/// b, a, m, o, s, d, e, f
enum class Connective : std::uint8_t { Before, After, Meets, Overlaps, Starts, During, Equals, Finishes };
inline constexpr Connective kAllConnectives[] = {Connective::Before,   Connective::After,  Connective::Meets,
                                                 Connective::Overlaps, Connective::Starts, Connective::During,
                                                 Connective::Equals,   Connective::Finishes};

char connective_letter(Connective c);
std::optional<Connective> connective_from_letter(std::string_view s);

enum class TemporalAttrKind : std::uint8_t { Count, Length };  // .c / .l

struct Node {
    NodeKind kind = NodeKind::Literal;
    ArithOp arith = ArithOp::Add;
    CompareOp compare = CompareOp::Eq;
    Connective connective = Connective::Before;
    TemporalAttrKind temporal_attr = TemporalAttrKind::Count;
    std::optional<Value> literal;
    std::string object;  // AttrRef/TemporalAttr: object or temporal name; Relation: left operand; TemporalVar: name
    std::string member;  // AttrRef: attribute; TemporalAttr: "c"/"l"; Relation: right operand
    std::vector<NodeId> children;
    SourceLoc loc;

    // filled in by resolution
    int attr = -1;       // AttrRef: global attribute index
    int temporal = -1;   // TemporalAttr/TemporalVar/Relation(left): temporal object index
    int temporal2 = -1;  // Relation(right)

    /// Structural equality; ignores source locations and resolution indices.
    bool same_shape(const Node& other) const;
};

class Expr {
public:
    Expr() = default;

    bool empty() const { return root_ == kNoNode; }
    NodeId root() const { return root_; }
    const Node& node(NodeId id) const { return nodes_.at(id); }
    Node& node(NodeId id) { return nodes_.at(id); }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }

    NodeId add(Node n);
    void set_root(NodeId id) { root_ = id; }

    /// Copy the subtree at `id` of `src` into this arena; returns the new id.
    NodeId graft(const Expr& src, NodeId id);

    bool same_shape(const Expr& other) const;

private:
    bool same_subtree(NodeId a, const Expr& other, NodeId b) const;

    std::vector<Node> nodes_;
    NodeId root_ = kNoNode;
};

/// Leaves of the logical structure, left to right.
std::vector<NodeId> condition_atoms(const Expr& e);

// ── Declarations ──────────────────────────────────────────────────────────

enum class BaseType : std::uint8_t { Number, Integer, Boolean, Symbol, String };
const char* to_string(BaseType b);

struct TypeDecl {
    std::string name;  // empty for inline attribute types
    BaseType base = BaseType::Number;
    std::optional<Range> range;
    std::vector<std::string> symbols;  // enum values
    TermTable terms;                   // linguistic terms
    SourceLoc loc;

    /// Number of admissible values; +inf for continuous or unbounded domains.
    double domain_size() const;
};

struct AttributeDecl {
    std::string name;
    std::string type_name;  // named type, or empty when `type` is inline
    TypeDecl type;          // resolved copy (inline spec or the named type)
    bool output = false;    // control output: assignments are published as control actions
    SourceLoc loc;
};

struct ObjectDecl {
    std::string name;
    std::vector<AttributeDecl> attributes;
    SourceLoc loc;
};

struct EventDecl {
    std::string name;
    Expr origin;
    SourceLoc loc;
};

struct IntervalDecl {
    std::string name;
    Expr open;
    Expr close;
    SourceLoc loc;
};

enum class RuleKind : std::uint8_t { Conventional, Periodic, Response };
const char* to_string(RuleKind k);

struct Action {
    std::string object;
    std::string member;
    Expr value;
    std::optional<double> cf;
    SourceLoc loc;
    int attr = -1;  // resolved

    double certainty() const { return cf.value_or(1.0); }
};

struct Rule {
    std::string name;
    RuleKind kind = RuleKind::Conventional;
    int period = 0;       // Periodic
    std::string trigger;  // Response
    std::optional<double> cf;
    Expr lhs;  // normalized, as written
    std::vector<Action> actions;
    SourceLoc loc;

    // filled in by resolution
    int index = -1;
    int trigger_event = -1;
    Expr static_lhs;    // top-level conjuncts without temporal atoms
    Expr temporal_lhs;  // remaining conjuncts
    int specificity = 0;

    double certainty() const { return cf.value_or(1.0); }
};

struct ConfigSetting {
    std::string key;
    std::variant<double, std::string, bool> value;
    SourceLoc loc;
};

/// Keys accepted in `config { ... }` blocks and sidecar config files.
inline constexpr std::string_view kConfigKeys[] = {"theta_fire",       "max_firings", "alpha_levels",
                                                   "singleton_epsilon", "firing_mode", "persist_conflict_set"};

enum class TemporalKind : std::uint8_t { Event, Interval };

struct AttributeInfo {
    std::string qualified;  // object.attribute
    int object = -1;
    int attribute = -1;
};

struct KnowledgeBase {
    std::string source_name;
    std::vector<TypeDecl> types;
    std::vector<ObjectDecl> objects;
    std::vector<EventDecl> events;
    std::vector<IntervalDecl> intervals;
    std::vector<Rule> rules;  // declaration order
    std::vector<ConfigSetting> config;

    // ── resolved tables (valid after resolve_kb) ──
    std::vector<AttributeInfo> attributes;  // declaration order
    bool resolved = false;

    std::optional<int> find_attribute(std::string_view qualified) const;
    const AttributeDecl& attribute(int id) const;
    const std::string& attribute_name(int id) const { return attributes.at(id).qualified; }

    /// Events occupy temporal ids [0, events.size()), intervals follow.
    int temporal_count() const { return static_cast<int>(events.size() + intervals.size()); }
    TemporalKind temporal_kind(int id) const;
    const std::string& temporal_name(int id) const;
    std::optional<int> find_temporal(std::string_view name) const;
    std::optional<int> find_rule(std::string_view name) const;
};

}  // namespace dynes
