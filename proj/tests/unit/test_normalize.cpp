#include <doctest.h>

#include "dynes/kb/normalize.hpp"
#include "dynes/kb/parser.hpp"
#include "dynes/kb/printer.hpp"

using namespace dynes;

namespace {

Expr lhs_of(const std::string& cond) {
    const KnowledgeBase kb =
        parse_kb("object o { a: bool; b: bool; c: bool; d: bool; }\nrule r { if: " + cond + "; then: o.a := true; }");
    return kb.rules[0].lhs;
}

/// Prefix rendering: &(a, &(b, c)).
std::string prefix(const Expr& e, NodeId id) {
    const Node& n = e.node(id);
    if (n.kind == NodeKind::And || n.kind == NodeKind::Or) {
        return std::string(n.kind == NodeKind::And ? "&" : "v") + "(" + prefix(e, n.children[0]) + ", " +
               prefix(e, n.children[1]) + ")";
    }
    if (n.kind == NodeKind::Not) return "~" + prefix(e, n.children[0]);
    return n.member;
}

}  // namespace

TEST_CASE("n-ary conjunction becomes a right-nested prefix tree") {
    const Expr e = lhs_of("o.a & o.b & o.c & o.d");
    CHECK(prefix(e, e.root()) == "&(a, &(b, &(c, d)))");
    CHECK(e.root() == 0);
}

TEST_CASE("left-nested input is re-associated") {
    const Expr e = lhs_of("((o.a & o.b) & o.c) & o.d");
    CHECK(prefix(e, e.root()) == "&(a, &(b, &(c, d)))");
}

TEST_CASE("single atom is unchanged") {
    const Expr e = lhs_of("o.a");
    CHECK(prefix(e, e.root()) == "a");
    CHECK(e.size() == 1);
}

TEST_CASE("disjunctions nest the same way") {
    const Expr e = lhs_of("o.a & (o.b v o.c)");
    CHECK(prefix(e, e.root()) == "&(a, v(b, c))");
    const Expr f = lhs_of("o.a v o.b v o.c");
    CHECK(prefix(f, f.root()) == "v(a, v(b, c))");
}

TEST_CASE("atom order and multiset are preserved; positions recorded") {
    const Expr e = lhs_of("(o.d & o.a) & ~o.c & (o.b v o.a)");
    std::vector<std::string> order;
    for (NodeId id : condition_atoms(e)) order.push_back(e.node(id).member);
    CHECK(order == std::vector<std::string>{"d", "a", "c", "b", "a"});
    const auto pos = atom_positions(e);
    REQUIRE(pos.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(pos[i].second == i);
}

TEST_CASE("normalization is idempotent and ids are pre-order") {
    const Expr e = lhs_of("o.a & o.b & (o.c v o.d v o.a)");
    const Expr again = normalize_lhs(e);
    CHECK(again.same_shape(e));
    CHECK(print_expr(again) == print_expr(e));
    for (NodeId id = 0; id < e.size(); ++id)
        for (NodeId c : e.node(id).children) CHECK(c > id);
}
