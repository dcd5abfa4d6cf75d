#include "dynes/kb/normalize.hpp"

namespace dynes {

namespace {

void flatten(const Expr& src, NodeId id, NodeKind kind, std::vector<NodeId>& out) {
    const Node& n = src.node(id);
    if (n.kind == kind) {
        for (NodeId c : n.children) flatten(src, c, kind, out);
    } else {
        out.push_back(id);
    }
}

NodeId rebuild(const Expr& src, NodeId id, Expr& out);

NodeId chain(const Expr& src, const Node& proto, const std::vector<NodeId>& operands, std::size_t from, Expr& out) {
    if (from + 1 == operands.size()) return rebuild(src, operands[from], out);
    Node n = proto;
    n.children.clear();
    const NodeId self = out.add(std::move(n));
    const NodeId left = rebuild(src, operands[from], out);
    const NodeId right = chain(src, proto, operands, from + 1, out);
    out.node(self).children = {left, right};
    return self;
}

NodeId rebuild(const Expr& src, NodeId id, Expr& out) {
    const Node& n = src.node(id);
    if (n.kind == NodeKind::And || n.kind == NodeKind::Or) {
        std::vector<NodeId> operands;
        flatten(src, id, n.kind, operands);
        return chain(src, n, operands, 0, out);
    }
    Node copy = n;
    copy.children.clear();
    const NodeId self = out.add(std::move(copy));
    std::vector<NodeId> kids;
    for (NodeId c : n.children) kids.push_back(rebuild(src, c, out));
    out.node(self).children = std::move(kids);
    return self;
}

}  // namespace

Expr normalize_lhs(const Expr& expr) {
    Expr out;
    if (expr.empty()) return out;
    out.set_root(rebuild(expr, expr.root(), out));
    return out;
}

std::vector<std::pair<NodeId, int>> atom_positions(const Expr& normalized) {
    std::vector<std::pair<NodeId, int>> out;
    int pos = 0;
    for (NodeId id : condition_atoms(normalized)) out.emplace_back(id, pos++);
    return out;
}

}  // namespace dynes
