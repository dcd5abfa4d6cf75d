#pragma once

#include "dynes/kb/ast.hpp"

namespace dynes {

/// Rewrites every n-ary (or nested same-operator) conjunction and
/// disjunction into a right-nested binary chain, keeping the left-to-right
/// order of operands: a & b & c & d  ->  &(a, &(b, &(c, d))).
/// Node ids of the result are assigned in pre-order.
Expr normalize_lhs(const Expr& expr);

/// Left-to-right position of each condition atom of a normalized tree,
/// keyed by node id.
std::vector<std::pair<NodeId, int>> atom_positions(const Expr& normalized);

}  // namespace dynes
