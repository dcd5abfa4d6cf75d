#pragma once

#include <vector>

#include "dynes/kb/ast.hpp"
#include "dynes/kb/parser.hpp"

namespace dynes {

/// One diagnostic per violated invariant, in source order per section.
/// Empty iff the knowledge base can be resolved and executed.
std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb);

/// Fills the resolved tables and indices, splits rule antecedents into their
/// static and temporal fragments and computes rule specificity.
/// Precondition: validate_kb(kb) is empty (std::logic_error otherwise).
void resolve_kb(KnowledgeBase& kb);

/// Which (operand kind, connective) combinations the temporal grammar allows:
/// interval-interval: all eight; event-event: b, a, e; event-interval:
/// b, a, s, d, f. Interval-event is never allowed.
bool relation_allowed(TemporalKind lhs, Connective c, TemporalKind rhs);

}  // namespace dynes
