#pragma once

#include <functional>

#include "dynes/kb/ast.hpp"
#include "dynes/temporal/event_flow.hpp"
#include "dynes/values/truth.hpp"

namespace dynes {

/// Allen connective between two occurrences at tick `now`; an open
/// interval ends provisionally at `now`. Events are points. Returns 1 or
/// 0. Throws std::invalid_argument for a (kind, connective, kind) triple
/// the grammar forbids.
TruthValue relation_holds(Connective rel, const Occurrence& x, TemporalKind xk, const Occurrence& y, TemporalKind yk,
                          int now);

/// Same, with a missing operand occurrence giving NE.
TruthValue relation_holds(Connective rel, const Occurrence* x, TemporalKind xk, const Occurrence* y, TemporalKind yk,
                          int now);

/// Truth of non-temporal atoms that appear inside a temporal fragment.
using AtomEval = std::function<TruthValue(const Expr&, NodeId)>;

/// Evaluates a (resolved) temporal formula against the interpretation.
/// Relations compare the most recent occurrence of each operand; .c/.l
/// comparisons give 1/0, or NE when .l is undefined; a bare event is true
/// at the tick of its latest origin, a bare interval while it is open.
/// Static atoms are delegated to `atoms`; std::logic_error if none given.
TruthValue eval_temporal_formula(const Expr& f, const EventFlow& flow, int now, const AtomEval& atoms = {});
TruthValue eval_temporal_formula(const Expr& f, NodeId node, const EventFlow& flow, int now,
                                 const AtomEval& atoms = {});

}  // namespace dynes
