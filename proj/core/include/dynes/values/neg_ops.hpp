#pragma once

#include <stdexcept>
#include <string>

#include "dynes/values/truth.hpp"
#include "dynes/values/value.hpp"

namespace dynes {

enum class ArithOp { Add, Sub, Mul, Div };
enum class CompareOp { Gt, Lt, Eq, Ge, Le, Ne };

const char* to_string(ArithOp op);
const char* to_string(CompareOp op);

/// Failure of NEG-factor arithmetic or comparison.
class NegError : public std::runtime_error {
public:
    enum class Kind { UndefinedQuotient, UnknownTerm, NonNumeric, Incomparable, Overflow };
    NegError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// What an operand knows about its own type when it has to be fuzzified.
struct FuzzyContext {
    const TermTable* terms = nullptr;
    /// Half-width of the narrow triangle standing in for a crisp number.
    double singleton_half_width = 1e-6;
};

struct FuzzyParams {
    int alpha_levels = 11;  // mu = 0, 1/(L-1), ..., 1
};

struct FuzzifyResult {
    Value value;
    bool already_fuzzy = false;  // input was returned unchanged
};

/// Membership-function form of a crisp, inexact, subdefinite or linguistic
/// value. Certainty is carried through. Throws NegError for unknown terms
/// and booleans.
FuzzifyResult fuzzify(const Value& v, const FuzzyContext& ctx);

/// Arithmetic over NEG-annotated values. Certainty of the result is the
/// minimum of the operands'. Linguistic terms are fuzzified through their
/// contexts; any fuzzy operand routes the operation through alpha-cut
/// interval arithmetic at `params.alpha_levels` levels. Results with an
/// infinite or NaN bound throw NegError::Overflow.
Value neg_arith(ArithOp op, const Value& a, const Value& b, const FuzzyContext& ca = {},
                const FuzzyContext& cb = {}, const FuzzyParams& params = {});

/// Graded comparison. Crisp operands give 0 or 1; inexact and subdefinite
/// operands give the satisfying fraction (by measure, or by count for
/// finite sets); fuzzy operands give the possibility of the predicate.
/// Certainty does not enter the result.
TruthValue neg_compare(CompareOp op, const Value& a, const Value& b, const FuzzyContext& ca = {},
                       const FuzzyContext& cb = {});

/// Alpha-cut extension of `op` to membership functions. Multimodal inputs
/// are handled mode by mode and the results united.
MembershipFunction extend_arith(ArithOp op, const MembershipFunction& a, const MembershipFunction& b,
                                int alpha_levels);

/// Interval arithmetic on closed spans. Division by a span containing 0
/// throws NegError::UndefinedQuotient.
Span span_arith(ArithOp op, Span a, Span b);

/// Probabilistic sum for parallel derivations of one fact.
double combine_cf(double cf1, double cf2);

}  // namespace dynes
