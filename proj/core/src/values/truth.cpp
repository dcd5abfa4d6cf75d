#include "dynes/values/truth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/number_format.hpp"

namespace dynes {

TruthValue TruthValue::of(double degree) {
    if (!(degree >= 0.0 && degree <= 1.0)) {
        throw std::domain_error("truth degree outside [0;1]: " + detail::format_number(degree));
    }
    return TruthValue{degree, false};
}

double TruthValue::degree() const {
    if (ne_) throw std::logic_error("degree() on NE truth value");
    return degree_;
}

std::string TruthValue::to_string() const {
    return ne_ ? std::string("NE") : detail::format_number(degree_);
}

TruthValue truth_and(TruthValue a, TruthValue b) {
    if ((a.known() && a.degree() == 0.0) || (b.known() && b.degree() == 0.0)) return TruthValue::falsity();
    if (a.is_ne() || b.is_ne()) return TruthValue::ne();
    return TruthValue::of(std::min(a.degree(), b.degree()));
}

TruthValue truth_or(TruthValue a, TruthValue b) {
    if ((a.known() && a.degree() == 1.0) || (b.known() && b.degree() == 1.0)) return TruthValue::truth();
    if (a.is_ne() || b.is_ne()) return TruthValue::ne();
    return TruthValue::of(std::max(a.degree(), b.degree()));
}

TruthValue truth_not(TruthValue a) {
    if (a.is_ne()) return a;
    return TruthValue::of(1.0 - a.degree());
}

TruthValue truth_combine(TruthOp op, TruthValue lhs, std::optional<TruthValue> rhs) {
    switch (op) {
    case TruthOp::Not:
        if (rhs) throw std::invalid_argument("not takes one operand");
        return truth_not(lhs);
    case TruthOp::And:
    case TruthOp::Or:
        if (!rhs) throw std::invalid_argument("binary connective needs two operands");
        return op == TruthOp::And ? truth_and(lhs, *rhs) : truth_or(lhs, *rhs);
    }
    throw std::invalid_argument("unknown truth connective");
}

}  // namespace dynes
