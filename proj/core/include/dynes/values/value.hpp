#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dynes/values/membership.hpp"

namespace dynes {

/// Number known only up to a symmetric error: center ± half_width.
struct Inexact {
    double center = 0.0;
    double half_width = 0.0;
    double lo() const { return center - half_width; }
    double hi() const { return center + half_width; }
    friend bool operator==(const Inexact&, const Inexact&) = default;
};

/// Subdefinite value: one of finitely many numbers.
struct FiniteSet {
    std::vector<double> members;  // ascending, unique, non-empty
    friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
};

/// Subdefinite value: somewhere in the closed range [lo, hi].
struct Range {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Range&, const Range&) = default;
};

using Payload = std::variant<double, std::string, bool, Inexact, FiniteSet, Range, MembershipFunction>;

enum class PayloadKind { Crisp, Term, Boolean, Inexact, FiniteSet, Range, Fuzzy };

const char* to_string(PayloadKind kind);

/// A datum annotated with NEG-factors: the payload carries inaccuracy,
/// subdefiniteness or fuzziness; certainty is tracked alongside.
class Value {
public:
    Value() : Value(0.0) {}
    Value(double crisp, double certainty = 1.0);
    Value(std::string term, double certainty = 1.0);
    Value(const char* term, double certainty = 1.0) : Value(std::string(term), certainty) {}
    Value(bool flag, double certainty = 1.0);
    Value(Inexact inexact, double certainty = 1.0);
    Value(FiniteSet set, double certainty = 1.0);
    Value(Range range, double certainty = 1.0);
    Value(MembershipFunction mf, double certainty = 1.0);

    static Value finite_set(std::vector<double> members, double certainty = 1.0);

    const Payload& payload() const { return payload_; }
    PayloadKind kind() const { return static_cast<PayloadKind>(payload_.index()); }
    double certainty() const { return certainty_; }
    Value with_certainty(double certainty) const;

    bool is_numeric() const;  // anything arithmetic can consume directly
    bool is_fuzzy() const { return kind() == PayloadKind::Fuzzy; }

    double as_crisp() const { return std::get<double>(payload_); }
    const std::string& as_term() const { return std::get<std::string>(payload_); }
    bool as_bool() const { return std::get<bool>(payload_); }
    const Inexact& as_inexact() const { return std::get<Inexact>(payload_); }
    const FiniteSet& as_set() const { return std::get<FiniteSet>(payload_); }
    const Range& as_range() const { return std::get<Range>(payload_); }
    const MembershipFunction& as_mf() const { return std::get<MembershipFunction>(payload_); }

    bool same_payload(const Value& other) const { return payload_ == other.payload_; }

    /// KRL literal form, e.g. `inexact(10, 2)` or `"high"`.
    std::string to_string() const;

    friend bool operator==(const Value&, const Value&) = default;

private:
    void check_certainty() const;

    Payload payload_;
    double certainty_ = 1.0;
};

/// Linguistic term -> membership function mapping of one type.
using TermTable = std::map<std::string, MembershipFunction, std::less<>>;

}  // namespace dynes
