#include "dynes/values/value.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/number_format.hpp"

namespace dynes {

using detail::format_number;

const char* to_string(PayloadKind kind) {
    switch (kind) {
    case PayloadKind::Crisp: return "crisp";
    case PayloadKind::Term: return "term";
    case PayloadKind::Boolean: return "boolean";
    case PayloadKind::Inexact: return "inexact";
    case PayloadKind::FiniteSet: return "set";
    case PayloadKind::Range: return "range";
    case PayloadKind::Fuzzy: return "fuzzy";
    }
    return "?";
}

Value::Value(double crisp, double certainty) : payload_(crisp), certainty_(certainty) { check_certainty(); }
Value::Value(std::string term, double certainty) : payload_(std::move(term)), certainty_(certainty) {
    check_certainty();
}
Value::Value(bool flag, double certainty) : payload_(flag), certainty_(certainty) { check_certainty(); }

Value::Value(Inexact inexact, double certainty) : payload_(inexact), certainty_(certainty) {
    if (!(inexact.half_width >= 0.0)) throw std::invalid_argument("inexact half-width must be >= 0");
    check_certainty();
}

Value::Value(FiniteSet set, double certainty) : certainty_(certainty) {
    if (set.members.empty()) throw std::invalid_argument("admissible set must be non-empty");
    std::sort(set.members.begin(), set.members.end());
    set.members.erase(std::unique(set.members.begin(), set.members.end()), set.members.end());
    payload_ = std::move(set);
    check_certainty();
}

Value::Value(Range range, double certainty) : payload_(range), certainty_(certainty) {
    if (!(range.lo <= range.hi)) throw std::invalid_argument("admissible range needs lo <= hi");
    check_certainty();
}

Value::Value(MembershipFunction mf, double certainty) : payload_(std::move(mf)), certainty_(certainty) {
    check_certainty();
}

Value Value::finite_set(std::vector<double> members, double certainty) {
    return Value(FiniteSet{std::move(members)}, certainty);
}

Value Value::with_certainty(double certainty) const {
    Value v = *this;
    v.certainty_ = certainty;
    v.check_certainty();
    return v;
}

bool Value::is_numeric() const {
    const auto k = kind();
    return k != PayloadKind::Term && k != PayloadKind::Boolean;
}

void Value::check_certainty() const {
    if (!(certainty_ >= 0.0 && certainty_ <= 1.0)) throw std::invalid_argument("certainty outside [0;1]");
}

std::string Value::to_string() const {
    struct Printer {
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(const std::string& s) const { return "\"" + s + "\""; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const Inexact& v) const {
            return "inexact(" + format_number(v.center) + ", " + format_number(v.half_width) + ")";
        }
        std::string operator()(const FiniteSet& v) const {
            std::string s = "{";
            for (std::size_t i = 0; i < v.members.size(); ++i) {
                if (i) s += ", ";
                s += format_number(v.members[i]);
            }
            return s + "}";
        }
        std::string operator()(const Range& v) const {
            return "range(" + format_number(v.lo) + ", " + format_number(v.hi) + ")";
        }
        std::string operator()(const MembershipFunction& mf) const { return mf.to_string(); }
    };
    return std::visit(Printer{}, payload_);
}

}  // namespace dynes
