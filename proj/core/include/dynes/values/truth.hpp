#pragma once

#include <optional>
#include <string>

namespace dynes {

/// Element of [0;1] extended with NE ("not evaluated yet"). NE marks an
/// expression whose required facts or occurrences are absent.
class TruthValue {
public:
    constexpr TruthValue() = default;  // NE

    static constexpr TruthValue ne() { return TruthValue{}; }
    /// Throws std::domain_error outside [0;1] (NaN included).
    static TruthValue of(double degree);
    static constexpr TruthValue truth() { return TruthValue{1.0, false}; }
    static constexpr TruthValue falsity() { return TruthValue{0.0, false}; }

    constexpr bool is_ne() const { return ne_; }
    constexpr bool known() const { return !ne_; }
    /// Degree of a known value. Calling this on NE throws std::logic_error.
    double degree() const;

    /// True iff known and degree >= threshold. NE never satisfies.
    constexpr bool satisfies(double threshold) const { return !ne_ && degree_ >= threshold; }

    std::string to_string() const;

    friend constexpr bool operator==(const TruthValue& a, const TruthValue& b) {
        return a.ne_ == b.ne_ && (a.ne_ || a.degree_ == b.degree_);
    }

private:
    constexpr TruthValue(double d, bool ne) : degree_(d), ne_(ne) {}

    double degree_ = 0.0;
    bool ne_ = true;
};

enum class TruthOp { And, Or, Not };

// Strong-Kleene style connectives over [0;1] ∪ {NE}:
//   and: 0 dominates, then NE, else min
//   or:  1 dominates, then NE, else max
//   not: NE stays NE, else 1 - x
TruthValue truth_and(TruthValue a, TruthValue b);
TruthValue truth_or(TruthValue a, TruthValue b);
TruthValue truth_not(TruthValue a);

/// Dispatching form; `rhs` must be present iff `op` is binary
/// (std::invalid_argument otherwise).
TruthValue truth_combine(TruthOp op, TruthValue lhs, std::optional<TruthValue> rhs = std::nullopt);

}  // namespace dynes
