#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dynes {

struct Breakpoint {
    double x = 0.0;
    double mu = 0.0;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Closed real interval [lo, hi], lo <= hi.
struct Span {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Span&, const Span&) = default;
};

/// Piecewise-linear membership function. Between the first and last
/// breakpoint the grade is interpolated linearly; outside it is 0, so a
/// terminal breakpoint with mu > 0 is a shoulder with a jump at the edge.
class MembershipFunction {
public:
    /// Throws std::invalid_argument unless x is strictly ascending, every mu
    /// lies in [0;1] and at least one mu is positive.
    explicit MembershipFunction(std::vector<Breakpoint> points);

    /// Triangle (left, peak, right). left == peak or peak == right gives a
    /// right-angled triangle; all three equal gives a single spike point.
    static MembershipFunction triangle(double left, double peak, double right);
    /// Trapezoid with plateau [b, c].
    static MembershipFunction trapezoid(double a, double b, double c, double d);

    std::span<const Breakpoint> points() const { return points_; }
    double operator()(double x) const;
    /// Limits from the left/right; they differ from operator() only at the
    /// outer breakpoints.
    double left_limit(double x) const;
    double right_limit(double x) const;

    double height() const;
    double support_lo() const { return points_.front().x; }
    double support_hi() const { return points_.back().x; }

    /// Components separated by interior zero-grade breakpoints. Each mode
    /// keeps its bounding zero breakpoints; all-zero runs are dropped.
    std::vector<MembershipFunction> modes() const;

    /// Convex hull of {x : mu(x) >= alpha}; alpha == 0 yields the support.
    /// Empty when alpha exceeds the height.
    std::optional<Span> alpha_cut(double alpha) const;

    std::string to_string() const;

    friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;

private:
    std::vector<Breakpoint> points_;
};

/// Pointwise maximum of several membership functions.
MembershipFunction upper_envelope(std::span<const MembershipFunction> fns);

struct Defuzzified {
    std::vector<double> modes;  // centroid per mode, ascending
    double primary = 0.0;       // centroid of the highest mode; ties -> smallest centroid
};

/// Centroid defuzzification, one crisp value per mode.
Defuzzified defuzzify(const MembershipFunction& mf);

/// Centroid of a single mode (no splitting).
double centroid(const MembershipFunction& mf);

}  // namespace dynes
