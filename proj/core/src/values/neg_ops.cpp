#include "dynes/values/neg_ops.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace dynes {

const char* to_string(ArithOp op) {
    switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/";
    }
    return "?";
}

const char* to_string(CompareOp op) {
    switch (op) {
    case CompareOp::Gt: return ">";
    case CompareOp::Lt: return "<";
    case CompareOp::Eq: return "=";
    case CompareOp::Ge: return ">=";
    case CompareOp::Le: return "<=";
    case CompareOp::Ne: return "!=";
    }
    return "?";
}

namespace {

[[noreturn]] void undefined_quotient() {
    throw NegError(NegError::Kind::UndefinedQuotient, "undefined quotient: divisor spans 0");
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

CompareOp mirrored(CompareOp op) {
    switch (op) {
    case CompareOp::Gt: return CompareOp::Lt;
    case CompareOp::Lt: return CompareOp::Gt;
    case CompareOp::Ge: return CompareOp::Le;
    case CompareOp::Le: return CompareOp::Ge;
    default: return op;
    }
}

bool crisp_holds(CompareOp op, double a, double b) {
    switch (op) {
    case CompareOp::Gt: return a > b;
    case CompareOp::Lt: return a < b;
    case CompareOp::Eq: return a == b;
    case CompareOp::Ge: return a >= b;
    case CompareOp::Le: return a <= b;
    case CompareOp::Ne: return a != b;
    }
    return false;
}

bool is_term_in(const Value& v, const FuzzyContext& ctx) {
    return v.kind() == PayloadKind::Term && ctx.terms && ctx.terms->contains(v.as_term());
}

MembershipFunction to_mf(const Value& v, const FuzzyContext& ctx) {
    return fuzzify(v, ctx).value.as_mf();
}

// ── fuzzy arithmetic ──────────────────────────────────────────────────────

MembershipFunction convex_piece(ArithOp op, const MembershipFunction& a, const MembershipFunction& b, int levels) {
    const double top = std::min(a.height(), b.height());
    std::vector<double> alphas;
    for (int k = 0; k < levels; ++k) {
        const double alpha = static_cast<double>(k) / (levels - 1);
        if (alpha <= top) alphas.push_back(alpha);
    }
    if (alphas.back() != top) alphas.push_back(top);

    std::vector<Span> cuts;
    cuts.reserve(alphas.size());
    for (double alpha : alphas) cuts.push_back(span_arith(op, *a.alpha_cut(alpha), *b.alpha_cut(alpha)));

    std::vector<Breakpoint> pts;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const double x = cuts[k].lo;
        if (!pts.empty() && x <= pts.back().x) {
            pts.back().mu = alphas[k];
            continue;
        }
        pts.push_back({x, alphas[k]});
    }
    for (std::size_t k = alphas.size(); k-- > 0;) {
        const double x = cuts[k].hi;
        if (x <= pts.back().x) continue;
        pts.push_back({x, alphas[k]});
    }
    return MembershipFunction(std::move(pts));
}

// ── possibility measures ──────────────────────────────────────────────────

double max_mu_where(const MembershipFunction& mf, auto pred) {
    double m = 0.0;
    for (const auto& p : mf.points())
        if (pred(p.x)) m = std::max(m, p.mu);
    return m;
}

double possibility_vs_point(CompareOp op, const MembershipFunction& mf, double c) {
    const double gt = std::max(mf.right_limit(c), max_mu_where(mf, [c](double x) { return x > c; }));
    const double lt = std::max(mf.left_limit(c), max_mu_where(mf, [c](double x) { return x < c; }));
    switch (op) {
    case CompareOp::Eq: return mf(c);
    case CompareOp::Ne: return std::max(gt, lt);
    case CompareOp::Gt: return gt;
    case CompareOp::Ge: return std::max(gt, mf(c));
    case CompareOp::Lt: return lt;
    case CompareOp::Le: return std::max(lt, mf(c));
    }
    return 0.0;
}

void add_segment_crossings(const MembershipFunction& f, const MembershipFunction& g, std::vector<double>& xs) {
    const auto fp = f.points();
    const auto gp = g.points();
    for (std::size_t i = 0; i + 1 < fp.size(); ++i) {
        for (std::size_t j = 0; j + 1 < gp.size(); ++j) {
            const double lo = std::max(fp[i].x, gp[j].x);
            const double hi = std::min(fp[i + 1].x, gp[j + 1].x);
            if (!(lo < hi)) continue;
            const double d0 = f(lo) - g(lo);
            const double d1 = f(hi) - g(hi);
            if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) xs.push_back(lo + d0 / (d0 - d1) * (hi - lo));
        }
    }
}

void add_level_crossings(const MembershipFunction& f, const std::vector<double>& levels, std::vector<double>& xs) {
    const auto fp = f.points();
    for (std::size_t i = 0; i + 1 < fp.size(); ++i) {
        for (double level : levels) {
            const double d0 = fp[i].mu - level;
            const double d1 = fp[i + 1].mu - level;
            if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0))
                xs.push_back(fp[i].x + d0 / (d0 - d1) * (fp[i + 1].x - fp[i].x));
        }
    }
}

// sup over x of min(A(x), B(x)) including one-sided limits at jumps
double possibility_equal(const MembershipFunction& a, const MembershipFunction& b) {
    std::vector<double> xs;
    for (const auto& p : a.points()) xs.push_back(p.x);
    for (const auto& p : b.points()) xs.push_back(p.x);
    add_segment_crossings(a, b, xs);
    double best = 0.0;
    for (double x : xs) {
        best = std::max(best, std::min(a(x), b(x)));
        best = std::max(best, std::min(a.left_limit(x), b.left_limit(x)));
        best = std::max(best, std::min(a.right_limit(x), b.right_limit(x)));
    }
    return best;
}

// sup over x > y of min(A(x), B(y))
double possibility_greater(const MembershipFunction& a, const MembershipFunction& b) {
    // G(x) = sup_{y < x} B(y), a non-decreasing envelope
    auto envelope = [&b](double x) {
        double m = b.left_limit(x);
        for (const auto& p : b.points())
            if (p.x < x) m = std::max(m, p.mu);
        return m;
    };
    std::vector<double> levels;
    for (const auto& p : b.points()) levels.push_back(p.mu);
    std::vector<double> xs;
    for (const auto& p : a.points()) xs.push_back(p.x);
    for (const auto& p : b.points()) xs.push_back(p.x);
    add_segment_crossings(a, b, xs);
    add_level_crossings(a, levels, xs);
    add_level_crossings(b, levels, xs);
    double best = 0.0;
    for (double x : xs) {
        const double g = envelope(x);
        best = std::max(best, std::min(std::max(a(x), a.right_limit(x)), g));
    }
    // A's mass strictly right of everything in B
    best = std::max(best, std::min(max_mu_where(a, [&b](double x) { return x > b.support_hi(); }), b.height()));
    return best;
}

double possibility(CompareOp op, const MembershipFunction& a, const MembershipFunction& b) {
    switch (op) {
    case CompareOp::Eq: return possibility_equal(a, b);
    case CompareOp::Ne: {
        const bool spikes = a.points().size() == 1 && b.points().size() == 1;
        if (spikes && a.points()[0].x == b.points()[0].x) return 0.0;
        return std::min(a.height(), b.height());
    }
    case CompareOp::Gt:
    case CompareOp::Ge: return possibility_greater(a, b);
    case CompareOp::Lt:
    case CompareOp::Le: return possibility_greater(b, a);
    }
    return 0.0;
}

// ── measure fractions over inexact / subdefinite operands ────────────────

struct Distribution {
    std::vector<double> points;  // equally weighted point masses
    std::optional<Span> uniform;
};

Distribution distribution_of(const Value& v) {
    switch (v.kind()) {
    case PayloadKind::Crisp: return {{v.as_crisp()}, std::nullopt};
    case PayloadKind::Inexact: {
        const auto& in = v.as_inexact();
        if (in.half_width == 0.0) return {{in.center}, std::nullopt};
        return {{}, Span{in.lo(), in.hi()}};
    }
    case PayloadKind::Range: {
        const auto& r = v.as_range();
        if (r.lo == r.hi) return {{r.lo}, std::nullopt};
        return {{}, Span{r.lo, r.hi}};
    }
    case PayloadKind::FiniteSet: return {v.as_set().members, std::nullopt};
    default: throw NegError(NegError::Kind::Incomparable, "not a numeric distribution");
    }
}

// fraction of U[lo,hi] satisfying  x op c
double uniform_vs_point(CompareOp op, Span u, double c) {
    const double w = u.hi - u.lo;
    const double cc = std::clamp(c, u.lo, u.hi);
    switch (op) {
    case CompareOp::Eq: return 0.0;
    case CompareOp::Ne: return 1.0;
    case CompareOp::Gt:
    case CompareOp::Ge: return (u.hi - cc) / w;
    case CompareOp::Lt:
    case CompareOp::Le: return (cc - u.lo) / w;
    }
    return 0.0;
}

// P(X > Y) for independent X ~ U[x], Y ~ U[y]
double uniform_greater(Span x, Span y) {
    const double wy = y.hi - y.lo;
    auto cdf = [&](double t) { return std::clamp((t - y.lo) / wy, 0.0, 1.0); };
    std::vector<double> cuts{x.lo, x.hi};
    for (double b : {y.lo, y.hi})
        if (b > x.lo && b < x.hi) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        integral += (cuts[i + 1] - cuts[i]) * (cdf(cuts[i]) + cdf(cuts[i + 1])) / 2.0;
    return integral / (x.hi - x.lo);
}

double fraction(CompareOp op, const Distribution& a, const Distribution& b) {
    if (!a.uniform && !b.uniform) {
        std::size_t hits = 0;
        for (double x : a.points)
            for (double y : b.points)
                if (crisp_holds(op, x, y)) ++hits;
        return static_cast<double>(hits) / static_cast<double>(a.points.size() * b.points.size());
    }
    if (a.uniform && !b.uniform) {
        double sum = 0.0;
        for (double y : b.points) sum += uniform_vs_point(op, *a.uniform, y);
        return sum / static_cast<double>(b.points.size());
    }
    if (!a.uniform && b.uniform) {
        double sum = 0.0;
        for (double x : a.points) sum += uniform_vs_point(mirrored(op), *b.uniform, x);
        return sum / static_cast<double>(a.points.size());
    }
    switch (op) {
    case CompareOp::Eq: return 0.0;
    case CompareOp::Ne: return 1.0;
    case CompareOp::Gt:
    case CompareOp::Ge: return uniform_greater(*a.uniform, *b.uniform);
    case CompareOp::Lt:
    case CompareOp::Le: return uniform_greater(*b.uniform, *a.uniform);
    }
    return 0.0;
}

Span hull_of(const Value& v) {
    switch (v.kind()) {
    case PayloadKind::Crisp: return {v.as_crisp(), v.as_crisp()};
    case PayloadKind::Inexact: return {v.as_inexact().lo(), v.as_inexact().hi()};
    case PayloadKind::FiniteSet: return {v.as_set().members.front(), v.as_set().members.back()};
    case PayloadKind::Range: return {v.as_range().lo, v.as_range().hi};
    default: throw NegError(NegError::Kind::NonNumeric, "non-numeric operand");
    }
}

double crisp_arith(ArithOp op, double a, double b) {
    switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div:
        if (b == 0.0) undefined_quotient();
        return a / b;
    }
    return 0.0;
}

}  // namespace

Span span_arith(ArithOp op, Span a, Span b) {
    switch (op) {
    case ArithOp::Add: return {a.lo + b.lo, a.hi + b.hi};
    case ArithOp::Sub: return {a.lo - b.hi, a.hi - b.lo};
    case ArithOp::Mul:
    case ArithOp::Div: {
        if (op == ArithOp::Div && b.lo <= 0.0 && b.hi >= 0.0) undefined_quotient();
        const double c[4] = {crisp_arith(op, a.lo, b.lo), crisp_arith(op, a.lo, b.hi), crisp_arith(op, a.hi, b.lo),
                             crisp_arith(op, a.hi, b.hi)};
        return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
    }
    }
    return a;
}

FuzzifyResult fuzzify(const Value& v, const FuzzyContext& ctx) {
    const double eps = ctx.singleton_half_width;
    const double cf = v.certainty();
    switch (v.kind()) {
    case PayloadKind::Fuzzy: return {v, true};
    case PayloadKind::Crisp: {
        const double x = v.as_crisp();
        return {Value(MembershipFunction::triangle(x - eps, x, x + eps), cf), false};
    }
    case PayloadKind::Inexact: {
        const auto& in = v.as_inexact();
        if (in.half_width == 0.0) return fuzzify(Value(in.center, cf), ctx);
        return {Value(MembershipFunction::triangle(in.lo(), in.center, in.hi()), cf), false};
    }
    case PayloadKind::Range: {
        const auto& r = v.as_range();
        if (r.lo == r.hi) return fuzzify(Value(r.lo, cf), ctx);
        return {Value(MembershipFunction::trapezoid(r.lo, r.lo, r.hi, r.hi), cf), false};
    }
    case PayloadKind::FiniteSet: {
        std::vector<MembershipFunction> spikes;
        for (double x : v.as_set().members) spikes.push_back(MembershipFunction::triangle(x - eps, x, x + eps));
        return {Value(upper_envelope(spikes), cf), false};
    }
    case PayloadKind::Term: {
        if (!ctx.terms) throw NegError(NegError::Kind::UnknownTerm, "no term table for \"" + v.as_term() + "\"");
        auto it = ctx.terms->find(v.as_term());
        if (it == ctx.terms->end()) throw NegError(NegError::Kind::UnknownTerm, "unknown term \"" + v.as_term() + "\"");
        return {Value(it->second, cf), false};
    }
    case PayloadKind::Boolean: throw NegError(NegError::Kind::NonNumeric, "cannot fuzzify a boolean");
    }
    throw NegError(NegError::Kind::NonNumeric, "cannot fuzzify value");
}

MembershipFunction extend_arith(ArithOp op, const MembershipFunction& a, const MembershipFunction& b,
                                int alpha_levels) {
    if (alpha_levels < 2) throw std::invalid_argument("alpha_levels must be >= 2");
    if (op == ArithOp::Div && b.support_lo() <= 0.0 && b.support_hi() >= 0.0) undefined_quotient();
    std::vector<MembershipFunction> pieces;
    for (const auto& ma : a.modes())
        for (const auto& mb : b.modes()) pieces.push_back(convex_piece(op, ma, mb, alpha_levels));
    if (pieces.size() == 1) return pieces.front();
    return upper_envelope(pieces);
}

namespace {

bool finite_payload(const Value& v) {
    switch (v.kind()) {
    case PayloadKind::Crisp: return std::isfinite(v.as_crisp());
    case PayloadKind::Inexact: return std::isfinite(v.as_inexact().center) && std::isfinite(v.as_inexact().half_width);
    case PayloadKind::Range: return std::isfinite(v.as_range().lo) && std::isfinite(v.as_range().hi);
    case PayloadKind::FiniteSet:
        return std::all_of(v.as_set().members.begin(), v.as_set().members.end(), [](double x) { return std::isfinite(x); });
    case PayloadKind::Fuzzy:
        return std::all_of(v.as_mf().points().begin(), v.as_mf().points().end(),
                           [](const Breakpoint& p) { return std::isfinite(p.x); });
    default: return true;
    }
}

Value arith_unchecked(ArithOp op, const Value& a, const Value& b, const FuzzyContext& ca, const FuzzyContext& cb,
                      const FuzzyParams& params) {
    const double cf = std::min(a.certainty(), b.certainty());
    const auto ka = a.kind();
    const auto kb = b.kind();
    if (ka == PayloadKind::Boolean || kb == PayloadKind::Boolean) {
        throw NegError(NegError::Kind::NonNumeric, std::string("boolean operand to ") + to_string(op));
    }
    if (ka == PayloadKind::Fuzzy || kb == PayloadKind::Fuzzy || ka == PayloadKind::Term || kb == PayloadKind::Term) {
        return Value(extend_arith(op, to_mf(a, ca), to_mf(b, cb), params.alpha_levels), cf);
    }
    const bool any_range = ka == PayloadKind::Range || kb == PayloadKind::Range;
    const bool any_set = ka == PayloadKind::FiniteSet || kb == PayloadKind::FiniteSet;
    const bool any_inexact = ka == PayloadKind::Inexact || kb == PayloadKind::Inexact;
    if (any_range || (any_set && any_inexact)) {
        const Span s = span_arith(op, hull_of(a), hull_of(b));
        return Value(Range{s.lo, s.hi}, cf);
    }
    if (any_set) {
        const auto members = [](const Value& v) {
            return v.kind() == PayloadKind::FiniteSet ? v.as_set().members : std::vector<double>{v.as_crisp()};
        };
        std::vector<double> image;
        for (double x : members(a))
            for (double y : members(b)) image.push_back(crisp_arith(op, x, y));
        return Value::finite_set(std::move(image), cf);
    }
    if (any_inexact) {
        const Span s = span_arith(op, hull_of(a), hull_of(b));
        return Value(Inexact{(s.lo + s.hi) / 2.0, (s.hi - s.lo) / 2.0}, cf);
    }
    return Value(crisp_arith(op, a.as_crisp(), b.as_crisp()), cf);
}

}  // namespace

Value neg_arith(ArithOp op, const Value& a, const Value& b, const FuzzyContext& ca, const FuzzyContext& cb,
                const FuzzyParams& params) {
    Value r = arith_unchecked(op, a, b, ca, cb, params);
    if (!finite_payload(r)) throw NegError(NegError::Kind::Overflow, std::string("non-finite result of ") + to_string(op));
    return r;
}

TruthValue neg_compare(CompareOp op, const Value& a, const Value& b, const FuzzyContext& ca, const FuzzyContext& cb) {
    const auto ka = a.kind();
    const auto kb = b.kind();
    if (ka == PayloadKind::Boolean || kb == PayloadKind::Boolean) {
        if (ka != kb || (op != CompareOp::Eq && op != CompareOp::Ne)) {
            throw NegError(NegError::Kind::Incomparable, "booleans support only = and !=");
        }
        const bool eq = a.as_bool() == b.as_bool();
        return (op == CompareOp::Eq) == eq ? TruthValue::truth() : TruthValue::falsity();
    }

    const bool term_a = is_term_in(a, ca);
    const bool term_b = is_term_in(b, cb);
    if (ka == PayloadKind::Term && kb == PayloadKind::Term && !(term_a && term_b)) {
        if (op != CompareOp::Eq && op != CompareOp::Ne) {
            throw NegError(NegError::Kind::Incomparable, "symbols support only = and !=");
        }
        const bool eq = a.as_term() == b.as_term();
        return (op == CompareOp::Eq) == eq ? TruthValue::truth() : TruthValue::falsity();
    }
    if ((ka == PayloadKind::Term && !term_a) || (kb == PayloadKind::Term && !term_b)) {
        const auto& s = ka == PayloadKind::Term && !term_a ? a.as_term() : b.as_term();
        throw NegError(NegError::Kind::Incomparable, "\"" + s + "\" has no membership function");
    }

    const bool fuzzy_a = ka == PayloadKind::Fuzzy || term_a;
    const bool fuzzy_b = kb == PayloadKind::Fuzzy || term_b;
    if (fuzzy_a || fuzzy_b) {
        if (fuzzy_a && kb == PayloadKind::Crisp) return TruthValue::of(clamp01(possibility_vs_point(op, to_mf(a, ca), b.as_crisp())));
        if (fuzzy_b && ka == PayloadKind::Crisp)
            return TruthValue::of(clamp01(possibility_vs_point(mirrored(op), to_mf(b, cb), a.as_crisp())));
        return TruthValue::of(clamp01(possibility(op, to_mf(a, ca), to_mf(b, cb))));
    }
    if (ka == PayloadKind::Crisp && kb == PayloadKind::Crisp) {
        return crisp_holds(op, a.as_crisp(), b.as_crisp()) ? TruthValue::truth() : TruthValue::falsity();
    }
    return TruthValue::of(clamp01(fraction(op, distribution_of(a), distribution_of(b))));
}

double combine_cf(double cf1, double cf2) {
    if (!(cf1 >= 0.0 && cf1 <= 1.0 && cf2 >= 0.0 && cf2 <= 1.0)) {
        throw std::invalid_argument("certainty factors must lie in [0;1]");
    }
    return clamp01(cf1 + cf2 - cf1 * cf2);
}

}  // namespace dynes
