#include "dynes/values/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "detail/number_format.hpp"

namespace dynes {

namespace {

double lerp_at(const Breakpoint& a, const Breakpoint& b, double x) {
    if (x == a.x) return a.mu;
    if (x == b.x) return b.mu;
    return a.mu + (b.mu - a.mu) * ((x - a.x) / (b.x - a.x));
}

// Drop zero-grade breakpoints that carry no shape information.
std::vector<Breakpoint> trim_zero_runs(const std::vector<Breakpoint>& pts) {
    std::vector<Breakpoint> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool zero = pts[i].mu == 0.0;
        const bool prev_zero = i == 0 || pts[i - 1].mu == 0.0;
        const bool next_zero = i + 1 == pts.size() || pts[i + 1].mu == 0.0;
        if (zero && prev_zero && next_zero) continue;
        out.push_back(pts[i]);
    }
    return out;
}

MembershipFunction max_of_two(const MembershipFunction& f, const MembershipFunction& g) {
    std::vector<double> xs;
    for (const auto& p : f.points()) xs.push_back(p.x);
    for (const auto& p : g.points()) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<double> crossings;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double a = xs[i];
        const double b = xs[i + 1];
        const double d0 = f.right_limit(a) - g.right_limit(a);
        const double d1 = f.left_limit(b) - g.left_limit(b);
        if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
            const double t = d0 / (d0 - d1);
            const double x = a + t * (b - a);
            if (x > a && x < b) crossings.push_back(x);
        }
    }
    xs.insert(xs.end(), crossings.begin(), crossings.end());
    std::sort(xs.begin(), xs.end());

    std::vector<Breakpoint> pts;
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const double v = std::max(f(x), g(x));
        const double l = std::max(f.left_limit(x), g.left_limit(x));
        const double r = std::max(f.right_limit(x), g.right_limit(x));
        if (i > 0 && l != v) pts.push_back({std::nextafter(x, -inf), l});
        pts.push_back({x, v});
        if (i + 1 < xs.size() && r != v) pts.push_back({std::nextafter(x, inf), r});
    }
    // nextafter may collide with a neighbour in pathological inputs
    std::vector<Breakpoint> strict;
    for (const auto& p : pts) {
        if (!strict.empty() && p.x <= strict.back().x) {
            strict.back().mu = std::max(strict.back().mu, p.mu);
            continue;
        }
        strict.push_back(p);
    }
    return MembershipFunction(trim_zero_runs(strict));
}

}  // namespace

MembershipFunction::MembershipFunction(std::vector<Breakpoint> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("membership function needs at least one breakpoint");
    bool positive = false;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.x)) throw std::invalid_argument("membership breakpoint x must be finite");
        if (!(p.mu >= 0.0 && p.mu <= 1.0)) throw std::invalid_argument("membership grade outside [0;1]");
        if (i > 0 && !(p.x > points_[i - 1].x)) {
            throw std::invalid_argument("membership breakpoints must be strictly ascending in x");
        }
        positive = positive || p.mu > 0.0;
    }
    if (!positive) throw std::invalid_argument("membership function is zero everywhere");
}

MembershipFunction MembershipFunction::triangle(double left, double peak, double right) {
    if (!(left <= peak && peak <= right)) throw std::invalid_argument("triangle needs left <= peak <= right");
    std::vector<Breakpoint> pts;
    if (left < peak) pts.push_back({left, 0.0});
    pts.push_back({peak, 1.0});
    if (peak < right) pts.push_back({right, 0.0});
    return MembershipFunction(std::move(pts));
}

MembershipFunction MembershipFunction::trapezoid(double a, double b, double c, double d) {
    if (!(a <= b && b <= c && c <= d)) throw std::invalid_argument("trapezoid needs a <= b <= c <= d");
    std::vector<Breakpoint> pts;
    if (a < b) pts.push_back({a, 0.0});
    pts.push_back({b, 1.0});
    if (b < c) pts.push_back({c, 1.0});
    if (c < d) pts.push_back({d, 0.0});
    return MembershipFunction(std::move(pts));
}

double MembershipFunction::operator()(double x) const {
    if (x < points_.front().x || x > points_.back().x) return 0.0;
    auto it = std::lower_bound(points_.begin(), points_.end(), x,
                               [](const Breakpoint& p, double v) { return p.x < v; });
    if (it->x == x) return it->mu;
    return lerp_at(*(it - 1), *it, x);
}

double MembershipFunction::left_limit(double x) const {
    if (x <= points_.front().x || x > points_.back().x) return 0.0;
    return (*this)(x);
}

double MembershipFunction::right_limit(double x) const {
    if (x < points_.front().x || x >= points_.back().x) return 0.0;
    return (*this)(x);
}

double MembershipFunction::height() const {
    double h = 0.0;
    for (const auto& p : points_) h = std::max(h, p.mu);
    return h;
}

std::vector<MembershipFunction> MembershipFunction::modes() const {
    std::vector<MembershipFunction> out;
    const std::size_t n = points_.size();
    std::size_t start = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i < n && points_[i].mu != 0.0) continue;
        const std::size_t end = i == n ? n - 1 : i;
        std::vector<Breakpoint> run(points_.begin() + static_cast<std::ptrdiff_t>(start),
                                    points_.begin() + static_cast<std::ptrdiff_t>(end) + 1);
        const bool positive = std::any_of(run.begin(), run.end(), [](const Breakpoint& p) { return p.mu > 0.0; });
        if (positive) out.emplace_back(std::move(run));
        start = end;
    }
    return out;
}

std::optional<Span> MembershipFunction::alpha_cut(double alpha) const {
    const std::size_t n = points_.size();
    if (alpha <= 0.0) {
        std::size_t first = 0;
        while (points_[first].mu == 0.0) ++first;
        std::size_t last = n - 1;
        while (points_[last].mu == 0.0) --last;
        return Span{first > 0 ? points_[first - 1].x : points_[first].x,
                    last + 1 < n ? points_[last + 1].x : points_[last].x};
    }
    if (alpha > height()) return std::nullopt;

    double lo = points_.front().x;
    if (points_.front().mu < alpha) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const auto& a = points_[i];
            const auto& b = points_[i + 1];
            if (b.mu >= alpha) {
                lo = a.x + (alpha - a.mu) / (b.mu - a.mu) * (b.x - a.x);
                if (b.mu == alpha) lo = b.x;
                break;
            }
        }
    }
    double hi = points_.back().x;
    if (points_.back().mu < alpha) {
        for (std::size_t i = n - 1; i > 0; --i) {
            const auto& b = points_[i];
            const auto& a = points_[i - 1];
            if (a.mu >= alpha) {
                hi = b.x - (alpha - b.mu) / (a.mu - b.mu) * (b.x - a.x);
                if (a.mu == alpha) hi = a.x;
                break;
            }
        }
    }
    return Span{lo, hi};
}

std::string MembershipFunction::to_string() const {
    std::string s = "mf(";
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i) s += ", ";
        s += "(" + detail::format_number(points_[i].x) + ", " + detail::format_number(points_[i].mu) + ")";
    }
    return s + ")";
}

MembershipFunction upper_envelope(std::span<const MembershipFunction> fns) {
    if (fns.empty()) throw std::invalid_argument("upper_envelope of nothing");
    MembershipFunction acc = fns.front();
    for (std::size_t i = 1; i < fns.size(); ++i) acc = max_of_two(acc, fns[i]);
    return acc;
}

double centroid(const MembershipFunction& mf) {
    const auto pts = mf.points();
    double area = 0.0;
    double weighted = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto& a = pts[i];
        const auto& b = pts[i + 1];
        const double sum = a.mu + b.mu;
        if (sum == 0.0) continue;
        const double w = b.x - a.x;
        const double seg_area = w * sum / 2.0;
        const double seg_centroid = a.x + w * (a.mu + 2.0 * b.mu) / (3.0 * sum);
        area += seg_area;
        weighted += seg_area * seg_centroid;
    }
    if (area > 0.0) return weighted / area;

    // zero-area spike: average the peak positions
    const double h = mf.height();
    double sx = 0.0;
    int count = 0;
    for (const auto& p : pts) {
        if (p.mu == h) {
            sx += p.x;
            ++count;
        }
    }
    return sx / count;
}

Defuzzified defuzzify(const MembershipFunction& mf) {
    struct ModeInfo {
        double centroid;
        double peak;
    };
    std::vector<ModeInfo> infos;
    for (const auto& mode : mf.modes()) infos.push_back({centroid(mode), mode.height()});
    std::sort(infos.begin(), infos.end(), [](const ModeInfo& a, const ModeInfo& b) { return a.centroid < b.centroid; });

    Defuzzified out;
    const ModeInfo* best = nullptr;
    for (const auto& info : infos) {
        out.modes.push_back(info.centroid);
        if (!best || info.peak > best->peak) best = &info;
    }
    out.primary = best->centroid;
    return out;
}

}  // namespace dynes
