#pragma once

// Test-side reference implementations. They are deliberately naive and share
// no code with the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

/// Centroid of f over [lo, hi] by composite Simpson integration.
inline double centroid(const std::function<double(double)>& f, double lo, double hi, int n = 200000) {
    if (n % 2) ++n;
    const double h = (hi - lo) / n;
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        num += w * x * f(x);
        den += w * f(x);
    }
    return num / den;
}

/// Endpoint interval arithmetic, op in "+-*/".
inline std::pair<double, double> interval(char op, double alo, double ahi, double blo, double bhi) {
    switch (op) {
    case '+': return {alo + blo, ahi + bhi};
    case '-': return {alo - bhi, ahi - blo};
    default: {
        std::vector<double> c;
        for (double x : {alo, ahi})
            for (double y : {blo, bhi}) c.push_back(op == '*' ? x * y : x / y);
        return {*std::min_element(c.begin(), c.end()), *std::max_element(c.begin(), c.end())};
    }
    }
}

/// Closed-form triangle on [l, r] with peak p evaluated at x.
inline double triangle(double l, double p, double r, double x) {
    if (x < l || x > r) return 0.0;
    if (x == p) return 1.0;
    return x < p ? (x - l) / (p - l) : (r - x) / (r - p);
}

}  // namespace oracle
