#pragma once

// Exact norm of an expression over at most two cube coordinates.
//
// A tuple on {1,2} is a measure on the segment w in [0,1] (w = share of
// coordinate 1 in the l1 mass of each functional), with sign patterns chosen
// per atom. The constraints read int w <= 1 and int (1 - w) <= 1, so the value
// is max_w Gc(w) / max(w, 1 - w), with Gc the concave envelope of
// G(w) = max_sigma |f(s1 w, s2 (1 - w))|. The quotient is monotone along each
// linear piece of Gc, so only hull vertices and w = 1/2 matter.
//
// G is built with a small piecewise-linear calculus that never calls eval.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fbl/expr.hpp"

namespace oracle {

struct Pwl {
    std::vector<double> w;  // strictly increasing, first 0, last 1
    std::vector<double> v;

    double at(double x) const {
        auto it = std::upper_bound(w.begin(), w.end(), x);
        if (it == w.begin()) return v.front();
        if (it == w.end()) return v.back();
        const auto i = static_cast<std::size_t>(it - w.begin());
        const double t = (x - w[i - 1]) / (w[i] - w[i - 1]);
        return v[i - 1] + t * (v[i] - v[i - 1]);
    }
};

inline Pwl linear(double v0, double v1) { return {{0.0, 1.0}, {v0, v1}}; }

inline std::vector<double> merged_breaks(const Pwl& a, const Pwl& b) {
    std::vector<double> out;
    std::merge(a.w.begin(), a.w.end(), b.w.begin(), b.w.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Pointwise op of two PWL functions, inserting the sign changes of a - b
/// (for max/min) so the result stays piecewise linear on its breakpoints.
template <typename Op>
Pwl combine(const Pwl& a, const Pwl& b, Op op, bool split_at_crossings) {
    const auto breaks = merged_breaks(a, b);
    Pwl out;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const double x = breaks[i];
        if (i > 0 && split_at_crossings) {
            const double x0 = breaks[i - 1];
            const double d0 = a.at(x0) - b.at(x0);
            const double d1 = a.at(x) - b.at(x);
            if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
                const double c = x0 + (x - x0) * d0 / (d0 - d1);
                if (c > x0 && c < x) {
                    out.w.push_back(c);
                    out.v.push_back(op(a.at(c), b.at(c)));
                }
            }
        }
        out.w.push_back(x);
        out.v.push_back(op(a.at(x), b.at(x)));
    }
    return out;
}

inline Pwl scaled(const Pwl& a, double c) {
    Pwl out = a;
    for (auto& v : out.v) v *= c;
    return out;
}

inline Pwl absolute(const Pwl& a) {
    const Pwl zero = linear(0.0, 0.0);
    return combine(a, zero, [](double x, double) { return std::fabs(x); }, true);
}

inline Pwl restrict_to_line(const fbl::LatticeExpr& e, double s1, double s2) {
    using fbl::NodeKind;
    switch (e.kind()) {
        case NodeKind::generator: {
            const auto k = e.generator().index();
            if (k == 1) return linear(0.0, s1);
            if (k == 2) return linear(s2, 0.0);
            throw std::invalid_argument("oracle handles generators 1 and 2 only");
        }
        case NodeKind::scale: return scaled(restrict_to_line(e.child(), s1, s2), e.coefficient());
        case NodeKind::add:
            return combine(restrict_to_line(e.left(), s1, s2), restrict_to_line(e.right(), s1, s2),
                           [](double x, double y) { return x + y; }, false);
        case NodeKind::sup:
            return combine(restrict_to_line(e.left(), s1, s2), restrict_to_line(e.right(), s1, s2),
                           [](double x, double y) { return std::max(x, y); }, true);
        case NodeKind::inf:
            return combine(restrict_to_line(e.left(), s1, s2), restrict_to_line(e.right(), s1, s2),
                           [](double x, double y) { return std::min(x, y); }, true);
        case NodeKind::abs: return absolute(restrict_to_line(e.child(), s1, s2));
    }
    throw std::logic_error("unknown node");
}

/// G(w) = max over the four sign patterns of |f| on the segment.
inline Pwl segment_profile(const fbl::LatticeExpr& e) {
    Pwl g = linear(0.0, 0.0);
    for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0})
            g = combine(g, absolute(restrict_to_line(e, s1, s2)), [](double x, double y) { return std::max(x, y); },
                        true);
    return g;
}

/// Upper concave envelope through the breakpoints (monotone chain).
inline Pwl concave_envelope(const Pwl& g) {
    Pwl hull;
    for (std::size_t i = 0; i < g.w.size(); ++i) {
        while (hull.w.size() >= 2) {
            const auto n = hull.w.size();
            const double cross = (hull.w[n - 1] - hull.w[n - 2]) * (g.v[i] - hull.v[n - 2]) -
                                 (hull.v[n - 1] - hull.v[n - 2]) * (g.w[i] - hull.w[n - 2]);
            if (cross >= 0.0) {
                hull.w.pop_back();
                hull.v.pop_back();
            } else {
                break;
            }
        }
        hull.w.push_back(g.w[i]);
        hull.v.push_back(g.v[i]);
    }
    return hull;
}

inline double two_point_norm(const fbl::LatticeExpr& e) {
    const Pwl hull = concave_envelope(segment_profile(e));
    double best = hull.at(0.5) / 0.5;
    for (std::size_t i = 0; i < hull.w.size(); ++i)
        best = std::max(best, hull.v[i] / std::max(hull.w[i], 1.0 - hull.w[i]));
    return best;
}

}  // namespace oracle
