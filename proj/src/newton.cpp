#include "skewfold/newton.hpp"

#include <algorithm>

namespace skewfold {

namespace {

Rational cross(const ExponentPair& a, const ExponentPair& b, const ExponentPair& c) {
    return (b.first - a.first) * (c.second - a.second) -
           (b.second - a.second) * (c.first - a.first);
}

}  // namespace

bool NewtonPolygon::contains(const ExponentPair& pt) const {
    if (vertices.empty()) return false;
    if (pt.second > vertices.front().second) return false;  // above the top ray
    if (pt.first > vertices.back().first) return false;     // right of the bottom ray
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
        // below-left of each edge line: cross(v_k, v_{k+1}, pt) >= 0 means pt is
        // on the hull side (edges turn clockwise around the region).
        if (cross(vertices[k], vertices[k + 1], pt) > Rational(0)) return false;
    }
    return true;
}

NewtonPolygon newton_polygon_of_points(std::vector<ExponentPair> pts) {
    if (pts.empty()) throw hypothesis_error("newton_polygon of an empty polynomial");

    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    NewtonPolygon P;
    P.support = pts;

    // Staircase maxima: sort by (i asc, j desc), keep the top point of each
    // i-column, then sweep right-to-left dropping anything dominated.
    std::sort(pts.begin(), pts.end(), [](const ExponentPair& a, const ExponentPair& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
    });
    std::vector<ExponentPair> columns;
    for (const auto& pt : pts)
        if (columns.empty() || columns.back().first != pt.first) columns.push_back(pt);
    std::vector<ExponentPair> stair;
    Rational best_j;
    for (auto it = columns.rbegin(); it != columns.rend(); ++it) {
        if (stair.empty() || it->second > best_j) {
            stair.push_back(*it);
            best_j = it->second;
        }
    }
    std::reverse(stair.begin(), stair.end());

    // Monotone chain, strict turns only: collinear points are not vertices.
    std::vector<ExponentPair> hull;
    for (const auto& pt : stair) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) >= Rational(0))
            hull.pop_back();
        hull.push_back(pt);
    }
    P.vertices = hull;

    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const auto& [n0, m0] = hull[k];
        const auto& [n1, m1] = hull[k + 1];
        P.edge_weights.push_back((n1 - n0) / (m0 - m1));
        P.intercepts.push_back(m0 + n0 * (m0 - m1) / (n1 - n0));
    }

    // Construction invariants, checked exactly.
    for (std::size_t k = 0; k + 1 < P.vertices.size(); ++k) {
        if (!(P.vertices[k].first < P.vertices[k + 1].first) ||
            !(P.vertices[k].second > P.vertices[k + 1].second))
            throw error("newton polygon vertices not strictly monotone");
    }
    for (std::size_t k = 0; k + 1 < P.intercepts.size(); ++k)
        if (!(P.intercepts[k] < P.intercepts[k + 1]))
            throw error("newton polygon intercepts not strictly increasing");
    for (std::size_t k = 0; k + 1 < P.edge_weights.size(); ++k)
        if (!(P.edge_weights[k] > P.edge_weights[k + 1]))
            throw error("newton polygon edge weights not strictly decreasing");
    for (const auto& pt : P.support)
        if (!P.contains(pt)) throw error("support point escapes its own hull");

    return P;
}

NewtonPolygon newton_polygon(const Poly& q) {
    if (q.empty()) throw hypothesis_error("newton_polygon of the zero polynomial");
    std::vector<ExponentPair> pts;
    pts.reserve(q.size());
    for (const auto& t : q.terms()) pts.emplace_back(t.ez, t.ew);
    return newton_polygon_of_points(std::move(pts));
}

Rational intercept(const NewtonPolygon& P, int k) {
    if (k < 1 || k > P.s() - 1)
        throw hypothesis_error("intercept index " + std::to_string(k) + " out of range");
    return P.intercepts[static_cast<std::size_t>(k - 1)];
}

}  // namespace skewfold
