#pragma once

#include <utility>
#include <vector>

#include "skewfold/poly.hpp"
#include "skewfold/rational.hpp"

namespace skewfold {

using ExponentPair = std::pair<Rational, Rational>;

// Newton polygon in the convention used here: the convex hull of the union of
// lower-left quadrants D(i,j) = {x <= i, y <= j} over the monomials of q.
// Vertices run with n strictly increasing and m strictly decreasing; T_k is
// the y-intercept of the edge through vertices k and k+1.
struct NewtonPolygon {
    std::vector<ExponentPair> vertices;   // (n_k, m_k), k = 1..s
    std::vector<Rational> intercepts;     // T_1..T_{s-1}, strictly increasing
    std::vector<Rational> edge_weights;   // (n_{k+1}-n_k)/(m_k-m_{k+1}), strictly decreasing
    std::vector<ExponentPair> support;    // every distinct exponent pair of the input

    int s() const { return static_cast<int>(vertices.size()); }

    // Exact containment of a point in the hull.
    bool contains(const ExponentPair& pt) const;
};

// Extreme points of conv(U D(i,j)). Exponents may be rational or negative
// (transformed objects); input polynomials have integer exponents.
NewtonPolygon newton_polygon(const Poly& q);

// Same construction from a bare exponent list.
NewtonPolygon newton_polygon_of_points(std::vector<ExponentPair> pts);

// T_k for 1 <= k <= s-1.
Rational intercept(const NewtonPolygon& P, int k);

}  // namespace skewfold
