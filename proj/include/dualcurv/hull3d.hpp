#pragma once

#include <vector>

#include "dualcurv/geometry.hpp"

namespace dualcurv {

/// Oriented facet plane of a convex hull: unit outward normal n and offset
/// d with <n, x> <= d for hull points (up to the build tolerance).
struct HullFacet {
    Vec3 normal;
    double offset = 0.0;
};

/// Convex hull of a full-dimensional 3-D point set, reduced to its facet
/// planes. Tolerance-based incremental construction (no exact predicates):
/// points within `eps` of the current hull are treated as inside.
/// Throws DegenerateDirection if the set is not full-dimensional at eps.
std::vector<HullFacet> convex_hull_facets(const std::vector<Vec3>& points, double eps);

/// max over facets of <n, p> - d: positive outside the hull (Euclidean
/// distance to the most violated facet plane), negative inside (distance
/// to the nearest facet plane, negated).
double signed_facet_distance(const std::vector<HullFacet>& facets, Vec3 p);

/// Index of the facet attaining signed_facet_distance.
int most_violated_facet(const std::vector<HullFacet>& facets, Vec3 p);

} // namespace dualcurv
