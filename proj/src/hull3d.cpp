#include "dualcurv/hull3d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "dualcurv/errors.hpp"

namespace dualcurv {

namespace {

struct Face {
    int a, b, c;   // vertex indices, counter-clockwise seen from outside
    Vec3 normal;   // unit outward
    double offset; // <normal, vertex>
    bool alive = true;
};

Face make_face(const std::vector<Vec3>& pts, int a, int b, int c, Vec3 inside_ref) {
    Face f{a, b, c, {}, 0.0, true};
    Vec3 n = cross(pts[b] - pts[a], pts[c] - pts[a]);
    const double len = norm_r(n);
    if (len > 0.0) n = (1.0 / len) * n;
    if (dot_r(n, pts[a] - inside_ref) < 0.0) {
        std::swap(f.b, f.c);
        n = -1.0 * n;
    }
    f.normal = n;
    f.offset = dot_r(n, pts[f.a]);
    return f;
}

} // namespace

std::vector<HullFacet> convex_hull_facets(const std::vector<Vec3>& points, double eps) {
    const int n = static_cast<int>(points.size());
    if (n < 4) throw DegenerateDirection("convex hull needs at least 4 points");

    // Initial simplex: extreme pair, then the farthest point from their
    // line, then the farthest from their plane.
    int i0 = 0, i1 = 0;
    double best = -1.0;
    for (int axis = 0; axis < 3; ++axis) {
        const auto coord = [&](int k) {
            return axis == 0 ? points[k].x : axis == 1 ? points[k].y : points[k].z;
        };
        int lo = 0, hi = 0;
        for (int k = 1; k < n; ++k) {
            if (coord(k) < coord(lo)) lo = k;
            if (coord(k) > coord(hi)) hi = k;
        }
        const double spread = coord(hi) - coord(lo);
        if (spread > best) {
            best = spread;
            i0 = lo;
            i1 = hi;
        }
    }
    if (!(best > eps)) throw DegenerateDirection("hull points are coincident at tolerance");

    const Vec3 dir = points[i1] - points[i0];
    int i2 = -1;
    best = eps;
    for (int k = 0; k < n; ++k) {
        const double d = norm_r(cross(dir, points[k] - points[i0])) / norm_r(dir);
        if (d > best) {
            best = d;
            i2 = k;
        }
    }
    if (i2 < 0) throw DegenerateDirection("hull points are collinear at tolerance");

    Vec3 pn = cross(dir, points[i2] - points[i0]);
    pn = (1.0 / norm_r(pn)) * pn;
    int i3 = -1;
    best = eps;
    for (int k = 0; k < n; ++k) {
        const double d = std::abs(dot_r(pn, points[k] - points[i0]));
        if (d > best) {
            best = d;
            i3 = k;
        }
    }
    if (i3 < 0) throw DegenerateDirection("hull points are coplanar at tolerance");

    const Vec3 centroid =
        0.25 * (points[i0] + points[i1] + points[i2] + points[i3]);
    std::vector<Face> faces;
    faces.push_back(make_face(points, i0, i1, i2, centroid));
    faces.push_back(make_face(points, i0, i1, i3, centroid));
    faces.push_back(make_face(points, i0, i2, i3, centroid));
    faces.push_back(make_face(points, i1, i2, i3, centroid));

    for (int k = 0; k < n; ++k) {
        if (k == i0 || k == i1 || k == i2 || k == i3) continue;
        // Faces visible from points[k].
        std::vector<int> visible;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!faces[f].alive) continue;
            if (dot_r(faces[f].normal, points[k]) - faces[f].offset > eps) {
                visible.push_back(static_cast<int>(f));
            }
        }
        if (visible.empty()) continue;

        // Horizon: directed edges of visible faces whose reverse is not in
        // a visible face.
        std::map<std::pair<int, int>, int> edge_count;
        for (int f : visible) {
            const Face& face = faces[f];
            const std::array<std::pair<int, int>, 3> edges = {
                std::make_pair(face.a, face.b), std::make_pair(face.b, face.c),
                std::make_pair(face.c, face.a)};
            for (auto e : edges) ++edge_count[e];
        }
        std::vector<std::pair<int, int>> horizon;
        for (const auto& [e, cnt] : edge_count) {
            (void)cnt;
            if (edge_count.find({e.second, e.first}) == edge_count.end()) {
                horizon.push_back(e);
            }
        }
        for (int f : visible) faces[f].alive = false;
        for (auto [a, b] : horizon) {
            faces.push_back(make_face(points, a, b, k, centroid));
        }
    }

    std::vector<HullFacet> out;
    for (const Face& f : faces) {
        if (f.alive) out.push_back({f.normal, f.offset});
    }
    return out;
}

double signed_facet_distance(const std::vector<HullFacet>& facets, Vec3 p) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const HullFacet& f : facets) {
        worst = std::max(worst, dot_r(f.normal, p) - f.offset);
    }
    return worst;
}

int most_violated_facet(const std::vector<HullFacet>& facets, Vec3 p) {
    int arg = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < facets.size(); ++f) {
        const double d = dot_r(facets[f].normal, p) - facets[f].offset;
        if (d > worst) {
            worst = d;
            arg = static_cast<int>(f);
        }
    }
    return arg;
}

} // namespace dualcurv
