#include "dualcurv/mask.hpp"

#include <cmath>
#include <limits>
#include <queue>

namespace dualcurv {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

DomainMask DomainMask::build(const GridGeometry& geom,
                             const std::function<bool(Vec2)>& inside) {
    if (geom.nx < 8 || geom.ny < 8) {
        throw MaskError("grid must be at least 8x8, got " + std::to_string(geom.nx) +
                        "x" + std::to_string(geom.ny));
    }
    if (!(geom.h > 0.0)) {
        throw MaskError("grid spacing must be positive");
    }

    const int n = geom.size();
    std::vector<char> in(n, 0);
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            in[geom.index(i, j)] = inside(geom.node(i, j)) ? 1 : 0;
        }
    }

    DomainMask mask;
    mask.geom_ = geom;
    mask.classes_.assign(n, NodeClass::Outside);
    mask.boundary_values_.assign(n, kNaN);

    // Interior: inside and the whole 3x3 ring inside (and on the grid).
    // The ring requirement is what makes the four-corner mixed stencil and
    // the face-tangential averages defined at every interior node.
    for (int j = 1; j + 1 < geom.ny; ++j) {
        for (int i = 1; i + 1 < geom.nx; ++i) {
            bool ok = true;
            for (int dj = -1; dj <= 1 && ok; ++dj) {
                for (int di = -1; di <= 1 && ok; ++di) {
                    ok = in[geom.index(i + di, j + dj)] != 0;
                }
            }
            if (ok) mask.classes_[geom.index(i, j)] = NodeClass::Interior;
        }
    }

    // Boundary: non-interior nodes touching an interior node.
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            if (mask.classes_[geom.index(i, j)] == NodeClass::Interior) continue;
            bool touches = false;
            for (int dj = -1; dj <= 1 && !touches; ++dj) {
                for (int di = -1; di <= 1 && !touches; ++di) {
                    if (di == 0 && dj == 0) continue;
                    if (!geom.contains(i + di, j + dj)) continue;
                    touches = mask.classes_[geom.index(i + di, j + dj)] == NodeClass::Interior;
                }
            }
            if (touches) mask.classes_[geom.index(i, j)] = NodeClass::Boundary;
        }
    }

    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            const int idx = geom.index(i, j);
            if (mask.classes_[idx] == NodeClass::Interior) mask.interior_.push_back(idx);
            if (mask.classes_[idx] == NodeClass::Boundary) mask.boundary_.push_back(idx);
        }
    }
    if (mask.interior_.empty()) {
        throw MaskError("mask has no interior nodes at h = " + std::to_string(geom.h));
    }

    // Interior must be one 4-edge-connected piece.
    std::vector<char> seen(n, 0);
    std::queue<int> bfs;
    bfs.push(mask.interior_.front());
    seen[mask.interior_.front()] = 1;
    int reached = 0;
    while (!bfs.empty()) {
        const int idx = bfs.front();
        bfs.pop();
        ++reached;
        const int i = idx % geom.nx, j = idx / geom.nx;
        const int nbr[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
        for (auto& [ni, nj] : nbr) {
            if (!geom.contains(ni, nj)) continue;
            const int nidx = geom.index(ni, nj);
            if (!seen[nidx] && mask.classes_[nidx] == NodeClass::Interior) {
                seen[nidx] = 1;
                bfs.push(nidx);
            }
        }
    }
    if (reached != static_cast<int>(mask.interior_.size())) {
        throw MaskError("interior is not edge-connected (" + std::to_string(reached) + " of " +
                        std::to_string(mask.interior_.size()) + " nodes reachable)");
    }
    return mask;
}

DomainMask DomainMask::with_boundary_values(const std::function<double(Vec2)>& g) const {
    DomainMask out = *this;
    for (int idx : boundary_) {
        const int i = idx % geom_.nx, j = idx / geom_.nx;
        out.boundary_values_[idx] = g(geom_.node(i, j));
    }
    out.has_values_ = true;
    return out;
}

DomainMask DomainMask::with_boundary_values(const std::vector<double>& per_boundary_node) const {
    if (per_boundary_node.size() != boundary_.size()) {
        throw BoundaryDataError("expected " + std::to_string(boundary_.size()) +
                                " boundary values, got " +
                                std::to_string(per_boundary_node.size()));
    }
    DomainMask out = *this;
    for (std::size_t k = 0; k < boundary_.size(); ++k) {
        out.boundary_values_[boundary_[k]] = per_boundary_node[k];
    }
    out.has_values_ = true;
    return out;
}

std::function<bool(Vec2)> inside_disc(Vec2 center, double radius) {
    return [=](Vec2 p) { return norm(p - center) < radius; };
}

std::function<bool(Vec2)> inside_annulus(Vec2 center, double r_inner, double r_outer) {
    return [=](Vec2 p) {
        const double r = norm(p - center);
        return r > r_inner && r < r_outer;
    };
}

std::function<bool(Vec2)> inside_rectangle(Vec2 lo, Vec2 hi) {
    return [=](Vec2 p) { return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y; };
}

std::function<bool(Vec2)> inside_sector(Vec2 center, double r_inner, double r_outer,
                                        double theta0, double theta1) {
    return [=](Vec2 p) {
        const Vec2 d = p - center;
        const double r = norm(d);
        if (r <= r_inner || r >= r_outer) return false;
        const double th = std::atan2(d.y, d.x);
        return th > theta0 && th < theta1;
    };
}

GridGeometry aligned_geometry(Vec2 lo, Vec2 hi, double h) {
    const int i0 = static_cast<int>(std::floor(lo.x / h)) - 2;
    const int j0 = static_cast<int>(std::floor(lo.y / h)) - 2;
    const int i1 = static_cast<int>(std::ceil(hi.x / h)) + 2;
    const int j1 = static_cast<int>(std::ceil(hi.y / h)) + 2;
    GridGeometry geom;
    geom.origin = {i0 * h, j0 * h};
    geom.h = h;
    geom.nx = i1 - i0 + 1;
    geom.ny = j1 - j0 + 1;
    return geom;
}

} // namespace dualcurv
