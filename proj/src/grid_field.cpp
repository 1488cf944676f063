#include "dualcurv/grid_field.hpp"

#include <cmath>
#include <limits>

namespace dualcurv {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

GridField::GridField(std::shared_ptr<const DomainMask> mask,
                     const std::vector<double>& interior)
    : mask_(std::move(mask)) {
    const auto& geom = mask_->geometry();
    if (!mask_->has_boundary_values()) {
        throw BoundaryDataError("mask carries no boundary values");
    }
    if (interior.size() != mask_->interior_nodes().size()) {
        throw BoundaryDataError("expected " + std::to_string(mask_->interior_nodes().size()) +
                                " interior values, got " + std::to_string(interior.size()));
    }
    values_.assign(geom.size(), kNaN);
    for (int idx : mask_->boundary_nodes()) values_[idx] = mask_->boundary_value(idx);
    for (std::size_t k = 0; k < interior.size(); ++k) {
        values_[mask_->interior_nodes()[k]] = interior[k];
    }
}

GridField GridField::from_function(std::shared_ptr<const DomainMask> mask,
                                   const std::function<double(Vec2)>& f) {
    const auto& geom = mask->geometry();
    auto with_values = std::make_shared<DomainMask>(
        mask->with_boundary_values([&](Vec2 p) { return f(p); }));
    std::vector<double> interior;
    interior.reserve(with_values->interior_nodes().size());
    for (int idx : with_values->interior_nodes()) {
        interior.push_back(f(geom.node(idx % geom.nx, idx / geom.nx)));
    }
    return GridField(with_values, interior);
}

ScalarJet GridField::fd_jet(int i, int j) const {
    const auto& geom = mask_->geometry();
    if (!geom.contains(i, j) || !mask_->is_interior(i, j)) {
        throw StencilError("fd_jet requires an interior node, got (" + std::to_string(i) +
                           ", " + std::to_string(j) + ")");
    }
    const double h = geom.h;
    const double c = at(i, j);
    const double e = at(i + 1, j), w = at(i - 1, j);
    const double n = at(i, j + 1), s = at(i, j - 1);
    const double ne = at(i + 1, j + 1), nw = at(i - 1, j + 1);
    const double se = at(i + 1, j - 1), sw = at(i - 1, j - 1);

    ScalarJet jet;
    jet.point = geom.node(i, j);
    jet.u = c;
    jet.du = {(e - w) / (2.0 * h), (n - s) / (2.0 * h)};
    jet.d2u.xx = (e - 2.0 * c + w) / (h * h);
    jet.d2u.yy = (n - 2.0 * c + s) / (h * h);
    jet.d2u.xy = (ne - nw - se + sw) / (4.0 * h * h);
    return jet;
}

Vec2 GridField::face_gradient(int i, int j, int axis) const {
    const auto& geom = mask_->geometry();
    const double h = geom.h;
    if (axis == 0) {
        const double gn = (at(i + 1, j) - at(i, j)) / h;
        const double gt =
            (at(i, j + 1) + at(i + 1, j + 1) - at(i, j - 1) - at(i + 1, j - 1)) / (4.0 * h);
        return {gn, gt};
    }
    const double gn = (at(i, j + 1) - at(i, j)) / h;
    const double gt =
        (at(i + 1, j) + at(i + 1, j + 1) - at(i - 1, j) - at(i - 1, j + 1)) / (4.0 * h);
    return {gt, gn};
}

double GridField::max_face_gradient() const {
    const auto& geom = mask_->geometry();
    double worst = 0.0;
    for (int idx : mask_->interior_nodes()) {
        const int i = idx % geom.nx, j = idx / geom.nx;
        // Left/bottom faces are visited as the right/top faces of the
        // neighbouring node when that node is interior; when it is a
        // boundary node they are visited only here — cover all four.
        worst = std::max(worst, norm2(face_gradient(i, j, 0)));
        worst = std::max(worst, norm2(face_gradient(i - 1, j, 0)));
        worst = std::max(worst, norm2(face_gradient(i, j, 1)));
        worst = std::max(worst, norm2(face_gradient(i, j - 1, 1)));
    }
    return std::sqrt(worst);
}

bool GridField::admissible(double margin) const {
    return max_face_gradient() <= 1.0 - margin;
}

double GridField::max_node_gradient() const {
    const auto& geom = mask_->geometry();
    double worst = 0.0;
    for (int idx : mask_->interior_nodes()) {
        worst = std::max(worst, norm2(fd_jet(idx % geom.nx, idx / geom.nx).du));
    }
    return std::sqrt(worst);
}

double GridField::min_node_gradient() const {
    const auto& geom = mask_->geometry();
    double best = std::numeric_limits<double>::infinity();
    for (int idx : mask_->interior_nodes()) {
        best = std::min(best, norm2(fd_jet(idx % geom.nx, idx / geom.nx).du));
    }
    return std::sqrt(best);
}

GridField sample(const AnalyticSurface& surface, const DomainMask& mask, double margin) {
    const auto& geom = mask.geometry();
    for (int j = 0; j < geom.ny; ++j) {
        for (int i = 0; i < geom.nx; ++i) {
            if (mask.node_class(i, j) == NodeClass::Outside) continue;
            if (!surface.in_domain(geom.node(i, j))) {
                throw DomainError(surface.name + " is undefined at node (" +
                                  std::to_string(geom.node(i, j).x) + ", " +
                                  std::to_string(geom.node(i, j).y) + ")");
            }
        }
    }
    auto field = GridField::from_function(std::make_shared<DomainMask>(mask),
                                          [&](Vec2 p) { return surface.value(p); });
    if (!field.admissible(margin)) {
        throw NotSpacelike("sampled " + surface.name + " exceeds the spacelike margin at h = " +
                           std::to_string(geom.h));
    }
    return field;
}

} // namespace dualcurv
