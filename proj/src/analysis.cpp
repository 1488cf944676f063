#include "dualcurv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "dualcurv/curvature.hpp"
#include "dualcurv/edt.hpp"
#include "dualcurv/hull3d.hpp"
#include "dualcurv/solver.hpp"

namespace dualcurv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec3 surface_point(const GridField& field, int idx) {
    const auto& geom = field.geometry();
    const Vec2 p = geom.node(idx % geom.nx, idx / geom.nx);
    return {p.x, p.y, field.at(idx)};
}

} // namespace

double inscribed_width(const GridField& field, const std::vector<int>& members) {
    if (members.empty()) return 0.0;
    const auto& geom = field.geometry();
    std::vector<char> flag(geom.size(), 0);
    for (int idx : members) flag[idx] = 1;
    const std::vector<double> d2 = squared_distance_to_complement(flag, geom.nx, geom.ny);
    double best = 0.0;
    for (int idx : members) best = std::max(best, d2[idx]);
    // Node-to-node distances overshoot the true boundary by up to one cell
    // in total; half-cell correction per side recenters the estimate.
    return 2.0 * geom.h * std::sqrt(best) + geom.h;
}

RegionStar region_star(const GridField& field) {
    const auto& geom = field.geometry();
    RegionStar region;
    region.inf_abs_h_l = kInf;
    region.inf_abs_h_r = kInf;
    for (int idx : field.mask().interior_nodes()) {
        const ScalarJet jet = field.fd_jet(idx % geom.nx, idx / geom.nx);
        const double tol_grad = 10.0 * geom.h * jet.d2u.max_abs();
        if (norm(jet.du) > tol_grad) {
            region.members.push_back(idx);
            const CurvatureSample c = invariants(jet);
            region.inf_abs_h_l = std::min(region.inf_abs_h_l, std::abs(c.h_l));
            region.inf_abs_h_r = std::min(region.inf_abs_h_r, std::abs(c.h_r));
        }
    }
    region.empty = region.members.empty();
    region.width = inscribed_width(field, region.members);
    return region;
}

void require_solution(const GridField& field, std::optional<double> threshold) {
    const double gate = threshold.value_or(Tolerances::solution_threshold(field.h()));
    const Residual r = residual(field);
    if (r.norm_inf > gate) {
        throw NotASolution("equation residual " + std::to_string(r.norm_inf) +
                           " exceeds the solution threshold " + std::to_string(gate));
    }
}

WidthVerdict check_width_bound(const GridField& field, std::optional<double> threshold) {
    require_solution(field, threshold);
    WidthVerdict verdict;
    verdict.region = region_star(field);
    const double h = field.h();
    verdict.outcome.name = "width_bound";
    verdict.outcome.lhs = verdict.region.width;
    verdict.outcome.tolerance = Tolerances::tol_width(h);
    const double inf_hl = verdict.region.inf_abs_h_l;
    verdict.outcome.rhs = inf_hl > 0.0 ? 1.0 / (std::sqrt(2.0) * inf_hl) : kInf;
    verdict.rhs_heinz =
        verdict.region.inf_abs_h_r > 0.0 ? 2.0 / verdict.region.inf_abs_h_r : kInf;
    verdict.outcome.holds =
        verdict.outcome.lhs <= verdict.outcome.rhs + verdict.outcome.tolerance;
    return verdict;
}

CheckOutcome check_kr_nonpositive(const GridField& field, std::optional<double> threshold) {
    require_solution(field, threshold);
    const auto& geom = field.geometry();
    const double tol = Tolerances::tol_curvature(field.h());

    CheckOutcome outcome;
    outcome.name = "kr_nonpositive";
    outcome.tolerance = tol;
    outcome.rhs = tol;
    double worst = -kInf;
    bool zero_case_ok = true;
    int zero_case_node = -1;
    double zero_case_hr = 0.0;
    for (int idx : field.mask().interior_nodes()) {
        const CurvatureSample c = invariants(field.fd_jet(idx % geom.nx, idx / geom.nx));
        if (c.k_r > worst) {
            worst = c.k_r;
            outcome.worst_node = idx;
        }
        // Flat directions come in pairs: K_R at FD zero forces H_R there too.
        if (std::abs(c.k_r) <= tol && std::abs(c.h_r) > tol && zero_case_ok) {
            zero_case_ok = false;
            zero_case_node = idx;
            zero_case_hr = std::abs(c.h_r);
        }
    }
    outcome.lhs = worst;
    outcome.holds = worst <= tol && zero_case_ok;
    if (!zero_case_ok) {
        outcome.worst_node = zero_case_node;
        outcome.lhs = zero_case_hr;
    }
    return outcome;
}

HullVerdict hull_containment(const GridField& field) {
    const auto& mask = field.mask();
    if (mask.boundary_nodes().empty()) {
        throw MaskError("hull containment needs a nonempty boundary");
    }
    std::vector<Vec3> boundary;
    boundary.reserve(mask.boundary_nodes().size());
    double scale = 0.0;
    for (int idx : mask.boundary_nodes()) {
        boundary.push_back(surface_point(field, idx));
        scale = std::max({scale, std::abs(boundary.back().x), std::abs(boundary.back().y),
                          std::abs(boundary.back().z)});
    }

    HullVerdict verdict;
    verdict.tolerance = std::max(Tolerances::tol_hull(field.h()), 1e-12 * scale);

    // Coplanar boundary data (affine traces): compare against the plane.
    Vec3 centroid{0, 0, 0};
    for (const Vec3& p : boundary) centroid = centroid + p;
    centroid = (1.0 / static_cast<double>(boundary.size())) * centroid;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Vec3& p : boundary) {
        const Eigen::Vector3d d(p.x - centroid.x, p.y - centroid.y, p.z - centroid.z);
        cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    const Eigen::Vector3d nvec = eig.eigenvectors().col(0);
    const Vec3 plane_normal{nvec[0], nvec[1], nvec[2]};
    double coplanarity = 0.0;
    for (const Vec3& p : boundary) {
        coplanarity = std::max(coplanarity, std::abs(dot_r(plane_normal, p - centroid)));
    }

    if (coplanarity <= std::max(1e-9 * std::max(scale, 1.0), 0.5 * verdict.tolerance)) {
        verdict.planar = true;
        double worst = -kInf;
        for (int idx : mask.interior_nodes()) {
            const double d = dot_r(plane_normal, surface_point(field, idx) - centroid);
            if (std::abs(d) > worst) {
                worst = std::abs(d);
                verdict.worst_node = idx;
                verdict.violation_direction = d >= 0.0 ? plane_normal : -1.0 * plane_normal;
            }
        }
        verdict.worst_violation = worst;
        verdict.contained = worst <= verdict.tolerance;
        return verdict;
    }

    const std::vector<HullFacet> facets =
        convex_hull_facets(boundary, 1e-12 * std::max(scale, 1.0));
    double worst = -kInf;
    for (int idx : mask.interior_nodes()) {
        const Vec3 p = surface_point(field, idx);
        const double d = signed_facet_distance(facets, p);
        if (d > worst) {
            worst = d;
            verdict.worst_node = idx;
            verdict.violation_direction = facets[most_violated_facet(facets, p)].normal;
        }
    }
    verdict.worst_violation = worst;
    verdict.contained = worst <= verdict.tolerance;
    return verdict;
}

std::optional<EllipticPoint> find_elliptic_point(const GridField& field) {
    const HullVerdict hull = hull_containment(field);
    if (hull.contained) return std::nullopt;

    const auto& mask = field.mask();
    const auto& geom = field.geometry();
    const Vec3 pstar = surface_point(field, hull.worst_node);
    const Vec3 d = hull.violation_direction; // unit, points out of the hull

    // Ball through pstar centered at q = pstar - t d contains the boundary
    // hull strictly once t > max |x - pstar|^2 / (2 gap): then the
    // f-maximizer over the patch cannot be a hull point.
    Vec3 centroid{0, 0, 0};
    double circumradius = 0.0, reach = 0.0;
    for (int idx : mask.boundary_nodes()) {
        const Vec3 x = surface_point(field, idx);
        centroid = centroid + x;
        reach = std::max(reach, dot_r(x - pstar, x - pstar));
    }
    centroid = (1.0 / static_cast<double>(mask.boundary_nodes().size())) * centroid;
    for (int idx : mask.boundary_nodes()) {
        const Vec3 x = surface_point(field, idx);
        circumradius = std::max(circumradius, norm_r(x - centroid));
    }
    const double gap = hull.worst_violation;
    const double t = std::max(2.0 * circumradius, reach / gap); // = 2 * (reach/(2 gap))
    const Vec3 q = pstar - t * d;

    double best = -kInf;
    int best_node = -1;
    for (int idx : mask.interior_nodes()) {
        const Vec3 p = surface_point(field, idx);
        const double f = dot_r(p - q, p - q);
        if (f > best) {
            best = f;
            best_node = idx;
        }
    }
    for (int idx : mask.boundary_nodes()) {
        const Vec3 p = surface_point(field, idx);
        if (dot_r(p - q, p - q) > best) {
            throw TheoremViolation("distance maximizer lies on the boundary; "
                                   "separation construction failed");
        }
    }

    EllipticPoint out;
    out.node = best_node;
    out.point = geom.node(best_node % geom.nx, best_node / geom.nx);
    out.k_r = invariants(field.fd_jet(best_node % geom.nx, best_node / geom.nx)).k_r;
    if (!(out.k_r > Tolerances::tol_curvature(geom.h))) {
        throw TheoremViolation("no elliptic point certified at the distance maximizer (K_R = " +
                               std::to_string(out.k_r) + ")");
    }
    return out;
}

LevelCurveVerdict check_levelcurve_inequality(const GridField& field,
                                              std::optional<double> threshold) {
    require_solution(field, threshold);
    const auto& geom = field.geometry();
    const double h = geom.h;
    const double floor = Tolerances::curvature_floor(h);

    LevelCurveVerdict verdict;
    verdict.outcome.name = "levelcurve_inequality";
    verdict.outcome.tolerance = Tolerances::tol_ratio;
    verdict.outcome.rhs = 1.0;

    const RegionStar region = region_star(field);
    for (int idx : region.members) {
        const ScalarJet jet = field.fd_jet(idx % geom.nx, idx / geom.nx);
        const CurvatureSample c = invariants(jet);
        const double k = level_curve_curvature(jet);
        const double ident = std::abs(2.0 * c.h_l - level_curve_factor(norm(jet.du)) * k);
        if (ident > verdict.identity_error) verdict.identity_error = ident;
        if (std::abs(k) <= floor) continue; // unresolvably straight level curve
        ++verdict.nodes_tested;
        const double ratio = 2.0 * std::sqrt(2.0) * std::abs(c.h_l) / std::abs(k);
        if (ratio > verdict.worst_ratio) {
            verdict.worst_ratio = ratio;
            verdict.outcome.worst_node = idx;
        }
    }
    verdict.outcome.lhs = verdict.worst_ratio;
    verdict.outcome.holds = verdict.worst_ratio <= 1.0 + Tolerances::tol_ratio &&
                            verdict.identity_error <= Tolerances::tol_identity(h);
    return verdict;
}

std::vector<CheckOutcome> verify_solution(const GridField& field,
                                          std::optional<double> threshold) {
    require_solution(field, threshold);
    std::vector<CheckOutcome> checks;

    checks.push_back(check_kr_nonpositive(field, threshold));

    const HullVerdict hull = hull_containment(field);
    CheckOutcome hull_outcome;
    hull_outcome.name = "hull_containment";
    hull_outcome.holds = hull.contained;
    hull_outcome.lhs = hull.worst_violation;
    hull_outcome.rhs = 0.0;
    hull_outcome.tolerance = hull.tolerance;
    hull_outcome.worst_node = hull.worst_node;
    checks.push_back(hull_outcome);

    checks.push_back(check_width_bound(field, threshold).outcome);
    checks.push_back(check_levelcurve_inequality(field, threshold).outcome);
    return checks;
}

} // namespace dualcurv
