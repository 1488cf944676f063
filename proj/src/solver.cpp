#include "dualcurv/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include "dualcurv/curvature.hpp"

namespace dualcurv {

namespace {

/// Combined face flux F(g) = g * s(|g|^2) with
/// s(m) = (1-m)^(-1/2) - (1+m)^(-1/2) (Lorentzian minus Riemannian weight).
inline Vec2 face_flux(Vec2 g) {
    const double m = norm2(g);
    const double s = 1.0 / std::sqrt(1.0 - m) - 1.0 / std::sqrt(1.0 + m);
    return s * g;
}

/// dF/dg = s(m) I + 2 s'(m) g g^T with
/// s'(m) = (1/2)(1-m)^(-3/2) + (1/2)(1+m)^(-3/2).
inline void face_flux_jacobian(Vec2 g, double out[2][2]) {
    const double m = norm2(g);
    const double s = 1.0 / std::sqrt(1.0 - m) - 1.0 / std::sqrt(1.0 + m);
    const double sp = 0.5 * std::pow(1.0 - m, -1.5) + 0.5 * std::pow(1.0 + m, -1.5);
    out[0][0] = s + 2.0 * sp * g.x * g.x;
    out[0][1] = 2.0 * sp * g.x * g.y;
    out[1][0] = out[0][1];
    out[1][1] = s + 2.0 * sp * g.y * g.y;
}

void check_admissible(const GridField& field, double margin) {
    const double worst = field.max_face_gradient();
    if (!(worst <= 1.0 - margin)) {
        throw NotSpacelike("face gradient " + std::to_string(worst) +
                           " breaches the spacelike margin");
    }
}

} // namespace

SolverParams SolverParams::from_key_values(const std::map<std::string, std::string>& kv,
                                           SolverParams base) {
    for (const auto& [key, value] : kv) {
        try {
            if (key == "tol_res") base.tol_res = std::stod(value);
            else if (key == "max_iter") base.max_iter = std::stoi(value);
            else if (key == "delta_space") base.delta_space = std::stod(value);
            else if (key == "mu0") base.mu0 = std::stod(value);
            else throw BoundaryDataError("unknown solver option '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw BoundaryDataError("bad value '" + value + "' for solver option '" + key + "'");
        }
    }
    return base;
}

Residual residual(const GridField& field, double margin) {
    check_admissible(field, margin);
    const auto& mask = field.mask();
    const auto& geom = field.geometry();
    const double h = geom.h;

    Residual r;
    r.values.reserve(mask.interior_nodes().size());
    for (int idx : mask.interior_nodes()) {
        const int i = idx % geom.nx, j = idx / geom.nx;
        const double fe = face_flux(field.face_gradient(i, j, 0)).x;
        const double fw = face_flux(field.face_gradient(i - 1, j, 0)).x;
        const double fn = face_flux(field.face_gradient(i, j, 1)).y;
        const double fs = face_flux(field.face_gradient(i, j - 1, 1)).y;
        const double val = (fe - fw + fn - fs) / h;
        r.values.push_back(val);
        r.norm_inf = std::max(r.norm_inf, std::abs(val));
        r.norm_2 += val * val;
    }
    r.norm_2 = std::sqrt(r.norm_2);
    return r;
}

Eigen::SparseMatrix<double> jacobian(const GridField& field, double margin) {
    check_admissible(field, margin);
    const auto& mask = field.mask();
    const auto& geom = field.geometry();
    const double h = geom.h;
    const int n = static_cast<int>(mask.interior_nodes().size());

    // Interior grid index -> unknown index.
    std::vector<int> unknown(geom.size(), -1);
    for (int k = 0; k < n; ++k) unknown[mask.interior_nodes()[k]] = k;

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) * 9);
    const auto emit = [&](int row, int i, int j, double w) {
        const int col = unknown[geom.index(i, j)];
        if (col >= 0) triplets.emplace_back(row, col, w);
    };

    for (int k = 0; k < n; ++k) {
        const int idx = mask.interior_nodes()[k];
        const int i = idx % geom.nx, j = idx / geom.nx;
        double dF[2][2];

        // r_k = (Fx(i,j) - Fx(i-1,j) + Fy(i,j) - Fy(i,j-1)) / h, with
        // Fx(a,b) the x-component of the flux at the x-face of (a,b).
        struct Face {
            int fi, fj, axis;
            double sign;
        };
        const Face faces[4] = {{i, j, 0, +1.0}, {i - 1, j, 0, -1.0},
                               {i, j, 1, +1.0}, {i, j - 1, 1, -1.0}};
        for (const Face& f : faces) {
            const Vec2 g = field.face_gradient(f.fi, f.fj, f.axis);
            face_flux_jacobian(g, dF);
            const double a_nn = f.sign * dF[f.axis][f.axis] / (h * h);
            const double a_nt = f.sign * dF[f.axis][1 - f.axis] / (4.0 * h * h);
            if (f.axis == 0) {
                emit(k, f.fi + 1, f.fj, a_nn);
                emit(k, f.fi, f.fj, -a_nn);
                emit(k, f.fi, f.fj + 1, a_nt);
                emit(k, f.fi + 1, f.fj + 1, a_nt);
                emit(k, f.fi, f.fj - 1, -a_nt);
                emit(k, f.fi + 1, f.fj - 1, -a_nt);
            } else {
                emit(k, f.fi, f.fj + 1, a_nn);
                emit(k, f.fi, f.fj, -a_nn);
                emit(k, f.fi + 1, f.fj, a_nt);
                emit(k, f.fi + 1, f.fj + 1, a_nt);
                emit(k, f.fi - 1, f.fj, -a_nt);
                emit(k, f.fi - 1, f.fj + 1, -a_nt);
            }
        }
    }

    Eigen::SparseMatrix<double> J(n, n);
    J.setFromTriplets(triplets.begin(), triplets.end());
    return J;
}

GridField affine_fit_initial(const DomainMask& mask, double margin) {
    if (!mask.has_boundary_values()) {
        throw BoundaryDataError("mask carries no boundary values");
    }
    const auto& geom = mask.geometry();
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    for (int idx : mask.boundary_nodes()) {
        const Vec2 p = geom.node(idx % geom.nx, idx / geom.nx);
        const Eigen::Vector3d row(1.0, p.x, p.y);
        ata += row * row.transpose();
        atb += row * mask.boundary_value(idx);
    }
    const Eigen::Vector3d coef = ata.ldlt().solve(atb);
    const double slope = std::hypot(coef[1], coef[2]);
    if (!(slope <= 1.0 - margin)) {
        throw BoundaryDataError("affine fit of boundary data has slope " +
                                std::to_string(slope) +
                                "; supply an admissible initial field");
    }
    std::vector<double> interior;
    interior.reserve(mask.interior_nodes().size());
    for (int idx : mask.interior_nodes()) {
        const Vec2 p = geom.node(idx % geom.nx, idx / geom.nx);
        interior.push_back(coef[0] + coef[1] * p.x + coef[2] * p.y);
    }
    return GridField(std::make_shared<DomainMask>(mask), interior);
}

namespace {

/// Five-point discrete harmonic extension of the boundary values. Used as
/// the fallback initial field: unlike the affine fit it matches the trace
/// at the ring, so strongly non-affine data does not create steep face
/// gradients across the first cell.
GridField harmonic_extension(const DomainMask& mask) {
    const auto& geom = mask.geometry();
    const auto& interior = mask.interior_nodes();
    const int n = static_cast<int>(interior.size());
    std::vector<int> unknown(geom.size(), -1);
    for (int k = 0; k < n; ++k) unknown[interior[k]] = k;

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) * 5);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < n; ++k) {
        const int idx = interior[k];
        const int i = idx % geom.nx, j = idx / geom.nx;
        triplets.emplace_back(k, k, 4.0);
        const int nbrs[4] = {geom.index(i + 1, j), geom.index(i - 1, j),
                             geom.index(i, j + 1), geom.index(i, j - 1)};
        for (int nidx : nbrs) {
            if (unknown[nidx] >= 0) triplets.emplace_back(k, unknown[nidx], -1.0);
            else b[k] += mask.boundary_value(nidx);
        }
    }
    Eigen::SparseMatrix<double> lap(n, n);
    lap.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(lap);
    const Eigen::VectorXd x = lu.solve(b);
    return GridField(std::make_shared<DomainMask>(mask),
                     std::vector<double>(x.data(), x.data() + n));
}

GridField default_initial(const DomainMask& mask, double margin) {
    GridField fit = affine_fit_initial(mask, margin);
    if (fit.admissible(margin)) return fit;
    GridField harm = harmonic_extension(mask);
    if (harm.admissible(margin)) return harm;
    throw BoundaryDataError(
        "neither the affine fit nor the harmonic extension of the boundary data is "
        "spacelike-admissible; supply an initial field");
}

} // namespace

std::pair<GridField, SolveReport> solve_dirichlet(const DomainMask& mask,
                                                  std::optional<GridField> init,
                                                  const SolverParams& params) {
    GridField u = init ? std::move(*init) : default_initial(mask, params.delta_space);
    if (!u.admissible(params.delta_space)) {
        throw NotSpacelike("initial field breaches the spacelike margin");
    }
    const auto& geom = u.geometry();
    const auto& interior = u.mask().interior_nodes();
    const int n = static_cast<int>(interior.size());

    SolveReport report;
    Residual r = residual(u, params.delta_space);
    report.residual_history.push_back(r.norm_inf);
    report.tolerance = params.tol_res * (1.0 + r.norm_inf);

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    bool pattern_analyzed = false;

    while (r.norm_inf > report.tolerance && report.iterations < params.max_iter) {
        // Tikhonov shift when some node sits in the parabolic regime.
        double min_gap = std::numeric_limits<double>::infinity();
        for (int idx : interior) {
            const ScalarJet jet = u.fd_jet(idx % geom.nx, idx / geom.nx);
            const double m = norm2(jet.du);
            const double diff = 1.0 / std::sqrt(1.0 - m) - 1.0 / std::sqrt(1.0 + m);
            min_gap = std::min(min_gap, diff * diff);
        }
        Eigen::SparseMatrix<double> J = jacobian(u, params.delta_space);
        if (min_gap < params.gap_min) {
            const double mu = params.mu0 * r.norm_inf;
            Eigen::SparseMatrix<double> shift(n, n);
            shift.setIdentity();
            J += mu * shift;
            ++report.shift_events;
        }

        Eigen::VectorXd rhs(n);
        for (int k = 0; k < n; ++k) rhs[k] = -r.values[k];
        if (!pattern_analyzed) {
            lu.analyzePattern(J);
            pattern_analyzed = true;
        }
        lu.factorize(J);
        if (lu.info() != Eigen::Success) {
            throw LineSearchStalled("Newton linearization is singular at iteration " +
                                    std::to_string(report.iterations));
        }
        const Eigen::VectorXd delta = lu.solve(rhs);

        // Damped step: largest lambda that stays spacelike and decreases
        // the sup-norm by the Armijo factor.
        bool accepted = false;
        double lambda = 1.0;
        for (int halving = 0; halving <= params.max_halvings; ++halving, lambda *= 0.5) {
            std::vector<double> trial(interior.size());
            for (int k = 0; k < n; ++k) trial[k] = u.at(interior[k]) + lambda * delta[k];
            GridField candidate(u.mask_ptr(), trial);
            if (!candidate.admissible(params.delta_space)) continue;
            Residual rc = residual(candidate, params.delta_space);
            if (rc.norm_inf <= (1.0 - params.armijo * lambda) * r.norm_inf) {
                u = std::move(candidate);
                r = std::move(rc);
                if (lambda < 1.0) ++report.damping_events;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            throw LineSearchStalled("no damping level acceptable at iteration " +
                                    std::to_string(report.iterations) + ", residual " +
                                    std::to_string(r.norm_inf));
        }
        ++report.iterations;
        report.residual_history.push_back(r.norm_inf);
    }

    report.converged = r.norm_inf <= report.tolerance;
    report.residual_norm_inf = r.norm_inf;
    report.residual_norm_2 = r.norm_2;
    report.final_gradient_max = u.max_node_gradient();
    report.final_gradient_min = u.min_node_gradient();
    return {std::move(u), std::move(report)};
}

} // namespace dualcurv
