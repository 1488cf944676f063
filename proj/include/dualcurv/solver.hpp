#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "dualcurv/grid_field.hpp"

namespace dualcurv {

/// Damped-Newton controls. tol_res is a relative factor: the stopping
/// tolerance is tol_res * (1 + |r0|_inf) with r0 the initial residual.
struct SolverParams {
    double tol_res = 1e-10;
    int max_iter = 50;
    /// Admissibility margin: every face gradient stays <= 1 - delta_space.
    double delta_space = 1e-6;
    /// Tikhonov scale: shift mu0 * |r|_inf is added when some node's
    /// ellipticity gap drops below gap_min.
    double mu0 = 1e-8;
    double gap_min = 1e-12;
    /// Sufficient-decrease factor: |r(u + lambda d)| <= (1 - armijo*lambda)|r(u)|.
    double armijo = 1e-4;
    /// Damping levels tried: lambda = 2^0 .. 2^-max_halvings.
    int max_halvings = 20;

    /// Applies "key=value" overrides for tol_res, max_iter, delta_space, mu0.
    static SolverParams from_key_values(const std::map<std::string, std::string>& kv,
                                        SolverParams base);
    static SolverParams from_key_values(const std::map<std::string, std::string>& kv) {
        return from_key_values(kv, SolverParams{});
    }
};

/// Discrete residual of Q(u) = div(du/sqrt(1-|du|^2)) - div(du/sqrt(1+|du|^2))
/// at the interior nodes (mask order).
struct Residual {
    std::vector<double> values;
    double norm_inf = 0.0;
    double norm_2 = 0.0;
};

/// Conservative flux-form evaluation: per interior node, the divergence of
/// the combined Lorentzian-minus-Riemannian flux through its four faces,
/// each flux evaluated at the face-midpoint gradient. Exact on affine
/// fields, O(h^2) on smooth ones. NotSpacelike if a face gradient is at or
/// above the margin.
Residual residual(const GridField& field, double margin = kSpacelikeMargin);

/// Exact Jacobian of the discrete residual with respect to the interior
/// values, in the interior ordering of the mask. 9-point sparsity.
Eigen::SparseMatrix<double> jacobian(const GridField& field,
                                     double margin = kSpacelikeMargin);

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    /// |r|_inf after 0,1,2,... accepted steps; strictly decreasing while
    /// iterating.
    std::vector<double> residual_history;
    double residual_norm_inf = 0.0;
    double residual_norm_2 = 0.0;
    /// Effective absolute tolerance tol_res * (1 + |r0|_inf).
    double tolerance = 0.0;
    /// Steps that needed damping (accepted lambda < 1).
    int damping_events = 0;
    /// Times the Tikhonov shift was active.
    int shift_events = 0;
    double final_gradient_max = 0.0;
    /// Smallest node gradient of the final iterate; reported because the
    /// equation degenerates (and uniqueness is unsettled) near critical
    /// points.
    double final_gradient_min = 0.0;
};

/// Least-squares affine fit a + b x + c y of the mask's boundary data,
/// evaluated over the whole grid. BoundaryDataError if the fitted slope is
/// not admissible (caller must then supply an initial field).
GridField affine_fit_initial(const DomainMask& mask, double margin = kSpacelikeMargin);

/// Dirichlet problem for Q(u) = 0 on the mask's interior, by damped Newton
/// from `init`. The default initial field is the affine fit of the boundary
/// data, falling back to the discrete harmonic extension when the combined
/// field (fit inside, true trace at the ring) is not admissible. Every
/// iterate keeps all face gradients <= 1 - delta_space. Throws
/// LineSearchStalled if no damping level is acceptable; returns
/// converged=false if max_iter runs out.
std::pair<GridField, SolveReport> solve_dirichlet(const DomainMask& mask,
                                                  std::optional<GridField> init = std::nullopt,
                                                  const SolverParams& params = {});

} // namespace dualcurv
