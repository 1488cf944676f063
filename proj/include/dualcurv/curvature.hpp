#pragma once

#include "dualcurv/jet.hpp"

namespace dualcurv {

enum class Metric { Riemannian, Lorentzian };

/// Pointwise curvature data of a spacelike graph under both ambient
/// metrics. Sign conventions: H_L = (1/2) div(du / sqrt(1-|du|^2)),
/// H_R = (1/2) div(du / sqrt(1+|du|^2)); the Gauss curvatures then couple
/// as K_R * K_L <= 0 with simultaneous zeros.
struct CurvatureSample {
    double h_r = 0.0;
    double h_l = 0.0;
    double k_r = 0.0;
    double k_l = 0.0;
    /// Euclidean unit upward normal.
    Vec3 n_r;
    /// Lorentzian future-directed unit normal.
    Vec3 n_l;
    /// 1/sqrt(1+|du|^2) in (0,1]: cosine of the Euclidean tilt angle.
    double cos_theta = 1.0;
    /// 1/sqrt(1-|du|^2) >= 1: hyperbolic angle of the Lorentzian normal.
    double cosh_psi = 1.0;
    /// sqrt((1-|du|^2)/(1+|du|^2)) in (0,1] — the ratio cos_theta/cosh_psi
    /// that links normal curvatures in the two metrics.
    double a_factor = 1.0;
    /// (cosh_psi - cos_theta)^2 >= 0; zero exactly at du = 0, where the
    /// H_R = H_L operator loses ellipticity.
    double ellipticity_gap = 0.0;
    /// Q(u) = 2 H_L - 2 H_R, the residual of the surface equation.
    double q_operator = 0.0;
};

/// All invariants from one jet. NotSpacelike if |du| is at or above the
/// margin below the light cone.
CurvatureSample invariants(const ScalarJet& jet, double margin = kSpacelikeMargin);

/// Normal curvature of the graph at `jet` in the tangent direction v,
/// with respect to N_R (Riemannian) or N_L (Lorentzian):
/// kappa_v = <grad_t t, N> / <t,t> for the normalized tangent t.
/// v must be tangent: v3 = du . (v1,v2) (TangencyError otherwise);
/// v = 0 is refused (DegenerateDirection).
double normal_curvature(const ScalarJet& jet, Vec3 v, Metric metric,
                        double margin = kSpacelikeMargin);

/// Signed curvature of the level curve of u through the jet's base point,
/// in the Frenet frame t = (-u_y, u_x)/|du|, n = -du/|du|:
/// k = (u_y^2 u_xx - 2 u_x u_y u_xy + u_x^2 u_yy) / |du|^3.
/// NoLevelCurve when |du| <= grad_floor.
double level_curve_curvature(const ScalarJet& jet, double grad_floor = 0.0);

/// The factor f(s) with 2 H_L = f(|du|) k on solutions of H_R = H_L:
/// f(s) = (A+1)/(A^2+A+1) * s/sqrt(1+s^2), A = sqrt((1-s^2)/(1+s^2)).
/// Strictly increasing on [0,1) with supremum 1/sqrt(2).
/// NotSpacelike for s >= 1, DomainError for s < 0.
double level_curve_factor(double s);

} // namespace dualcurv
