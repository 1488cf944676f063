#include "dualcurv/curvature.hpp"

#include <cmath>

namespace dualcurv {

CurvatureSample invariants(const ScalarJet& jet, double margin) {
    require_spacelike(jet, margin);
    const double p = jet.du.x, q = jet.du.y;
    const double m = p * p + q * q;
    const double wl = std::sqrt(1.0 - m); // sqrt(1 - |du|^2)
    const double wr = std::sqrt(1.0 + m); // sqrt(1 + |du|^2)
    const double wl3 = wl * wl * wl, wr3 = wr * wr * wr;
    const Sym2& dd = jet.d2u;

    CurvatureSample s;
    s.h_l = ((1.0 - q * q) * dd.xx + 2.0 * p * q * dd.xy + (1.0 - p * p) * dd.yy) / (2.0 * wl3);
    s.h_r = ((1.0 + q * q) * dd.xx - 2.0 * p * q * dd.xy + (1.0 + p * p) * dd.yy) / (2.0 * wr3);
    const double det = dd.det();
    s.k_r = det / ((1.0 + m) * (1.0 + m));
    s.k_l = -det / ((1.0 - m) * (1.0 - m));
    s.n_r = {-p / wr, -q / wr, 1.0 / wr};
    s.n_l = {p / wl, q / wl, 1.0 / wl};
    s.cos_theta = 1.0 / wr;
    s.cosh_psi = 1.0 / wl;
    s.a_factor = wl / wr;
    const double diff = s.cosh_psi - s.cos_theta;
    s.ellipticity_gap = diff * diff;
    s.q_operator = 2.0 * (s.h_l - s.h_r);
    return s;
}

double normal_curvature(const ScalarJet& jet, Vec3 v, Metric metric, double margin) {
    require_spacelike(jet, margin);
    const double vlen2 = dot_r(v, v);
    if (!(vlen2 > 0.0)) {
        throw DegenerateDirection("normal_curvature needs a nonzero direction");
    }
    const Vec2 w{v.x, v.y};
    const double tangent_defect = v.z - dot(jet.du, w);
    if (std::abs(tangent_defect) > 1e-9 * (1.0 + std::sqrt(vlen2))) {
        throw TangencyError("direction is not tangent to the graph (defect " +
                            std::to_string(tangent_defect) + ")");
    }
    const double m = norm2(jet.du);
    const double second = jet.d2u.quad(w);
    if (metric == Metric::Riemannian) {
        // II_R(w,w) = w.D2u.w / sqrt(1+m); |v|_R^2 normalizes.
        const double vr2 = dot_r(v, v);
        return second / (std::sqrt(1.0 + m) * vr2);
    }
    // II_L(w,w) = -w.D2u.w / sqrt(1-m); tangent vectors of a spacelike
    // graph have positive Lorentzian square, so the quotient is defined.
    const double vl2 = dot_l(v, v);
    if (!(vl2 > 0.0)) {
        throw DegenerateDirection("tangent direction has non-positive Lorentzian square");
    }
    return -second / (std::sqrt(1.0 - m) * vl2);
}

double level_curve_curvature(const ScalarJet& jet, double grad_floor) {
    const double p = jet.du.x, q = jet.du.y;
    const double g = std::hypot(p, q);
    if (!(g > grad_floor) || g == 0.0) {
        throw NoLevelCurve("gradient norm " + std::to_string(g) +
                           " at or below the level-curve floor " + std::to_string(grad_floor));
    }
    return (q * q * jet.d2u.xx - 2.0 * p * q * jet.d2u.xy + p * p * jet.d2u.yy) / (g * g * g);
}

double level_curve_factor(double s) {
    if (s < 0.0) throw DomainError("level_curve_factor needs s >= 0");
    if (s >= 1.0) throw NotSpacelike("level_curve_factor needs s < 1");
    const double a = std::sqrt((1.0 - s * s) / (1.0 + s * s));
    return (a + 1.0) / (a * a + a + 1.0) * s / std::sqrt(1.0 + s * s);
}

} // namespace dualcurv
