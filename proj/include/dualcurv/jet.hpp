#pragma once

#include <cmath>

#include "dualcurv/errors.hpp"
#include "dualcurv/geometry.hpp"

namespace dualcurv {

/// Second-order jet of a scalar function u at a planar point:
/// value, gradient and Hessian. Everything the pointwise curvature
/// formulas consume.
struct ScalarJet {
    Vec2 point;
    double u = 0.0;
    Vec2 du;
    Sym2 d2u;

    /// |du| < 1 - margin, i.e. the graph is spacelike with room to spare.
    bool spacelike(double margin = 0.0) const {
        return norm2(du) < (1.0 - margin) * (1.0 - margin);
    }
};

/// Margin below the light cone that every admissible field keeps.
inline constexpr double kSpacelikeMargin = 1e-6;

inline void require_spacelike(const ScalarJet& jet, double margin = kSpacelikeMargin) {
    if (!jet.spacelike(margin)) {
        throw NotSpacelike("gradient norm " + std::to_string(norm(jet.du)) +
                           " at or above spacelike margin 1 - " + std::to_string(margin));
    }
}

} // namespace dualcurv
