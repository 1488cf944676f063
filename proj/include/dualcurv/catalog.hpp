#pragma once

#include <functional>
#include <string>

#include "dualcurv/grid_field.hpp"

namespace dualcurv {
namespace catalog {

/// Reference surface with closed-form curvature data. `is_solution` says
/// whether the surface satisfies H_R = H_L identically, i.e. whether the
/// solution-conditional checks may accept it.
struct CatalogEntry {
    AnalyticSurface surface;
    std::function<double(Vec2)> h_r;
    std::function<double(Vec2)> h_l;
    std::function<double(Vec2)> k_r;
    std::function<double(Vec2)> k_l;
    /// Closed form of Q(u) = 2 H_L - 2 H_R.
    std::function<double(Vec2)> q;
    bool is_solution = false;
};

/// u = a x + b y + c with a^2 + b^2 < 1. Every curvature vanishes.
CatalogEntry plane(double a, double b, double c);

/// u = atan2(x2, x1), spacelike on r > 1; H_R = H_L = 0 (simultaneously
/// minimal and maximal), K_R = -1/(1+r^2)^2, K_L = 1/(r^2-1)^2.
CatalogEntry helicoid();

/// u = sqrt(1 + r^2): H_L = 1, H_R = (1+r^2)(1+2r^2)^(-3/2), K_L = -1.
/// Not a solution of H_R = H_L; used as the negative control for the
/// solution gate.
CatalogEntry hyperboloid();

/// u = sqrt(R^2 - r^2) on r < R/sqrt(2) (keeps |du| < 1): H_R = -1/R,
/// K_R = 1/R^2. Elliptic everywhere; the hull-containment counterexample.
CatalogEntry sphere_cap(double R);

/// Parses "plane A B C", "helicoid", "hyperboloid", "sphere_cap R".
CatalogEntry get(const std::string& descriptor);

} // namespace catalog
} // namespace dualcurv
