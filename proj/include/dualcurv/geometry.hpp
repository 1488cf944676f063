#pragma once

#include <cmath>

namespace dualcurv {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return dot(a, a); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
};

/// Euclidean inner product of the ambient R^3.
inline double dot_r(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Lorentzian inner product dx1^2 + dx2^2 - dx3^2.
inline double dot_l(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y - a.z * b.z; }

inline double norm_r(Vec3 a) { return std::sqrt(dot_r(a, a)); }

inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Symmetric 2x2 matrix, e.g. a Hessian.
struct Sym2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double det() const { return xx * yy - xy * xy; }
    /// Quadratic form w^T M w.
    double quad(Vec2 w) const { return xx * w.x * w.x + 2.0 * xy * w.x * w.y + yy * w.y * w.y; }
    /// Largest absolute entry; used as a local second-derivative scale.
    double max_abs() const {
        return std::max(std::abs(xx), std::max(std::abs(xy), std::abs(yy)));
    }
};

} // namespace dualcurv
