#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dualcurv/catalog.hpp"
#include "dualcurv/curvature.hpp"
#include "test_helpers.hpp"

using namespace dualcurv;
using testutil::rel_err;

namespace {

/// Tangent lift of a planar direction w at the given jet.
Vec3 lift(const ScalarJet& jet, Vec2 w) { return {w.x, w.y, dot(jet.du, w)}; }

/// Pair of tangent directions orthonormal in the chosen induced metric,
/// built by Gram-Schmidt on the planar parts (the induced metric pulls
/// back to I + du du^T Euclidean, I - du du^T Lorentzian).
std::pair<Vec3, Vec3> orthonormal_pair(const ScalarJet& jet, Metric metric, double phi) {
    const double s = metric == Metric::Riemannian ? 1.0 : -1.0;
    const auto form = [&](Vec2 a, Vec2 b) {
        return dot(a, b) + s * dot(jet.du, a) * dot(jet.du, b);
    };
    Vec2 a{std::cos(phi), std::sin(phi)};
    a = (1.0 / std::sqrt(form(a, a))) * a;
    Vec2 b{-a.y, a.x};
    b = b - form(a, b) * a;
    b = (1.0 / std::sqrt(form(b, b))) * b;
    return {lift(jet, a), lift(jet, b)};
}

} // namespace

TEST_CASE("flat jets carry the frozen angle values") {
    ScalarJet jet;
    jet.du = {0.3, 0.4};
    const CurvatureSample c = invariants(jet);
    CHECK(c.h_r == 0.0);
    CHECK(c.h_l == 0.0);
    CHECK(c.k_r == 0.0);
    CHECK(c.k_l == 0.0);
    CHECK(c.cosh_psi == doctest::Approx(1.1547005383792515).epsilon(1e-15));
    CHECK(c.cos_theta == doctest::Approx(0.8944271909999159).epsilon(1e-15));
    CHECK(c.a_factor == doctest::Approx(0.7745966692414834).epsilon(1e-15));
    CHECK(c.ellipticity_gap == doctest::Approx(0.06774221535604433).epsilon(1e-14));
    CHECK(c.q_operator == 0.0);
    // both normals are unit, correctly oriented, and orthogonal to the graph
    CHECK(dot_r(c.n_r, c.n_r) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dot_l(c.n_l, c.n_l) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(c.n_r.z > 0.0);
    CHECK(c.n_l.z > 0.0);
    const Vec3 v = lift(jet, {1.0, -2.0});
    CHECK(std::abs(dot_r(c.n_r, v)) < 1e-15);
    CHECK(std::abs(dot_l(c.n_l, v)) < 1e-15);
    // any tangent direction is a principal direction with curvature zero
    CHECK(std::abs(normal_curvature(jet, v, Metric::Riemannian)) < 1e-15);
    CHECK(std::abs(normal_curvature(jet, v, Metric::Lorentzian)) < 1e-15);
}

TEST_CASE("hyperboloid jet at (1,0) reproduces the hand-derived values") {
    const auto entry = catalog::hyperboloid();
    const ScalarJet jet = entry.surface.jet_at({1.0, 0.0});
    const CurvatureSample c = invariants(jet);
    CHECK(c.h_l == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.h_r == doctest::Approx(0.3849001794597505).epsilon(1e-14));
    CHECK(c.k_l == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(c.k_r == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(c.ellipticity_gap == doctest::Approx(0.35726558990816361).epsilon(1e-14));
    CHECK(c.q_operator == doctest::Approx(1.2301996410804990).epsilon(1e-13));

    // normal curvature of the circle direction, both metrics
    const Vec3 v{0.0, 1.0, 0.0};
    CHECK(normal_curvature(jet, v, Metric::Lorentzian) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(normal_curvature(jet, v, Metric::Riemannian) ==
          doctest::Approx(0.5773502691896258).epsilon(1e-14));

    // the level curve through (1,0) is the unit circle with inward normal
    CHECK(level_curve_curvature(jet) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("helicoid jet at (2,0) reproduces the closed forms") {
    const ScalarJet jet = catalog::helicoid().surface.jet_at({2.0, 0.0});
    const CurvatureSample c = invariants(jet);
    CHECK(std::abs(c.h_r) < 1e-15);
    CHECK(std::abs(c.h_l) < 1e-15);
    CHECK(c.k_r == doctest::Approx(-0.04).epsilon(1e-14));
    CHECK(c.k_l == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    // level rays are straight lines
    CHECK(std::abs(level_curve_curvature(jet)) < 1e-15);
    // the radial direction is a ruling: both normal curvatures vanish
    const Vec3 ruling = lift(jet, {1.0, 0.0});
    CHECK(normal_curvature(jet, ruling, Metric::Riemannian) == 0.0);
    CHECK(normal_curvature(jet, ruling, Metric::Lorentzian) == 0.0);
    // off the rulings the two normal curvatures have opposite signs
    const Vec3 v = lift(jet, {1.0, 1.0});
    const double kr = normal_curvature(jet, v, Metric::Riemannian);
    const double kl = normal_curvature(jet, v, Metric::Lorentzian);
    CHECK(kr * kl < 0.0);
}

TEST_CASE("direction guards: zero, non-tangent, and no-level-curve inputs") {
    ScalarJet jet;
    jet.du = {0.3, 0.0};
    jet.d2u = {1.0, 0.0, 1.0};
    CHECK_THROWS_AS(normal_curvature(jet, Vec3{0.0, 0.0, 0.0}, Metric::Riemannian),
                    DegenerateDirection);
    CHECK_THROWS_AS(normal_curvature(jet, Vec3{1.0, 0.0, 0.9}, Metric::Lorentzian),
                    TangencyError);
    ScalarJet flat;
    CHECK_THROWS_AS(level_curve_curvature(flat), NoLevelCurve);
    ScalarJet fast;
    fast.du = {1.0, 0.0};
    CHECK_THROWS_AS(invariants(fast), NotSpacelike);
}

TEST_CASE("factor of the level-curve identity: frozen value, monotone, bounded") {
    CHECK(level_curve_factor(0.0) == 0.0);
    CHECK(level_curve_factor(0.5) == doctest::Approx(0.33421412877970572).epsilon(1e-15));
    const double sup = 1.0 / std::sqrt(2.0);
    double prev = -1.0;
    for (int k = 0; k <= 999; ++k) {
        const double f = level_curve_factor(k / 1000.0);
        CHECK(f > prev);
        CHECK(f < sup);
        prev = f;
    }
    CHECK(level_curve_factor(1.0 - 1e-12) == doctest::Approx(sup).epsilon(1e-11));
    CHECK_THROWS_AS(level_curve_factor(1.0), NotSpacelike);
    CHECK_THROWS_AS(level_curve_factor(-0.1), DomainError);
}

TEST_CASE("randomized identities over ten thousand spacelike jets") {
    std::mt19937 rng(20260826);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double tol = 1e-10;

    for (int trial = 0; trial < 10000; ++trial) {
        const ScalarJet jet = testutil::random_jet(rng, 0.05, 0.98);
        const CurvatureSample c = invariants(jet);
        const double s2 = norm2(jet.du);

        // angle bookkeeping against the gradient
        CHECK(rel_err(c.cos_theta, 1.0 / std::sqrt(1.0 + s2)) < 1e-14);
        CHECK(rel_err(c.cosh_psi, 1.0 / std::sqrt(1.0 - s2)) < 1e-14);
        CHECK(rel_err(c.a_factor, c.cos_theta / c.cosh_psi) < 1e-13);
        CHECK(c.ellipticity_gap >= 0.0);
        CHECK(rel_err(c.q_operator, 2.0 * (c.h_l - c.h_r)) < 1e-13);

        // Gauss curvatures couple with opposite signs and vanish together
        CHECK(c.k_r * c.k_l <= 0.0);
        if (c.k_r == 0.0) CHECK(c.k_l == 0.0);
        if (c.k_l == 0.0) CHECK(c.k_r == 0.0);

        // reciprocity of the two normal curvatures of one tangent direction
        const double phi = 2.0 * testutil::kPi * unit(rng);
        const double len = 0.25 + 2.0 * unit(rng);
        const Vec3 v = lift(jet, {len * std::cos(phi), len * std::sin(phi)});
        const double kr = normal_curvature(jet, v, Metric::Riemannian);
        const double kl = normal_curvature(jet, v, Metric::Lorentzian);
        const double tr = dot_r(v, v) / c.cos_theta * kr;
        const double tl = dot_l(v, v) / c.cosh_psi * kl;
        CHECK(std::abs(tr + tl) <= tol * std::max({std::abs(tr), std::abs(tl), 1e-30}));

        // conversion factor along the level-curve and gradient-lift directions
        const Vec3 alpha{-jet.du.y, jet.du.x, 0.0};
        const Vec3 beta{jet.du.x, jet.du.y, s2};
        const double kra = normal_curvature(jet, alpha, Metric::Riemannian);
        const double kla = normal_curvature(jet, alpha, Metric::Lorentzian);
        const double krb = normal_curvature(jet, beta, Metric::Riemannian);
        const double klb = normal_curvature(jet, beta, Metric::Lorentzian);
        const double a3 = c.a_factor * c.a_factor * c.a_factor;
        CHECK(std::abs(kra + c.a_factor * kla) <=
              tol * std::max({std::abs(kra), std::abs(c.a_factor * kla), 1e-30}));
        CHECK(std::abs(krb + a3 * klb) <=
              tol * std::max({std::abs(krb), std::abs(a3 * klb), 1e-30}));

        // mean curvature as the average over an orthonormal pair
        const auto [r1, r2] = orthonormal_pair(jet, Metric::Riemannian, 2.0 * testutil::kPi * unit(rng));
        const double hr = 0.5 * (normal_curvature(jet, r1, Metric::Riemannian) +
                                 normal_curvature(jet, r2, Metric::Riemannian));
        CHECK(std::abs(hr - c.h_r) <= tol * std::max({std::abs(hr), std::abs(c.h_r), 1.0}));
        const auto [l1, l2] = orthonormal_pair(jet, Metric::Lorentzian, 2.0 * testutil::kPi * unit(rng));
        const double hl = -0.5 * (normal_curvature(jet, l1, Metric::Lorentzian) +
                                  normal_curvature(jet, l2, Metric::Lorentzian));
        CHECK(std::abs(hl - c.h_l) <= tol * std::max({std::abs(hl), std::abs(c.h_l), 1.0}));

        // projection of any ambient vector onto the two normals
        const Vec3 X{3.0 * (unit(rng) - 0.5), 3.0 * (unit(rng) - 0.5), 3.0 * (unit(rng) - 0.5)};
        const double pl = dot_l(X, c.n_l) / c.cosh_psi;
        const double pr = dot_r(X, c.n_r) / c.cos_theta;
        CHECK(std::abs(pl + pr) <= tol * std::max({std::abs(pl), std::abs(pr), 1e-30}));

        // level-curve curvature against the Lorentzian normal curvature
        const double k = level_curve_curvature(jet);
        const double expected = -k * std::sqrt(s2) / std::sqrt(1.0 - s2);
        CHECK(std::abs(kla - expected) <=
              tol * std::max({std::abs(kla), std::abs(expected), 1e-30}));
    }
}
